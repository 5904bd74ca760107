#pragma once

// Closed-form element families that make up the neighbourhoods of R and
// R_Delta, the lower-bound clique for split order-r stabilizers, and checks
// that compare them with what the graph module computes.

#include "psld/bitgraph.hpp"
#include "psld/classes.hpp"

#include <optional>
#include <string>
#include <vector>

namespace psld {

enum class FamilyName {
    Centralizer, // T_a = [[1,a],[0,1]], a != 0,1
    ScriptC,     // [[1+4b, -4b^2],[4, 1-4b]]
    C1,          // T_{a^2 Delta} with a^2 - 1 a nonzero square, a != 0,+-1
    C2,          // [[1+4b/Delta, -4b^2/Delta],[4/Delta, 1-4b/Delta]]
    F1,          // R^-i
    F2,          // [[a^i, 0],[a^i - a^-i, a^-i]]
    F3,          // [[a^i, -(a^i - a^-i)],[0, a^-i]]
};

std::string to_string(FamilyName name);

struct FamilyMember {
    ProjMatrix element;
    FieldElement param; // a, b, a^2 or a^i depending on the family
};

struct NamedFamily {
    FamilyName name;
    std::vector<FamilyMember> members;

    std::vector<ProjMatrix> elements() const;
    std::size_t size() const { return members.size(); }
};

/// r is only used by the F families and must satisfy r | (q-1)/2. Throws
/// std::invalid_argument when the family does not exist for the field (C1
/// and C2 need k even).
NamedFamily build_family(const FieldPtr &f, FamilyName name, std::uint32_t r = 0);

struct CheckResult {
    std::string name;
    bool passed = false;
    std::string detail;
};

struct LemmaReport {
    std::string subject;
    std::uint64_t q = 0;
    std::vector<CheckResult> checks;

    bool passed() const;
    void add(std::string name, bool ok, std::string detail = {});
};

enum class NeighborhoodVariant { Full, Minus };

/// Neighbourhood of R in the C_p fix graph (k odd) or of R_Delta in the
/// R_Delta-class fix graph (k even) against the family unions.
LemmaReport verify_neighborhood_lemma(const FieldPtr &f, NeighborhoodVariant variant);

/// Clique numbers of the C1 graph (sqrt(q) - 2) and of the graph W on
/// {u : u, u-1 squares} (sqrt(q)); k even only.
LemmaReport verify_paley_reduction(const FieldPtr &f);

/// F = F1 u F2 u F3 for r | (q-1)/2, checked to be a clique of the fix graph.
struct FConstruction {
    NamedFamily f1, f2, f3;
    std::vector<ProjMatrix> elements;
    bool distinct = false;
    bool in_fix_set = false;
    bool clique = false;

    bool certified() const { return distinct && in_fix_set && clique; }
};

FConstruction construct_F(const FieldPtr &f, std::uint32_t r);

/// Group-level checks: class sizes, subgroup classes, the trace criterion
/// against element orders, and conjugation invariance of the fix graph.
LemmaReport verify_group_counts(const FieldPtr &f);

/// Order-r classes: sizes, trace labels against orbit labels, orders.
LemmaReport verify_order_r_classes(const FieldPtr &f, std::uint32_t r, Epsilon eps);

/// Exactly (q+1)/2 squares and (q+1)/2 elements x with x^2 - 1 a square.
LemmaReport verify_square_counts(const Field &f);

} // namespace psld
