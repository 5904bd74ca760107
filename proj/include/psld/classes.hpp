#pragma once

// Vertex sets of the fix graphs: conjugacy classes of PSL(2,q) that meet a
// cyclic point stabilizer of prime order.

#include "psld/field.hpp"
#include "psld/projective.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace psld {

class InvalidStabilizer : public std::invalid_argument {
  public:
    using std::invalid_argument::invalid_argument;
};

enum class StabilizerKind {
    OrderPFull,  // <R>, k odd
    OrderPPlus,  // <R>, k even
    OrderPMinus, // <R_Delta>, k even
    OrderR,      // cyclic of odd prime order r dividing (q -/+ 1)/2
};

enum class Epsilon { Minus, Plus };

struct StabilizerSpec {
    StabilizerKind kind = StabilizerKind::OrderPFull;
    std::uint32_t r = 0;
    Epsilon eps = Epsilon::Minus;

    static StabilizerSpec order_p_full() { return {StabilizerKind::OrderPFull, 0, Epsilon::Minus}; }
    static StabilizerSpec order_p_plus() { return {StabilizerKind::OrderPPlus, 0, Epsilon::Plus}; }
    static StabilizerSpec order_p_minus() { return {StabilizerKind::OrderPMinus, 0, Epsilon::Minus}; }
    static StabilizerSpec order_r(std::uint32_t r, Epsilon eps) { return {StabilizerKind::OrderR, r, eps}; }
    /// Accepts "p", "p-plus", "p-minus" and "r=<r>,eps=<+|->".
    static StabilizerSpec parse(const std::string &text);

    bool is_order_p() const { return kind != StabilizerKind::OrderR; }
    /// |H|: p or r.
    std::uint32_t order(const Field &f) const { return is_order_p() ? f.p() : r; }
    /// Throws InvalidStabilizer when the stabilizer does not exist for f.
    void validate(const Field &f) const;
    std::string label() const;

    bool operator==(const StabilizerSpec &) const = default;
};

std::string to_string(Epsilon e);

/// A conjugacy class representative together with its trace data.
struct ClassRepresentative {
    ProjMatrix element;
    TracePair trace;
    FieldElement delta; // SL trace of the representative (2 for unipotents)
    std::uint32_t exponent = 1;
};

/// The trace value 2 of unipotent elements; never the trace of an order-r
/// element.
FieldElement delta_zero(const Field &f);

/// A labelled union of PSL(2,q) conjugacy classes, sorted by entry indices.
struct ClassSet {
    FieldPtr field;
    StabilizerSpec stab;
    std::uint32_t element_order = 0;
    std::vector<ProjMatrix> elements;
    std::vector<std::uint32_t> labels;
    std::vector<ClassRepresentative> reps;

    std::size_t size() const { return elements.size(); }
    std::size_t class_size(std::uint32_t label) const;
    std::optional<std::size_t> index_of(const ProjMatrix &g) const;
};

/// Membership in the set of nonidentity elements that fix a coset, decided
/// from traces (plus the unipotent square class for the order-p halves).
class FixMembership {
  public:
    FixMembership(const Field &f, const StabilizerSpec &stab, std::span<const ClassRepresentative> reps);
    explicit FixMembership(const ClassSet &set) : FixMembership(*set.field, set.stab, set.reps) {}

    bool contains(const ProjMatrix &g) const;
    /// Whether u * v^-1 lies in the set, for distinct determinant-one u, v.
    bool ratio_in(const SlMatrix &u, const SlMatrix &v) const {
        const Field &f = *field_;
        const std::uint32_t t = f.add(f.sub(f.mul(u.a, v.d), f.mul(u.b, v.c)), f.sub(f.mul(u.d, v.a), f.mul(u.c, v.b)));
        if (!trace_ok_[t])
            return false;
        if (split_ == 0)
            return true;
        const std::uint32_t b = f.sub(f.mul(u.b, v.a), f.mul(u.a, v.b));
        std::uint32_t probe = b != 0 ? b : f.sub(f.mul(u.d, v.c), f.mul(u.c, v.d));
        if (t != two_)
            probe = f.neg(probe);
        return f.square(probe) == (split_ > 0);
    }

  private:
    const Field *field_;
    std::vector<std::uint8_t> trace_ok_;
    std::uint32_t two_;
    int split_ = 0; // +1: square class only, -1: nonsquare class only
};

/// Orbit of seed under conjugation by the group generated by gens.
std::vector<ProjMatrix> conjugation_orbit(const ProjMatrix &seed, std::span<const ProjMatrix> gens);

/// All q^2-1 order-p elements; label 0 is the class of R, label 1 the class of
/// R_Delta.
ClassSet order_p_classes(const FieldPtr &f);

/// R = [[1,1],[0,1]] and R_Delta = [[1,Delta],[0,1]].
ProjMatrix order_p_rep(const Field &f);
ProjMatrix order_p_rep_delta(const Field &f);

/// Representatives R^i, i = 1..(r-1)/2, of the order-r classes: diagonal for
/// eps = -, companion matrices [[0,-1],[1,delta_i]] for eps = +.
std::vector<ClassRepresentative> order_r_representatives(const FieldPtr &f, std::uint32_t r, Epsilon eps);

/// Nonidentity elements fixing at least one coset of the stabilizer.
ClassSet fix_set(const FieldPtr &f, const StabilizerSpec &stab);

/// The index i-1 of the class whose trace pair is {delta_i, -delta_i}.
std::optional<std::size_t> class_id_by_trace(const ProjMatrix &g, std::span<const ClassRepresentative> reps);

/// Every element of PSL(2,q), by direct scan of determinant-one matrices.
std::vector<ProjMatrix> enumerate_psl(const Field &f);

/// Some g in PSL(2,q) with g<R>g^-1 = <R_Delta>, searched exhaustively.
std::optional<ProjMatrix> find_subgroup_conjugator(const Field &f);

/// Embedding of GF(q) into GF(q^2) (as built by make_field(p, 2k)).
class QuadraticExtension {
  public:
    explicit QuadraticExtension(const FieldPtr &base);
    const Field &big() const { return *big_; }
    const FieldPtr &big_ptr() const { return big_; }
    FieldElement embed(const FieldElement &x) const;
    /// Preimage, or nullopt when y is outside the subfield.
    std::optional<FieldElement> restrict(const FieldElement &y) const;

  private:
    FieldPtr base_;
    FieldPtr big_;
    std::vector<std::uint32_t> up_;
    std::vector<std::int32_t> down_;
};

} // namespace psld
