#pragma once

// Intersection densities of PSL(2,q) acting on the cosets of a cyclic
// subgroup of prime order, by exact clique search on fix graphs.

#include "psld/bitgraph.hpp"
#include "psld/classes.hpp"
#include "psld/clique.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace psld {

/// Reduced fraction with positive denominator.
class Rational {
  public:
    Rational(std::int64_t num = 0, std::int64_t den = 1);

    std::int64_t num() const { return num_; }
    std::int64_t den() const { return den_; }
    /// "n/d", or "n" when the denominator is 1.
    std::string str() const;
    /// Parses the format produced by str().
    static Rational parse(const std::string &text);

    bool operator==(const Rational &) const = default;
    std::strong_ordering operator<=>(const Rational &o) const;

  private:
    std::int64_t num_, den_;
};

enum class DensityMode {
    Auto,    // fast for order-p stabilizers, generic otherwise
    Fast,    // neighbourhood of one representative (order-p only)
    Generic, // full fix graph
    Both,    // both, and require agreement (order-p only)
};

enum class DensityPath { Fast, Generic };

std::string to_string(DensityMode m);
std::string to_string(DensityPath p);
std::optional<DensityMode> parse_mode(const std::string &text);

/// Statistics of the fix graph induced on the neighbourhood of one class
/// representative.
struct RepStats {
    ProjMatrix rep;
    FieldElement trace;
    std::size_t neighborhood_size = 0;
    std::size_t omega = 0;
    bool exact = true;
    bool is_regular = false;
    std::size_t components = 0;
    std::uint64_t nodes = 0;
    std::vector<ProjMatrix> clique; // maximum clique of the neighbourhood
};

struct DensityOptions {
    DensityMode mode = DensityMode::Auto;
    unsigned threads = 1;
    std::uint64_t node_budget = 1'000'000'000;
    /// Largest fix set the generic path will build a full graph on.
    std::size_t max_generic_vertices = 40000;
};

struct DensityReport {
    FieldPtr field;
    StabilizerSpec stab;
    std::uint32_t stabilizer_order = 0;
    std::size_t fix_set_size = 0;

    Rational rho;
    std::size_t omega_full = 0;  // clique number of the fix graph
    std::size_t omega_gamma = 0; // max over representatives of the neighbourhood clique number
    bool gamma_regular = false;  // neighbourhood graph of the first representative
    std::size_t gamma_components = 0;
    std::vector<RepStats> per_rep;
    bool reps_disagree = false;

    /// Maximum intersecting set: the identity plus a maximum clique.
    std::vector<ProjMatrix> witness;
    DensityPath path = DensityPath::Fast;
    std::optional<Rational> lower_bound_F;
    std::optional<Rational> theoretical;

    SearchStatus status = SearchStatus::Exact;
    std::uint64_t nodes_explored = 0;
    double seconds = 0;
    /// Failed internal consistency checks (path agreement, representative
    /// maximum against the full search, theorem values).
    std::vector<std::string> failures;

    bool exact() const { return status == SearchStatus::Exact; }
    bool consistent() const { return failures.empty(); }
};

/// Throws InvalidStabilizer for a stabilizer that does not exist over f, and
/// std::invalid_argument for a mode that does not apply.
DensityReport density(const FieldPtr &f, const StabilizerSpec &stab, const DensityOptions &opts = {});

/// Closed-form value where a theorem covers the instance: q/p or sqrt(q)/p
/// for order-p stabilizers, and the case split for r = 3.
std::optional<Rational> theoretical_density(const Field &f, const StabilizerSpec &stab);

/// (3r-1)/(2r), after certifying the F construction; requires r | (q-1)/2.
/// Throws std::logic_error if the construction is not a clique.
Rational lower_bound_via_F(const FieldPtr &f, std::uint32_t r);

/// The stabilizer of prime order r over f: order-r with the sign fixed by
/// which of (q-1)/2, (q+1)/2 r divides, or the order-p stabilizer when r = p
/// (the minus class when k is even). Throws InvalidStabilizer if none exists.
StabilizerSpec stabilizer_of_order(const Field &f, std::uint32_t r);

/// Statistics for one representative of D.
RepStats representative_stats(const ClassSet &D, const ProjMatrix &rep, const CliqueOptions &opts = {});

} // namespace psld
