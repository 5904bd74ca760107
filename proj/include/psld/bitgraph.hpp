#pragma once

// Dense bitset graphs over indexed vertex lists, and the fix graphs built on
// conjugacy classes.

#include "psld/classes.hpp"
#include "psld/projective.hpp"

#include <bit>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace psld {

class BitGraph {
  public:
    BitGraph() = default;
    explicit BitGraph(std::size_t n, std::string name = {});

    std::size_t size() const { return n_; }
    std::size_t words() const { return words_; }
    const std::string &name() const { return name_; }
    void set_name(std::string name) { name_ = std::move(name); }

    void add_edge(std::size_t u, std::size_t v);
    bool adjacent(std::size_t u, std::size_t v) const {
        return (bits_[u * words_ + v / 64] >> (v % 64)) & 1u;
    }
    std::span<const std::uint64_t> row(std::size_t u) const { return {bits_.data() + u * words_, words_}; }
    std::span<std::uint64_t> row_mut(std::size_t u) { return {bits_.data() + u * words_, words_}; }

    std::size_t degree(std::size_t u) const;
    std::vector<std::size_t> neighbors(std::size_t u) const;
    std::size_t edge_count() const;
    bool is_regular() const;
    /// Component count; labels[v] is the component of v, numbered by first vertex.
    std::size_t components(std::vector<std::size_t> *labels = nullptr) const;
    /// Symmetric and loop-free.
    bool is_simple() const;

    /// Induced subgraph on the listed vertices (in the given order). Throws
    /// std::out_of_range for a bad index.
    BitGraph induced(std::span<const std::size_t> subset) const;
    BitGraph complement() const;

    /// Group elements labelling the vertices; empty for abstract graphs.
    const std::vector<ProjMatrix> &vertices() const { return vertices_; }
    void set_vertices(std::vector<ProjMatrix> v) { vertices_ = std::move(v); }
    /// For induced subgraphs: vertex index in the parent graph.
    const std::vector<std::size_t> &origin() const { return origin_; }
    void set_origin(std::vector<std::size_t> o) { origin_ = std::move(o); }

    /// "n m" header, then one "u v" line per edge with u < v.
    void write_edge_list(std::ostream &os) const;

  private:
    std::size_t n_ = 0, words_ = 0;
    std::vector<std::uint64_t> bits_;
    std::string name_;
    std::vector<ProjMatrix> vertices_;
    std::vector<std::size_t> origin_;
};

struct GraphBuildOptions {
    unsigned threads = 1;
    /// Also check every adjacency against a hash lookup of u*v^-1.
    bool cross_check = false;
};

/// Graph on the elements of D, u ~ v iff u*v^-1 lies in D.
BitGraph build_fix_graph(const ClassSet &D, const GraphBuildOptions &opts = {});

/// Indices of the elements of D adjacent to g in the fix graph (g need not be
/// in D, but must be in PSL(2,q)).
std::vector<std::size_t> fix_neighbors(const ClassSet &D, const ProjMatrix &g);

/// Fix graph induced on a vertex list of D, labelled with the elements.
BitGraph build_induced_fix_graph(const ClassSet &D, std::span<const std::size_t> subset, std::string name = {});

/// Fix graph on an explicit element list with membership from D's classes.
BitGraph build_element_graph(const ClassSet &D, std::span<const ProjMatrix> elements, std::string name = {});

/// Structure of the neighbourhood graph of R (or R_Delta): the unipotent part
/// {c = 0} against the rest.
struct TildeDecomposition {
    std::size_t upper_size = 0;      // centralizer part (C \ {I,R}, or C1)
    std::size_t lower_size = 0;      // the q-element orbit (script C, or C2)
    std::size_t cross_edges = 0;
    bool upper_is_clique = false;
    std::size_t lower_edges = 0;
    std::size_t lower_components = 0;
    bool lower_is_cycle_union = false; // every component a cycle of length p
    bool matches = false;              // the statement for this variant holds
    std::string detail;
};

/// Checks the splitting of the neighbourhood graph of R (full = true: C_p
/// fix set) or of R_Delta (full = false: minus fix set).
TildeDecomposition structure_decompose_tilde(const BitGraph &tilde, const Field &f, bool full);

} // namespace psld
