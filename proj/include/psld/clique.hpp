#pragma once

// Exact maximum clique by branch and bound with greedy colouring bounds over
// bitsets (BBMC style). Large graphs are split per vertex: each vertex v is
// searched together with its neighbours that come later in the order, on a
// compact local copy of that neighbourhood.

#include "psld/bitgraph.hpp"

#include <chrono>
#include <cstdint>
#include <span>
#include <vector>

namespace psld {

enum class SearchStatus { Exact, Inconclusive };

struct CliqueOptions {
    /// Only cliques of at least this size are searched for. If none exists the
    /// search is repeated without the bound.
    std::size_t lower_bound = 0;
    /// A known clique; the search looks for strictly larger ones.
    std::vector<std::size_t> seed;
    std::uint64_t node_budget = 1'000'000'000;
    unsigned threads = 1;
};

struct CliqueResult {
    std::size_t size = 0;
    std::vector<std::size_t> witness; // sorted vertex indices
    std::uint64_t nodes_explored = 0;
    std::chrono::duration<double> elapsed{};
    SearchStatus status = SearchStatus::Exact;

    bool exact() const { return status == SearchStatus::Exact; }
};

CliqueResult max_clique(const BitGraph &g, const CliqueOptions &opts = {});

/// Throws std::out_of_range for an index outside the graph. Repeated vertices
/// make the set not a clique.
bool is_clique(const BitGraph &g, std::span<const std::size_t> vertices);

/// Maximum clique of the complement. Throws std::length_error above
/// max_vertices.
CliqueResult max_coclique(const BitGraph &g, const CliqueOptions &opts = {}, std::size_t max_vertices = 4096);

} // namespace psld
