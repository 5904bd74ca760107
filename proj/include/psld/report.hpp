#pragma once

// Serialization of density reports, table rows and verification results.

#include "psld/density.hpp"
#include "psld/families.hpp"

#include <json.hpp>

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace psld {

nlohmann::json matrix_json(const ProjMatrix &m);
nlohmann::json to_json(const DensityReport &r);
nlohmann::json to_json(const LemmaReport &r);

/// One row of the density table for a fixed stabilizer order r.
struct TableRow {
    std::uint32_t r = 0;
    std::uint64_t q = 0;
    Epsilon eps = Epsilon::Minus;
    std::size_t fix_set_size = 0;
    bool slow = false;     // gated behind --slow
    bool computed = false; // false when skipped
    std::optional<DensityReport> report;
};

/// Fix sets above this size count as slow table rows.
inline constexpr std::size_t slow_row_vertices = 6000;

/// Odd prime powers q <= q_max, coprime to r, with r | (q-1)/2 or r | (q+1)/2.
std::vector<TableRow> table_rows(std::uint32_t r, std::uint64_t q_max);

inline constexpr const char *table_header = "r,q,epsilon,omega_gamma,density,is_regular,num_components";

/// CSV line for a computed row; inconclusive rows carry "inconclusive" in the
/// density column.
std::string csv_line(const TableRow &row);

struct TableOptions {
    unsigned threads = 1;
    std::uint64_t node_budget = 1'000'000'000; // per row
    bool include_slow = false;
};

/// Fills in the report of every row that is not gated out. Up to `threads`
/// rows run at once; leftover threads go to each row's clique search. Row
/// order is kept.
void compute_rows(std::vector<TableRow> &rows, const TableOptions &opts);
nlohmann::json to_json(const TableRow &row);

} // namespace psld
