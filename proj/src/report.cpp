#include "psld/report.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>
#include <sstream>
#include <thread>

namespace psld {

using nlohmann::json;

json matrix_json(const ProjMatrix &m) {
    const auto &e = m.entries();
    return json::array({e[0], e[1], e[2], e[3]});
}

namespace {

json matrices(const std::vector<ProjMatrix> &ms) {
    json out = json::array();
    for (const auto &m : ms)
        out.push_back(matrix_json(m));
    return out;
}

json optional_rational(const std::optional<Rational> &r) { return r ? json(r->str()) : json(nullptr); }

} // namespace

json to_json(const DensityReport &r) {
    const Field &f = *r.field;
    json reps = json::array();
    for (const auto &s : r.per_rep)
        reps.push_back({{"rep", matrix_json(s.rep)},
                        {"trace", s.trace.index()},
                        {"neighborhood_size", s.neighborhood_size},
                        {"omega", s.omega},
                        {"exact", s.exact},
                        {"is_regular", s.is_regular},
                        {"components", s.components}});
    return {
        {"q", f.q()},
        {"p", f.p()},
        {"k", f.k()},
        {"modulus", f.modulus()},
        {"stabilizer", r.stab.label()},
        {"stabilizer_order", r.stabilizer_order},
        {"fix_set_size", r.fix_set_size},
        {"rho", r.rho.str()},
        {"omega_full", r.omega_full},
        {"omega_gamma", r.omega_gamma},
        {"is_regular", r.gamma_regular},
        {"num_components", r.gamma_components},
        {"per_rep", reps},
        {"reps_disagree", r.reps_disagree},
        {"witness", matrices(r.witness)},
        {"path", to_string(r.path)},
        {"lower_bound_F", optional_rational(r.lower_bound_F)},
        {"theoretical", optional_rational(r.theoretical)},
        {"status", r.exact() ? "exact" : "inconclusive"},
        {"nodes_explored", r.nodes_explored},
        {"seconds", r.seconds},
        {"failures", r.failures},
    };
}

json to_json(const LemmaReport &r) {
    json checks = json::array();
    for (const auto &c : r.checks)
        checks.push_back({{"name", c.name}, {"passed", c.passed}, {"detail", c.detail}});
    return {{"subject", r.subject}, {"q", r.q}, {"passed", r.passed()}, {"checks", checks}};
}

std::vector<TableRow> table_rows(std::uint32_t r, std::uint64_t q_max) {
    std::vector<TableRow> rows;
    for (std::uint64_t q = 3; q <= q_max; q += 2) {
        const auto pk = prime_power(q);
        if (!pk || pk->first == r)
            continue;
        TableRow row;
        row.r = r;
        row.q = q;
        if (((q - 1) / 2) % r == 0)
            row.eps = Epsilon::Minus;
        else if (((q + 1) / 2) % r == 0)
            row.eps = Epsilon::Plus;
        else
            continue;
        const std::uint64_t per_class = row.eps == Epsilon::Minus ? q * (q + 1) : q * (q - 1);
        row.fix_set_size = static_cast<std::size_t>(per_class * ((r - 1) / 2));
        row.slow = row.fix_set_size > slow_row_vertices;
        rows.push_back(row);
    }
    return rows;
}

std::string csv_line(const TableRow &row) {
    std::ostringstream os;
    os << row.r << ',' << row.q << ',' << to_string(row.eps) << ',';
    if (!row.report) {
        os << ",skipped,,";
        return os.str();
    }
    const DensityReport &rep = *row.report;
    os << rep.omega_gamma << ',' << (rep.exact() ? rep.rho.str() : std::string("inconclusive")) << ','
       << (rep.gamma_regular ? "True" : "False") << ',' << rep.gamma_components;
    return os.str();
}

void compute_rows(std::vector<TableRow> &rows, const TableOptions &opts) {
    std::vector<TableRow *> todo;
    for (auto &row : rows)
        if (opts.include_slow || !row.slow)
            todo.push_back(&row);
    if (todo.empty())
        return;
    const unsigned workers = std::max(1u, std::min<unsigned>(opts.threads, static_cast<unsigned>(todo.size())));
    DensityOptions dopts;
    dopts.threads = std::max(1u, opts.threads / workers);
    dopts.node_budget = opts.node_budget;

    std::atomic<std::size_t> next{0};
    std::exception_ptr error;
    std::mutex error_mutex;
    auto work = [&] {
        for (std::size_t i; (i = next.fetch_add(1)) < todo.size();) {
            TableRow &row = *todo[i];
            try {
                const auto pk = prime_power(row.q);
                row.report = density(make_field(pk->first, pk->second), StabilizerSpec::order_r(row.r, row.eps), dopts);
                row.computed = true;
            } catch (...) {
                std::lock_guard lock(error_mutex);
                if (!error)
                    error = std::current_exception();
            }
        }
    };
    std::vector<std::thread> pool;
    for (unsigned t = 1; t < workers; ++t)
        pool.emplace_back(work);
    work();
    for (auto &t : pool)
        t.join();
    if (error)
        std::rethrow_exception(error);
}

json to_json(const TableRow &row) {
    json out = {{"r", row.r}, {"q", row.q}, {"epsilon", to_string(row.eps)}, {"fix_set_size", row.fix_set_size},
                {"slow", row.slow}, {"computed", row.report.has_value()}};
    if (row.report) {
        const DensityReport &rep = *row.report;
        out["omega_gamma"] = rep.omega_gamma;
        out["density"] = rep.exact() ? json(rep.rho.str()) : json("inconclusive");
        out["is_regular"] = rep.gamma_regular;
        out["num_components"] = rep.gamma_components;
        out["report"] = to_json(rep);
    }
    return out;
}

} // namespace psld
