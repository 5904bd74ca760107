// Command-line front end: single densities, the density table, verification
// suites and graph dumps.

#include "psld/report.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <memory>
#include <set>

using namespace psld;
using nlohmann::json;

namespace {

enum Exit { ok = 0, usage = 1, inconclusive = 2, verification_failure = 3 };

struct Common {
    unsigned threads = 1;
    std::uint64_t node_budget = 1'000'000'000;
    std::string out;
    std::string format;
};

// Writes to --out when given, stdout otherwise.
class Output {
  public:
    explicit Output(const std::string &path) {
        if (!path.empty()) {
            file_ = std::make_unique<std::ofstream>(path);
            if (!*file_)
                throw std::runtime_error("cannot open " + path);
        }
    }
    std::ostream &stream() { return file_ ? *file_ : std::cout; }

  private:
    std::unique_ptr<std::ofstream> file_;
};

FieldPtr field_of(std::uint64_t q) {
    const auto pk = prime_power(q);
    if (!pk || pk->first == 2)
        throw std::invalid_argument("q = " + std::to_string(q) + " is not an odd prime power");
    return make_field(pk->first, pk->second);
}

void add_common(CLI::App *cmd, Common &c, bool with_format, const std::string &default_format) {
    cmd->add_option("--threads", c.threads, "Worker threads")->check(CLI::Range(1u, 256u));
    cmd->add_option("--node-budget", c.node_budget, "Search-node budget before giving up");
    cmd->add_option("--out", c.out, "Output file (default: stdout)");
    if (with_format) {
        c.format = default_format;
        cmd->add_option("--format", c.format, "Output format")->check(CLI::IsMember({"csv", "json"}));
    }
}

int density_exit(const DensityReport &r) {
    if (!r.consistent())
        return verification_failure;
    return r.exact() ? ok : inconclusive;
}

int run_density(std::uint64_t q, const std::string &stab_text, const std::string &mode_text, const Common &c) {
    const FieldPtr f = field_of(q);
    const StabilizerSpec stab = StabilizerSpec::parse(stab_text);
    DensityOptions opts;
    opts.mode = *parse_mode(mode_text);
    opts.threads = c.threads;
    opts.node_budget = c.node_budget;
    const DensityReport r = density(f, stab, opts);
    Output out(c.out);
    if (c.format == "csv") {
        TableRow row;
        row.r = r.stabilizer_order;
        row.q = q;
        row.eps = stab.eps;
        row.report = r;
        out.stream() << table_header << '\n' << csv_line(row) << '\n';
    } else {
        out.stream() << to_json(r).dump(2) << '\n';
    }
    return density_exit(r);
}

int run_table(const std::vector<std::uint32_t> &rs, std::uint64_t q_max, bool slow, const Common &c) {
    std::vector<TableRow> rows;
    for (const auto r : rs) {
        if (r < 3 || !is_prime(r))
            throw std::invalid_argument("r must be an odd prime");
        for (auto &row : table_rows(r, q_max))
            rows.push_back(row);
    }
    TableOptions topts;
    topts.threads = c.threads;
    topts.node_budget = c.node_budget;
    topts.include_slow = slow;
    compute_rows(rows, topts);

    int status = ok;
    std::erase_if(rows, [](const TableRow &row) {
        if (!row.computed)
            std::cerr << "skipping r=" << row.r << " q=" << row.q << " (" << row.fix_set_size
                      << " vertices); pass --slow to include it\n";
        return !row.computed;
    });
    for (const auto &row : rows)
        status = std::max(status, density_exit(*row.report));
    Output out(c.out);
    if (c.format == "json") {
        json arr = json::array();
        for (const auto &row : rows)
            arr.push_back(to_json(row));
        out.stream() << arr.dump(2) << '\n';
    } else {
        out.stream() << table_header << '\n';
        for (const auto &row : rows)
            out.stream() << csv_line(row) << '\n';
    }
    return status;
}

// Every check of the chosen suites over odd prime powers q <= q_max.
int run_verify(const std::string &suite, std::uint64_t q_max, const Common &c) {
    const bool lemmas = suite == "lemmas" || suite == "all";
    const bool theorems = suite == "theorems" || suite == "all";
    json reports = json::array();
    bool all_passed = true, any_inconclusive = false;
    auto record = [&](const LemmaReport &r) {
        all_passed = all_passed && r.passed();
        reports.push_back(to_json(r));
    };

    for (std::uint64_t q = 3; q <= q_max; q += 2) {
        const auto pk = prime_power(q);
        if (!pk)
            continue;
        const FieldPtr f = make_field(pk->first, pk->second);
        const bool k_odd = f->k() % 2 == 1;
        if (lemmas) {
            record(verify_square_counts(*f));
            if (q <= 49) {
                record(verify_group_counts(f));
                for (const std::uint32_t r : {3u, 5u, 7u})
                    if (r != f->p())
                        for (const auto eps : {Epsilon::Minus, Epsilon::Plus})
                            if (((eps == Epsilon::Minus ? q - 1 : q + 1) / 2) % r == 0)
                                record(verify_order_r_classes(f, r, eps));
            }
            if (q >= 5 || !k_odd)
                record(verify_neighborhood_lemma(f, k_odd ? NeighborhoodVariant::Full : NeighborhoodVariant::Minus));
            if (!k_odd)
                record(verify_paley_reduction(f));
            for (const std::uint32_t r : {3u, 5u, 7u}) {
                if (r == f->p() || ((q - 1) / 2) % r != 0)
                    continue;
                const FConstruction F = construct_F(f, r);
                LemmaReport rep;
                rep.subject = "F construction, r=" + std::to_string(r);
                rep.q = q;
                rep.add("size", F.distinct && F.elements.size() == 3 * ((r - 1) / 2),
                        std::to_string(F.elements.size()) + " distinct elements");
                rep.add("in_fix_set", F.in_fix_set);
                rep.add("clique", F.clique);
                record(rep);
            }
        }
        if (theorems) {
            std::vector<StabilizerSpec> stabs;
            if (k_odd)
                stabs.push_back(StabilizerSpec::order_p_full());
            else
                stabs = {StabilizerSpec::order_p_plus(), StabilizerSpec::order_p_minus()};
            if (f->p() != 3 && (((q - 1) / 2) % 3 == 0 || ((q + 1) / 2) % 3 == 0))
                stabs.push_back(stabilizer_of_order(*f, 3));
            for (const auto &stab : stabs) {
                DensityOptions opts;
                opts.threads = c.threads;
                opts.node_budget = c.node_budget;
                if (stab.is_order_p())
                    opts.mode = q <= 49 ? DensityMode::Both : DensityMode::Fast;
                const DensityReport d = density(f, stab, opts);
                LemmaReport rep;
                rep.subject = "density, stabilizer " + stab.label();
                rep.q = q;
                const auto want = theoretical_density(*f, stab);
                any_inconclusive = any_inconclusive || !d.exact();
                rep.add("theorem_value", d.exact() && want && *want == d.rho,
                        "computed " + d.rho.str() + ", theorem " + (want ? want->str() : std::string("none")));
                rep.add("internal_consistency", d.consistent(),
                        d.failures.empty() ? "" : d.failures.front());
                record(rep);
            }
        }
    }
    Output out(c.out);
    out.stream() << json{{"suite", suite}, {"qmax", q_max}, {"passed", all_passed}, {"reports", reports}}.dump(2)
                 << '\n';
    if (!all_passed)
        return verification_failure;
    return any_inconclusive ? inconclusive : ok;
}

int run_dump(std::uint64_t q, const std::string &stab_text, int rep_index, const Common &c) {
    const FieldPtr f = field_of(q);
    const StabilizerSpec stab = StabilizerSpec::parse(stab_text);
    stab.validate(*f);
    const ClassSet D = fix_set(f, stab);
    GraphBuildOptions gopts;
    gopts.threads = c.threads;
    Output out(c.out);
    if (rep_index < 0) {
        build_fix_graph(D, gopts).write_edge_list(out.stream());
    } else {
        if (static_cast<std::size_t>(rep_index) >= D.reps.size())
            throw std::invalid_argument("representative index out of range");
        const auto nb = fix_neighbors(D, D.reps[rep_index].element);
        build_induced_fix_graph(D, nb).write_edge_list(out.stream());
    }
    return ok;
}

} // namespace

int main(int argc, char **argv) {
    CLI::App app{"Intersection densities of PSL(2,q) on cosets of cyclic subgroups of prime order"};
    app.require_subcommand(1);

    std::uint64_t q = 0, q_max = 0;
    std::string stab, mode = "auto", suite = "all";
    std::vector<std::uint32_t> rs{5, 7};
    bool slow = false;
    int rep_index = -1;
    Common dens_opts, table_opts, verify_opts, dump_opts;

    auto *dens = app.add_subcommand("density", "Compute one intersection density");
    dens->add_option("--q", q, "Field order (odd prime power)")->required();
    dens->add_option("--stab", stab, "p | p-plus | p-minus | r=<r>,eps=<+|->")->required();
    dens->add_option("--mode", mode, "Computation path")->check(CLI::IsMember({"auto", "fast", "generic", "both"}));
    add_common(dens, dens_opts, true, "json");

    auto *table = app.add_subcommand("table", "Density table for stabilizers of order r");
    table->add_option("--r", rs, "Stabilizer orders (default: 5 7)");
    table->add_option("--qmax", q_max, "Largest field order")->required();
    table->add_flag("--slow", slow, "Include rows with large fix sets");
    add_common(table, table_opts, true, "csv");

    auto *verify = app.add_subcommand("verify", "Run the lemma and theorem checks");
    verify->add_option("--suite", suite, "Which checks")->check(CLI::IsMember({"lemmas", "theorems", "all"}));
    verify->add_option("--qmax", q_max, "Largest field order")->required();
    add_common(verify, verify_opts, false, "");

    auto *dump = app.add_subcommand("dump-graph", "Write a fix graph as an edge list");
    dump->add_option("--q", q, "Field order (odd prime power)")->required();
    dump->add_option("--stab", stab, "p | p-plus | p-minus | r=<r>,eps=<+|->")->required();
    dump->add_option("--rep", rep_index, "Dump the neighbourhood of this class representative instead");
    add_common(dump, dump_opts, false, "");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        const int code = app.exit(e);
        return code == 0 ? ok : usage;
    }

    try {
        if (*dens)
            return run_density(q, stab, mode, dens_opts);
        if (*table)
            return run_table(rs, q_max, slow, table_opts);
        if (*verify)
            return run_verify(suite, q_max, verify_opts);
        return run_dump(q, stab, rep_index, dump_opts);
    } catch (const std::invalid_argument &e) {
        std::cerr << "error: " << e.what() << '\n';
        return usage;
    } catch (const FieldError &e) {
        std::cerr << "error: " << e.what() << '\n';
        return usage;
    } catch (const std::exception &e) {
        std::cerr << "internal error: " << e.what() << '\n';
        return verification_failure;
    }
}
