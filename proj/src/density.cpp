#include "psld/density.hpp"

#include "psld/families.hpp"

#include <chrono>
#include <numeric>
#include <stdexcept>

namespace psld {

Rational::Rational(std::int64_t num, std::int64_t den) {
    if (den == 0)
        throw std::invalid_argument("zero denominator");
    if (den < 0) {
        num = -num;
        den = -den;
    }
    const std::int64_t g = std::gcd(num, den);
    num_ = num / g;
    den_ = den / g;
}

std::string Rational::str() const {
    return den_ == 1 ? std::to_string(num_) : std::to_string(num_) + "/" + std::to_string(den_);
}

Rational Rational::parse(const std::string &text) {
    const auto slash = text.find('/');
    std::size_t used = 0;
    try {
        if (slash == std::string::npos) {
            const std::int64_t n = std::stoll(text, &used);
            if (used != text.size())
                throw std::invalid_argument(text);
            return {n, 1};
        }
        const std::string ns = text.substr(0, slash), ds = text.substr(slash + 1);
        const std::int64_t n = std::stoll(ns, &used);
        if (used != ns.size())
            throw std::invalid_argument(text);
        const std::int64_t d = std::stoll(ds, &used);
        if (used != ds.size())
            throw std::invalid_argument(text);
        return {n, d};
    } catch (const std::logic_error &) {
        throw std::invalid_argument("not a fraction: '" + text + "'");
    }
}

std::strong_ordering Rational::operator<=>(const Rational &o) const {
    return num_ * o.den_ <=> o.num_ * den_;
}

std::string to_string(DensityMode m) {
    switch (m) {
    case DensityMode::Auto:
        return "auto";
    case DensityMode::Fast:
        return "fast";
    case DensityMode::Generic:
        return "generic";
    case DensityMode::Both:
        return "both";
    }
    return "?";
}

std::string to_string(DensityPath p) { return p == DensityPath::Fast ? "fast" : "generic"; }

std::optional<DensityMode> parse_mode(const std::string &text) {
    for (const auto m : {DensityMode::Auto, DensityMode::Fast, DensityMode::Generic, DensityMode::Both})
        if (text == to_string(m))
            return m;
    return std::nullopt;
}

namespace {

std::uint64_t ipow(std::uint64_t b, std::uint32_t e) {
    std::uint64_t r = 1;
    while (e-- > 0)
        r *= b;
    return r;
}

std::vector<ProjMatrix> pick(const std::vector<ProjMatrix> &from, const std::vector<std::size_t> &idx) {
    std::vector<ProjMatrix> out;
    out.reserve(idx.size());
    for (const auto i : idx)
        out.push_back(from[i]);
    return out;
}

struct Budget {
    std::uint64_t left;
    void spend(std::uint64_t n) { left = n < left ? left - n : 0; }
};

} // namespace

std::optional<Rational> theoretical_density(const Field &f, const StabilizerSpec &stab) {
    const std::uint64_t q = f.q(), p = f.p();
    const auto k = f.k();
    switch (stab.kind) {
    case StabilizerKind::OrderPFull:
        if (k % 2 == 1)
            return Rational(static_cast<std::int64_t>(q), static_cast<std::int64_t>(p));
        return std::nullopt;
    case StabilizerKind::OrderPPlus:
    case StabilizerKind::OrderPMinus:
        if (k % 2 == 0)
            return Rational(static_cast<std::int64_t>(ipow(p, k / 2)), static_cast<std::int64_t>(p));
        return std::nullopt;
    case StabilizerKind::OrderR:
        break;
    }
    if (stab.r != 3 || p == 3)
        return std::nullopt;
    if (q % 3 == 1)
        return p == 5 ? Rational(2) : Rational(4, 3);
    if (q % 5 == 2 || q % 5 == 3)
        return Rational(1);
    return Rational(4, 3);
}

Rational lower_bound_via_F(const FieldPtr &f, std::uint32_t r) {
    const FConstruction F = construct_F(f, r);
    if (!F.certified())
        throw std::logic_error("F construction is not a clique of the fix graph over " + f->name());
    return {static_cast<std::int64_t>(1 + F.elements.size()), static_cast<std::int64_t>(r)};
}

StabilizerSpec stabilizer_of_order(const Field &f, std::uint32_t r) {
    if (r == f.p())
        return f.k() % 2 == 1 ? StabilizerSpec::order_p_full() : StabilizerSpec::order_p_minus();
    const std::uint64_t q = f.q();
    StabilizerSpec s = StabilizerSpec::order_r(r, ((q - 1) / 2) % r == 0 ? Epsilon::Minus : Epsilon::Plus);
    s.validate(f);
    return s;
}

RepStats representative_stats(const ClassSet &D, const ProjMatrix &rep, const CliqueOptions &opts) {
    RepStats s;
    s.rep = rep;
    s.trace = trace_pair(rep).t;
    const auto nb = fix_neighbors(D, rep);
    const BitGraph g = build_induced_fix_graph(D, nb, "neighborhood");
    s.neighborhood_size = g.size();
    s.is_regular = g.is_regular();
    s.components = g.components();
    const CliqueResult res = max_clique(g, opts);
    s.omega = res.size;
    s.exact = res.exact();
    s.nodes = res.nodes_explored;
    s.clique = pick(g.vertices(), res.witness);
    return s;
}

DensityReport density(const FieldPtr &fp, const StabilizerSpec &stab, const DensityOptions &opts) {
    const auto start = std::chrono::steady_clock::now();
    const Field &f = *fp;
    stab.validate(f);
    DensityMode mode = opts.mode;
    if (mode == DensityMode::Auto)
        mode = stab.is_order_p() ? DensityMode::Fast : DensityMode::Generic;
    if (!stab.is_order_p() && (mode == DensityMode::Fast || mode == DensityMode::Both))
        throw std::invalid_argument("mode '" + to_string(mode) + "' needs an order-p stabilizer");

    DensityReport rep;
    rep.field = fp;
    rep.stab = stab;
    rep.stabilizer_order = stab.order(f);
    rep.theoretical = theoretical_density(f, stab);
    if (!stab.is_order_p() && stab.eps == Epsilon::Minus)
        rep.lower_bound_F = lower_bound_via_F(fp, stab.r);

    const ClassSet D = fix_set(fp, stab);
    rep.fix_set_size = D.size();
    const ProjMatrix id = ProjMatrix::identity(f);
    const auto H = static_cast<std::int64_t>(rep.stabilizer_order);
    Budget budget{opts.node_budget};
    CliqueOptions copts;
    copts.threads = opts.threads;

    auto run_rep = [&](const ProjMatrix &r) {
        copts.node_budget = budget.left;
        RepStats s = representative_stats(D, r, copts);
        budget.spend(s.nodes);
        rep.nodes_explored += s.nodes;
        if (!s.exact)
            rep.status = SearchStatus::Inconclusive;
        return s;
    };

    std::optional<Rational> fast_rho;
    if (mode == DensityMode::Fast || mode == DensityMode::Both) {
        const ProjMatrix anchor = stab.kind == StabilizerKind::OrderPMinus ? order_p_rep_delta(f) : order_p_rep(f);
        RepStats s = run_rep(anchor);
        fast_rho = Rational(static_cast<std::int64_t>(s.omega + 2), H);
        rep.path = DensityPath::Fast;
        rep.rho = *fast_rho;
        rep.omega_full = s.omega + 1;
        rep.witness = {id, anchor};
        rep.witness.insert(rep.witness.end(), s.clique.begin(), s.clique.end());
        rep.per_rep.push_back(std::move(s));
    }

    if (mode == DensityMode::Generic || mode == DensityMode::Both) {
        if (D.size() > opts.max_generic_vertices)
            throw std::invalid_argument("fix set of " + std::to_string(D.size()) +
                                        " elements exceeds the generic vertex budget");
        std::vector<RepStats> stats;
        std::size_t best = 0;
        for (std::size_t i = 0; i < D.reps.size(); ++i) {
            stats.push_back(run_rep(D.reps[i].element));
            if (stats[i].omega > stats[best].omega)
                best = i;
        }

        GraphBuildOptions gopts;
        gopts.threads = opts.threads;
        const BitGraph G = build_fix_graph(D, gopts);
        CliqueOptions full = copts;
        full.node_budget = budget.left;
        full.seed.push_back(*D.index_of(stats[best].rep));
        for (const auto &m : stats[best].clique)
            full.seed.push_back(*D.index_of(m));
        const CliqueResult res = max_clique(G, full);
        rep.nodes_explored += res.nodes_explored;
        if (!res.exact())
            rep.status = SearchStatus::Inconclusive;

        rep.path = DensityPath::Generic;
        rep.omega_full = res.size;
        rep.rho = Rational(static_cast<std::int64_t>(res.size + 1), H);
        rep.witness = {id};
        for (const auto i : res.witness)
            rep.witness.push_back(D.elements[i]);
        if (rep.exact() && res.size != stats[best].omega + 1)
            rep.failures.push_back("full clique number " + std::to_string(res.size) +
                                   " differs from 1 + representative maximum " + std::to_string(stats[best].omega));
        if (fast_rho && *fast_rho != rep.rho)
            rep.failures.push_back("fast path gives " + fast_rho->str() + ", generic path " + rep.rho.str());
        rep.per_rep = std::move(stats);
    }

    for (const auto &s : rep.per_rep)
        rep.omega_gamma = std::max(rep.omega_gamma, s.omega);
    rep.gamma_regular = rep.per_rep.front().is_regular;
    rep.gamma_components = rep.per_rep.front().components;
    for (const auto &s : rep.per_rep)
        if (s.omega != rep.per_rep.front().omega || s.is_regular != rep.gamma_regular ||
            s.components != rep.gamma_components || s.neighborhood_size != rep.per_rep.front().neighborhood_size)
            rep.reps_disagree = true;

    if (rep.exact()) {
        if (rep.theoretical && *rep.theoretical != rep.rho)
            rep.failures.push_back("theorem value " + rep.theoretical->str() + " differs from computed " +
                                   rep.rho.str());
        if (rep.lower_bound_F && rep.rho < *rep.lower_bound_F)
            rep.failures.push_back("computed density below the F-construction bound " + rep.lower_bound_F->str());
        if (rep.rho < Rational(1))
            rep.failures.push_back("density below 1");
    }
    rep.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return rep;
}

} // namespace psld
