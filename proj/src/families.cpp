#include "psld/families.hpp"

#include "psld/clique.hpp"

#include <algorithm>
#include <deque>
#include <set>
#include <sstream>
#include <stdexcept>
#include <unordered_set>

namespace psld {

std::string to_string(FamilyName name) {
    switch (name) {
    case FamilyName::Centralizer:
        return "Centralizer";
    case FamilyName::ScriptC:
        return "ScriptC";
    case FamilyName::C1:
        return "C1";
    case FamilyName::C2:
        return "C2";
    case FamilyName::F1:
        return "F1";
    case FamilyName::F2:
        return "F2";
    case FamilyName::F3:
        return "F3";
    }
    return "?";
}

std::vector<ProjMatrix> NamedFamily::elements() const {
    std::vector<ProjMatrix> out;
    out.reserve(members.size());
    for (const auto &m : members)
        out.push_back(m.element);
    return out;
}

namespace {

ProjMatrix mat(const FieldElement &a, const FieldElement &b, const FieldElement &c, const FieldElement &d) {
    return ProjMatrix::normalize(Mat2{a, b, c, d});
}

void require_even(const Field &f, FamilyName name) {
    if (f.k() % 2 != 0)
        throw std::invalid_argument(to_string(name) + " needs an even extension degree, got " + f.name());
}

} // namespace

NamedFamily build_family(const FieldPtr &fp, FamilyName name, std::uint32_t r) {
    const Field &f = *fp;
    NamedFamily fam{name, {}};
    const FieldElement one = f.one(), zero = f.zero(), four = f.from_int(4);
    switch (name) {
    case FamilyName::Centralizer:
        for (std::uint32_t i = 2; i < f.q(); ++i) {
            const FieldElement a = f.element(i);
            fam.members.push_back({mat(one, a, zero, one), a});
        }
        break;
    case FamilyName::ScriptC:
        for (std::uint32_t i = 0; i < f.q(); ++i) {
            const FieldElement b = f.element(i);
            fam.members.push_back({mat(one + four * b, -(four * b * b), four, one - four * b), b});
        }
        break;
    case FamilyName::C1: {
        require_even(f, name);
        const FieldElement delta = f.nonsquare_delta();
        std::set<std::uint32_t> seen;
        for (std::uint32_t i = 2; i < f.q(); ++i) {
            const FieldElement a = f.element(i);
            const FieldElement sq = a * a;
            if (a == -one || !is_square(sq - one) || !seen.insert(sq.index()).second)
                continue;
            fam.members.push_back({mat(one, sq * delta, zero, one), a});
        }
        break;
    }
    case FamilyName::C2: {
        require_even(f, name);
        const FieldElement dinv = f.nonsquare_delta().inv();
        for (std::uint32_t i = 0; i < f.q(); ++i) {
            const FieldElement b = f.element(i);
            fam.members.push_back(
                {mat(one + four * b * dinv, -(four * b * b * dinv), four * dinv, one - four * b * dinv), b});
        }
        break;
    }
    case FamilyName::F1:
    case FamilyName::F2:
    case FamilyName::F3: {
        StabilizerSpec::order_r(r, Epsilon::Minus).validate(f);
        const FieldElement a = f.element_of_order(2 * static_cast<std::uint64_t>(r));
        for (std::uint32_t i = 1; i <= (r - 1) / 2; ++i) {
            const FieldElement x = a.pow(i), y = a.pow(-static_cast<std::int64_t>(i));
            ProjMatrix m;
            if (name == FamilyName::F1)
                m = mat(y, zero, zero, x);
            else if (name == FamilyName::F2)
                m = mat(x, zero, x - y, y);
            else
                m = mat(x, -(x - y), zero, y);
            fam.members.push_back({m, x});
        }
        break;
    }
    }
    return fam;
}

bool LemmaReport::passed() const {
    return std::all_of(checks.begin(), checks.end(), [](const CheckResult &c) { return c.passed; });
}

void LemmaReport::add(std::string name, bool ok, std::string detail) {
    checks.push_back({std::move(name), ok, std::move(detail)});
}

namespace {

std::string count_detail(std::size_t got, std::size_t want) {
    return "got " + std::to_string(got) + ", expected " + std::to_string(want);
}

// Edges of g with one end in [0, split) and the other in [split, n).
std::size_t cross_edges(const BitGraph &g, std::size_t split) {
    std::size_t count = 0;
    for (std::size_t u = 0; u < split; ++u)
        for (const auto v : g.neighbors(u))
            count += v >= split ? 1 : 0;
    return count;
}

std::vector<ProjMatrix> concat(const NamedFamily &x, const NamedFamily &y) {
    auto out = x.elements();
    const auto more = y.elements();
    out.insert(out.end(), more.begin(), more.end());
    return out;
}

// Maps vertex i to the index of g v_i g^-1; empty if some image leaves the set.
std::vector<std::size_t> conjugation_map(const ClassSet &D, const ProjMatrix &g) {
    std::vector<std::size_t> img(D.size());
    for (std::size_t i = 0; i < D.size(); ++i) {
        const auto j = D.index_of(conjugate(g, D.elements[i]));
        if (!j)
            return {};
        img[i] = *j;
    }
    return img;
}

std::uint64_t isqrt_exact(std::uint64_t q) {
    std::uint64_t s = 0;
    while ((s + 1) * (s + 1) <= q)
        ++s;
    return s;
}

} // namespace

LemmaReport verify_neighborhood_lemma(const FieldPtr &fp, NeighborhoodVariant variant) {
    const Field &f = *fp;
    const bool full = variant == NeighborhoodVariant::Full;
    if (full && f.k() % 2 == 0)
        throw std::invalid_argument("the full order-p variant needs k odd");
    if (!full && f.k() % 2 != 0)
        throw std::invalid_argument("the minus variant needs k even");

    const std::uint64_t q = f.q();
    LemmaReport rep;
    rep.subject = full ? "neighborhood of R in the C_p fix graph" : "neighborhood of R_Delta in its class fix graph";
    rep.q = q;

    const ClassSet D = fix_set(fp, full ? StabilizerSpec::order_p_full() : StabilizerSpec::order_p_minus());
    const ProjMatrix anchor = full ? order_p_rep(f) : order_p_rep_delta(f);
    const NamedFamily upper = build_family(fp, full ? FamilyName::Centralizer : FamilyName::C1);
    const NamedFamily lower = build_family(fp, full ? FamilyName::ScriptC : FamilyName::C2);
    const std::size_t want_upper = full ? q - 2 : (q - 5) / 4;
    const std::size_t want = want_upper + q;

    const auto nb = fix_neighbors(D, anchor);
    rep.add("neighborhood_size", nb.size() == want, count_detail(nb.size(), want));
    rep.add("family_sizes", upper.size() == want_upper && lower.size() == q,
            to_string(upper.name) + " " + count_detail(upper.size(), want_upper) + "; " + to_string(lower.name) + " " +
                count_detail(lower.size(), q));

    std::set<ProjMatrix> computed, constructed;
    for (const auto i : nb)
        computed.insert(D.elements[i]);
    for (const auto &m : concat(upper, lower))
        constructed.insert(m);
    std::string witness;
    for (const auto &m : computed)
        if (!constructed.contains(m)) {
            witness = "in neighborhood but not constructed: " + to_string(m);
            break;
        }
    if (witness.empty())
        for (const auto &m : constructed)
            if (!computed.contains(m)) {
                witness = "constructed but not in neighborhood: " + to_string(m);
                break;
            }
    rep.add("neighborhood_equals_families", witness.empty(), witness.empty() ? "set equality holds" : witness);

    bool members_ok = true;
    std::string bad;
    for (const auto &m : constructed)
        if (!D.index_of(m) || !has_order_p(m)) {
            members_ok = false;
            bad = "outside the fix set: " + to_string(m);
            break;
        }
    rep.add("families_in_fix_set", members_ok, bad);

    const auto both = concat(upper, lower);
    const BitGraph fam_graph = build_element_graph(D, both, "families");
    const std::size_t crossing = cross_edges(fam_graph, upper.size());
    rep.add("no_cross_edges", crossing == 0, std::to_string(crossing) + " edges between the two families");
    if (full) {
        const BitGraph up = build_element_graph(D, upper.elements(), "centralizer");
        rep.add("centralizer_clique", up.edge_count() * 2 == up.size() * (up.size() - 1),
                std::to_string(up.edge_count()) + " edges on " + std::to_string(up.size()) + " vertices");
    }

    const BitGraph tilde = build_induced_fix_graph(D, nb, "tilde");
    const TildeDecomposition dec = structure_decompose_tilde(tilde, f, full);
    rep.add("tilde_decomposition", dec.matches, dec.detail);

    if (D.size() <= 6000) {
        const BitGraph G = build_fix_graph(D);
        bool regular = true;
        for (std::size_t v = 0; v < G.size() && regular; ++v)
            regular = G.degree(v) == want;
        rep.add("fix_graph_regular", regular, "every degree should be " + std::to_string(want));

        // Conjugation by the generators permutes the vertices; it must also
        // preserve adjacency.
        bool equivariant = true;
        std::string why;
        for (const auto &g : standard_generators(f)) {
            const auto img = conjugation_map(D, g);
            if (img.empty()) {
                equivariant = false;
                why = "conjugation by " + to_string(g) + " leaves the vertex set";
                break;
            }
            for (std::size_t u = 0; u < G.size() && equivariant; ++u)
                for (const auto v : G.neighbors(u))
                    if (!G.adjacent(img[u], img[v])) {
                        equivariant = false;
                        why = "edge " + to_string(D.elements[u]) + " ~ " + to_string(D.elements[v]) +
                              " not preserved by " + to_string(g);
                        break;
                    }
        }
        rep.add("conjugation_automorphism", equivariant, why);
    }
    return rep;
}

LemmaReport verify_paley_reduction(const FieldPtr &fp) {
    const Field &f = *fp;
    if (f.k() % 2 != 0)
        throw std::invalid_argument("Paley reduction needs an even extension degree");
    const std::uint64_t q = f.q();
    const std::uint64_t root = isqrt_exact(q);
    LemmaReport rep;
    rep.subject = "clique number of the C1 graph";
    rep.q = q;

    const ClassSet D = fix_set(fp, StabilizerSpec::order_p_minus());
    const NamedFamily c1 = build_family(fp, FamilyName::C1);
    const BitGraph matrix_graph = build_element_graph(D, c1.elements(), "C1");

    // Same vertices as squares u = a^2, adjacency by square differences.
    std::vector<FieldElement> u;
    for (const auto &m : c1.members)
        u.push_back(m.param * m.param);
    BitGraph abstract(u.size(), "C1_abstract");
    for (std::size_t i = 0; i < u.size(); ++i)
        for (std::size_t j = i + 1; j < u.size(); ++j)
            if (is_square(u[i] - u[j]))
                abstract.add_edge(i, j);
    bool same = true;
    for (std::size_t i = 0; i < u.size() && same; ++i)
        for (std::size_t j = 0; j < u.size() && same; ++j)
            same = matrix_graph.adjacent(i, j) == abstract.adjacent(i, j);
    rep.add("abstract_isomorphic", same, std::to_string(u.size()) + " vertices, " +
                                             std::to_string(matrix_graph.edge_count()) + " edges");

    const CliqueResult c1_clique = max_clique(matrix_graph);
    rep.add("c1_clique_number", c1_clique.exact() && c1_clique.size + 2 == root,
            count_detail(c1_clique.size, root - 2));

    // W = {u : u and u - 1 squares}; it should be the C1 vertex set plus 0, 1.
    const FieldElement one = f.one();
    std::vector<FieldElement> w;
    for (std::uint32_t i = 0; i < f.q(); ++i) {
        const FieldElement x = f.element(i);
        if (is_square(x) && is_square(x - one))
            w.push_back(x);
    }
    std::set<std::uint32_t> w_set, expect;
    for (const auto &x : w)
        w_set.insert(x.index());
    expect.insert(0);
    expect.insert(1);
    for (const auto &x : u)
        expect.insert(x.index());
    rep.add("w_is_c1_plus_0_1", w_set == expect, std::to_string(w.size()) + " elements in W");

    BitGraph wg(w.size(), "W");
    for (std::size_t i = 0; i < w.size(); ++i)
        for (std::size_t j = i + 1; j < w.size(); ++j)
            if (is_square(w[i] - w[j]))
                wg.add_edge(i, j);
    const CliqueResult w_clique = max_clique(wg);
    rep.add("w_clique_number", w_clique.exact() && w_clique.size == root, count_detail(w_clique.size, root));

    // The subfield of order sqrt(q) is a clique of W.
    std::vector<std::size_t> sub;
    for (std::size_t i = 0; i < w.size(); ++i)
        if (w[i].pow(static_cast<std::int64_t>(root)) == w[i])
            sub.push_back(i);
    std::size_t subfield_size = 0;
    for (std::uint32_t i = 0; i < f.q(); ++i)
        subfield_size += f.element(i).pow(static_cast<std::int64_t>(root)) == f.element(i) ? 1 : 0;
    rep.add("subfield_witness", sub.size() == root && subfield_size == root && is_clique(wg, sub),
            "subfield of order " + std::to_string(subfield_size) + ", " + std::to_string(sub.size()) + " inside W");
    return rep;
}

FConstruction construct_F(const FieldPtr &fp, std::uint32_t r) {
    FConstruction out{build_family(fp, FamilyName::F1, r), build_family(fp, FamilyName::F2, r),
                      build_family(fp, FamilyName::F3, r), {}, false, false, false};
    for (const auto *fam : {&out.f1, &out.f2, &out.f3})
        for (const auto &m : fam->members)
            out.elements.push_back(m.element);
    out.distinct = std::set<ProjMatrix>(out.elements.begin(), out.elements.end()).size() == 3 * ((r - 1) / 2);
    const ClassSet D = fix_set(fp, StabilizerSpec::order_r(r, Epsilon::Minus));
    out.in_fix_set = std::all_of(out.elements.begin(), out.elements.end(),
                                 [&](const ProjMatrix &m) { return D.index_of(m).has_value(); });
    const BitGraph g = build_element_graph(D, out.elements, "F");
    std::vector<std::size_t> all(out.elements.size());
    for (std::size_t i = 0; i < all.size(); ++i)
        all[i] = i;
    out.clique = is_clique(g, all);
    return out;
}

namespace {

std::size_t generated_group_size(std::span<const ProjMatrix> gens) {
    const ProjMatrix id = ProjMatrix::identity(gens.front().field());
    std::unordered_set<ProjMatrix, ProjMatrixHash> seen{id};
    std::deque<ProjMatrix> frontier{id};
    while (!frontier.empty()) {
        const ProjMatrix x = frontier.front();
        frontier.pop_front();
        for (const auto &g : gens) {
            ProjMatrix y = multiply(x, g);
            if (seen.insert(y).second)
                frontier.push_back(y);
        }
    }
    return seen.size();
}

} // namespace

LemmaReport verify_group_counts(const FieldPtr &fp) {
    const Field &f = *fp;
    const std::uint64_t q = f.q(), p = f.p();
    const std::uint64_t psl = q * (q * q - 1) / 2;
    LemmaReport rep;
    rep.subject = "order-p classes and subgroups";
    rep.q = q;

    const ClassSet cp = order_p_classes(fp);
    rep.add("order_p_count", cp.size() == q * q - 1, count_detail(cp.size(), q * q - 1));
    rep.add("order_p_split", cp.class_size(0) == (q * q - 1) / 2 && cp.class_size(1) == (q * q - 1) / 2,
            "classes of " + std::to_string(cp.class_size(0)) + " and " + std::to_string(cp.class_size(1)));

    const auto all = enumerate_psl(f);
    rep.add("psl_order", all.size() == psl, count_detail(all.size(), psl));
    if (q <= 61) {
        const auto gens = standard_generators(f);
        const std::size_t closure = generated_group_size(gens);
        rep.add("generators_closure", closure == psl, count_detail(closure, psl));
    }

    std::size_t by_order = 0;
    std::string mismatch;
    for (const auto &g : all) {
        const bool is_p = order(g) == p;
        by_order += is_p ? 1 : 0;
        if (is_p != has_order_p(g) && mismatch.empty())
            mismatch = to_string(g);
    }
    rep.add("trace_criterion", mismatch.empty(), mismatch.empty() ? "" : "disagrees at " + mismatch);
    rep.add("order_p_scan", by_order == cp.size(), count_detail(by_order, cp.size()));

    const auto conj = find_subgroup_conjugator(f);
    const bool want_one_class = f.k() % 2 == 1;
    rep.add("subgroup_classes", conj.has_value() == want_one_class,
            std::string(want_one_class ? "1" : "2") + " class(es) expected; conjugator " +
                (conj ? to_string(*conj) : std::string("not found")));
    return rep;
}

LemmaReport verify_order_r_classes(const FieldPtr &fp, std::uint32_t r, Epsilon eps) {
    const Field &f = *fp;
    const std::uint64_t q = f.q();
    LemmaReport rep;
    rep.subject = "order-" + std::to_string(r) + " classes, eps=" + to_string(eps);
    rep.q = q;
    const StabilizerSpec stab = StabilizerSpec::order_r(r, eps);
    const ClassSet D = fix_set(fp, stab);
    const std::uint64_t per_class = eps == Epsilon::Minus ? q * (q + 1) : q * (q - 1);
    bool sizes = D.reps.size() == (r - 1) / 2;
    for (std::uint32_t i = 0; i < D.reps.size(); ++i)
        sizes = sizes && D.class_size(i) == per_class;
    rep.add("class_sizes", sizes, std::to_string(D.reps.size()) + " classes of " + std::to_string(per_class));

    std::string trace_bad, order_bad;
    for (std::size_t i = 0; i < D.size(); ++i) {
        const auto id = class_id_by_trace(D.elements[i], D.reps);
        if ((!id || *id != D.labels[i]) && trace_bad.empty())
            trace_bad = to_string(D.elements[i]);
        if (order(D.elements[i]) != r && order_bad.empty())
            order_bad = to_string(D.elements[i]);
    }
    rep.add("trace_labels", trace_bad.empty(), trace_bad.empty() ? "" : "label mismatch at " + trace_bad);
    rep.add("element_orders", order_bad.empty(), order_bad.empty() ? "" : "wrong order at " + order_bad);

    if (q <= 49) {
        std::size_t scanned = 0;
        std::string stray;
        for (const auto &g : enumerate_psl(f)) {
            const bool is_r = order(g) == r;
            const bool by_trace = class_id_by_trace(g, D.reps).has_value();
            scanned += is_r ? 1 : 0;
            if (is_r != by_trace && stray.empty())
                stray = to_string(g);
        }
        rep.add("order_scan", scanned == D.size() && stray.empty(),
                count_detail(scanned, D.size()) + (stray.empty() ? "" : "; trace test disagrees at " + stray));
    }
    return rep;
}

LemmaReport verify_square_counts(const Field &f) {
    const std::uint64_t q = f.q();
    LemmaReport rep;
    rep.subject = "square counts";
    rep.q = q;
    std::vector<bool> sq(q, false);
    for (std::uint32_t i = 0; i < q; ++i) {
        const FieldElement x = f.element(i);
        sq[(x * x).index()] = true;
    }
    std::size_t squares = 0, agree = 0, shifted = 0;
    const FieldElement one = f.one();
    for (std::uint32_t i = 0; i < q; ++i) {
        const FieldElement x = f.element(i);
        squares += sq[i] ? 1 : 0;
        agree += sq[i] == is_square(x) ? 1 : 0;
        shifted += sq[(x * x - one).index()] ? 1 : 0;
    }
    rep.add("square_count", squares == (q + 1) / 2 && agree == q, count_detail(squares, (q + 1) / 2));
    rep.add("x2_minus_1_square_count", shifted == (q + 1) / 2, count_detail(shifted, (q + 1) / 2));
    return rep;
}

} // namespace psld
