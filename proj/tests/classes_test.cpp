#include "psld/classes.hpp"

#include <doctest.h>

#include <algorithm>
#include <random>
#include <set>

using namespace psld;

namespace {

struct Case {
    std::uint64_t q;
    std::uint32_t r;
    Epsilon eps;
};

// Every (q, r, eps) with q <= qmax and r in {3, 5, 7}, r != p.
std::vector<Case> order_r_cases(std::uint64_t qmax) {
    std::vector<Case> out;
    for (std::uint64_t q = 3; q <= qmax; q += 2) {
        const auto pk = prime_power(q);
        if (!pk)
            continue;
        for (std::uint32_t r : {3u, 5u, 7u}) {
            if (r == pk->first)
                continue;
            if (((q - 1) / 2) % r == 0)
                out.push_back({q, r, Epsilon::Minus});
            if (((q + 1) / 2) % r == 0)
                out.push_back({q, r, Epsilon::Plus});
        }
    }
    return out;
}

FieldPtr field(std::uint64_t q) {
    const auto pk = prime_power(q);
    return make_field(pk->first, pk->second);
}

} // namespace

TEST_CASE("order-p classes") {
    const auto c7 = order_p_classes(field(7));
    CHECK(c7.size() == 48);
    CHECK(c7.class_size(0) == 24);
    CHECK(c7.class_size(1) == 24);
    const auto c9 = order_p_classes(field(9));
    CHECK(c9.size() == 80);
    CHECK(c9.class_size(0) == 40);
    CHECK(c9.class_size(1) == 40);

    const auto f5 = field(5);
    const auto G = enumerate_psl(*f5);
    CHECK(std::count_if(G.begin(), G.end(), [](const ProjMatrix &g) { return order(g) == 5; }) == 24);
    CHECK(order_p_classes(f5).size() == 24);
}

TEST_CASE("order-p class sizes and labels for q <= 49") {
    for (std::uint64_t q = 3; q <= 49; q += 2) {
        if (!prime_power(q))
            continue;
        const auto f = field(q);
        const auto C = order_p_classes(f);
        CAPTURE(q);
        CHECK(C.size() == q * q - 1);
        CHECK(C.class_size(0) == (q * q - 1) / 2);
        CHECK(std::is_sorted(C.elements.begin(), C.elements.end()));
        CHECK(std::adjacent_find(C.elements.begin(), C.elements.end()) == C.elements.end());
        for (std::size_t i = 0; i < C.size(); ++i) {
            const auto &g = C.elements[i];
            REQUIRE(has_order_p(g));
            CHECK(unipotent_in_square_class(g) == (C.labels[i] == 0));
            for (const auto &s : standard_generators(*f))
                CHECK(C.labels[*C.index_of(conjugate(s, g))] == C.labels[i]);
        }
    }
}

TEST_CASE("order-p subgroups: one class for odd k, two for even k") {
    for (std::uint64_t q : {9u, 25u, 49u})
        CHECK_FALSE(find_subgroup_conjugator(*field(q)).has_value());
    for (std::uint64_t q : {5u, 7u, 11u, 27u}) {
        const auto f = field(q);
        const auto g = find_subgroup_conjugator(*f);
        REQUIRE(g.has_value());
        const auto image = conjugate(*g, order_p_rep(*f));
        bool inside = false;
        for (std::uint32_t i = 1; i < f->p(); ++i)
            inside = inside || image == power(order_p_rep_delta(*f), i);
        CHECK(inside);
    }
}

TEST_CASE("fix sets") {
    CHECK(fix_set(field(7), StabilizerSpec::order_p_full()).size() == 48);
    CHECK(fix_set(field(9), StabilizerSpec::order_p_minus()).size() == 40);
    CHECK(fix_set(field(9), StabilizerSpec::order_p_plus()).size() == 40);
    const auto D = fix_set(field(11), StabilizerSpec::order_r(5, Epsilon::Minus));
    CHECK(D.size() == 264);
    CHECK(D.reps.size() == 2);

    CHECK_THROWS_AS(fix_set(field(9), StabilizerSpec::order_p_full()), InvalidStabilizer);
    CHECK_THROWS_AS(fix_set(field(7), StabilizerSpec::order_p_plus()), InvalidStabilizer);
    CHECK_THROWS_AS(fix_set(field(11), StabilizerSpec::order_r(5, Epsilon::Plus)), InvalidStabilizer);
    CHECK_THROWS_AS(fix_set(field(11), StabilizerSpec::order_r(4, Epsilon::Minus)), InvalidStabilizer);
    CHECK_THROWS_AS(fix_set(field(25), StabilizerSpec::order_r(5, Epsilon::Minus)), InvalidStabilizer);
}

TEST_CASE("order-r representatives") {
    const auto f11 = field(11);
    const auto reps = order_r_representatives(f11, 5, Epsilon::Minus);
    REQUIRE(reps.size() == 2);
    CHECK(reps[0].element == diagonal(*f11, f11->element(2), f11->element(6)));
    CHECK(reps[0].delta == f11->element(8));
    CHECK(reps[1].delta == f11->element(7));

    const auto f9 = field(9);
    const auto plus = order_r_representatives(f9, 5, Epsilon::Plus);
    REQUIRE(plus.size() == 2);
    for (const auto &c : plus)
        CHECK(order(c.element) == 5);

    CHECK(delta_zero(*f11) == f11->element(2));
    for (const auto &c : reps)
        CHECK_FALSE(TracePair::of(delta_zero(*f11)) == c.trace);
}

TEST_CASE("class_id_by_trace") {
    const auto f = field(11);
    const auto reps = order_r_representatives(f, 5, Epsilon::Minus);
    CHECK(class_id_by_trace(diagonal(*f, f->element(2), f->element(6)), reps) == 0u);
    CHECK_FALSE(class_id_by_trace(order_p_rep(*f), reps).has_value());
    std::mt19937_64 rng(1);
    const auto G = enumerate_psl(*f);
    std::uniform_int_distribution<std::size_t> pick(0, G.size() - 1);
    for (int i = 0; i < 50; ++i)
        CHECK(class_id_by_trace(conjugate(G[pick(rng)], power(reps[0].element, 2)), reps) == 1u);
}

TEST_CASE("order-r classes for q <= 49") {
    for (const auto &c : order_r_cases(49)) {
        CAPTURE(c.q);
        CAPTURE(c.r);
        const auto f = field(c.q);
        const auto D = fix_set(f, StabilizerSpec::order_r(c.r, c.eps));
        const std::uint64_t per_class = c.eps == Epsilon::Minus ? c.q * (c.q + 1) : c.q * (c.q - 1);
        REQUIRE(D.reps.size() == (c.r - 1) / 2);
        CHECK(D.size() == per_class * (c.r - 1) / 2);
        for (std::uint32_t i = 0; i < D.reps.size(); ++i) {
            CHECK(D.class_size(i) == per_class);
            CHECK(order(D.reps[i].element) == c.r);
        }
        for (std::size_t i = 0; i < D.size(); ++i) {
            const auto &g = D.elements[i];
            REQUIRE(class_id_by_trace(g, D.reps) == D.labels[i]);
            if (i % 7 == 0)
                CHECK(order(g) == c.r);
        }

        // independent count: scan of all of PSL(2,q) by element order
        if (c.q <= 29) {
            std::size_t by_order = 0;
            for (const auto &g : enumerate_psl(*f))
                by_order += order(g) == c.r;
            CHECK(by_order == D.size());
        }
    }
}

TEST_CASE("fix membership agrees with set lookup") {
    std::mt19937_64 rng(17);
    for (const auto &[q, stab] : std::vector<std::pair<std::uint64_t, StabilizerSpec>>{
             {9, StabilizerSpec::order_p_minus()},
             {25, StabilizerSpec::order_p_plus()},
             {13, StabilizerSpec::order_p_full()},
             {11, StabilizerSpec::order_r(5, Epsilon::Minus)},
             {19, StabilizerSpec::order_r(5, Epsilon::Plus)},
             {27, StabilizerSpec::order_r(7, Epsilon::Plus)}}) {
        const auto f = field(q);
        const auto D = fix_set(f, stab);
        const FixMembership member(D);
        const std::set<ProjMatrix> in(D.elements.begin(), D.elements.end());
        const auto G = enumerate_psl(*f);
        for (const auto &g : G)
            REQUIRE(member.contains(g) == in.contains(g));
        std::uniform_int_distribution<std::size_t> pick(0, G.size() - 1);
        for (int i = 0; i < 2000; ++i) {
            const auto &u = G[pick(rng)], &v = G[pick(rng)];
            if (u == v)
                continue;
            CHECK(member.ratio_in(sl_representative(u), sl_representative(v)) ==
                  in.contains(multiply(u, inverse(v))));
        }
    }
}

TEST_CASE("stabilizer spec parsing") {
    CHECK(StabilizerSpec::parse("p") == StabilizerSpec::order_p_full());
    CHECK(StabilizerSpec::parse("p-minus") == StabilizerSpec::order_p_minus());
    CHECK(StabilizerSpec::parse("r=7,eps=+") == StabilizerSpec::order_r(7, Epsilon::Plus));
    CHECK(StabilizerSpec::parse("r=5,eps=-").label() == "r=5,eps=-");
    for (const char *bad : {"", "q", "r=5", "r=x,eps=+", "r=5,eps=0", "r=5,eps=+-"})
        CHECK_THROWS_AS(StabilizerSpec::parse(bad), std::invalid_argument);
}

TEST_CASE("quadratic extension embedding") {
    for (std::uint64_t q : {7u, 9u, 11u, 27u}) {
        const auto f = field(q);
        const QuadraticExtension ext(f);
        CHECK(ext.big().q() == q * q);
        for (std::uint32_t x = 0; x < q; ++x) {
            const auto ex = f->element(x);
            CHECK(ext.restrict(ext.embed(ex)) == ex);
            CHECK(ext.embed(ex).pow(static_cast<std::int64_t>(q)) == ext.embed(ex));
            for (std::uint32_t y = 0; y < q; y += 3) {
                const auto ey = f->element(y);
                CHECK(ext.embed(ex + ey) == ext.embed(ex) + ext.embed(ey));
                CHECK(ext.embed(ex * ey) == ext.embed(ex) * ext.embed(ey));
            }
        }
        std::size_t fixed = 0;
        for (std::uint32_t y = 0; y < q * q; ++y) {
            const auto e = ext.big().element(y);
            const bool frob_fixed = e.pow(static_cast<std::int64_t>(q)) == e;
            fixed += frob_fixed;
            CHECK(ext.restrict(e).has_value() == frob_fixed);
        }
        CHECK(fixed == q);
    }
}
