#include "oracles.hpp"

#include "psld/classes.hpp"
#include "psld/projective.hpp"

#include <doctest.h>

#include <random>
#include <set>
#include <unordered_set>

using namespace psld;

namespace {

ProjMatrix random_pgl(const Field &f, std::mt19937_64 &rng) {
    std::uniform_int_distribution<std::uint32_t> pick(0, f.q() - 1);
    for (;;) {
        const std::uint32_t a = pick(rng), b = pick(rng), c = pick(rng), d = pick(rng);
        if (f.sub(f.mul(a, d), f.mul(b, c)) != 0)
            return ProjMatrix::normalize(f, a, b, c, d);
    }
}

ProjMatrix random_psl(const Field &f, std::mt19937_64 &rng) {
    for (;;) {
        const auto g = random_pgl(f, rng);
        if (in_psl(g))
            return g;
    }
}

std::size_t closure_size(const std::vector<ProjMatrix> &gens) {
    const Field &f = gens.front().field();
    std::unordered_set<ProjMatrix, ProjMatrixHash> seen{ProjMatrix::identity(f)};
    std::vector<ProjMatrix> frontier{ProjMatrix::identity(f)};
    while (!frontier.empty()) {
        std::vector<ProjMatrix> next;
        for (const auto &x : frontier)
            for (const auto &g : gens) {
                const auto y = multiply(x, g);
                if (seen.insert(y).second)
                    next.push_back(y);
            }
        frontier = std::move(next);
    }
    return seen.size();
}

} // namespace

TEST_CASE("normalize scales the first nonzero entry to one") {
    const auto f = make_field(7, 1);
    CHECK(ProjMatrix::normalize(*f, 2, 0, 0, 2).is_identity());
    const auto g = ProjMatrix::normalize(*f, 0, 3, 5, 0);
    CHECK(g.entries() == std::array<std::uint32_t, 4>{0, 1, 4, 0});
    const auto r = ProjMatrix::normalize(*f, 1, 1, 0, 1);
    CHECK(r == order_p_rep(*f));
    CHECK(ProjMatrix::normalize(r.raw()) == r);
    CHECK_THROWS_AS(ProjMatrix::normalize(*f, 1, 2, 3, 6), FieldError);
}

TEST_CASE("normalize ignores scalar multiples") {
    std::mt19937_64 rng(11);
    for (auto [p, k] : {std::pair{7u, 1u}, {3u, 2u}, {5u, 2u}, {13u, 1u}}) {
        const auto f = make_field(p, k);
        std::uniform_int_distribution<std::uint32_t> pick(1, f->q() - 1);
        for (int i = 0; i < 200; ++i) {
            const auto g = random_pgl(*f, rng);
            const auto s = f->element(pick(rng));
            const Mat2 m = g.raw();
            CHECK(ProjMatrix::normalize(Mat2{m.a * s, m.b * s, m.c * s, m.d * s}) == g);
        }
    }
}

TEST_CASE("group operations") {
    std::mt19937_64 rng(3);
    const auto f = make_field(3, 3);
    const auto id = ProjMatrix::identity(*f);
    for (int i = 0; i < 200; ++i) {
        const auto g = random_pgl(*f, rng), h = random_pgl(*f, rng), m = random_pgl(*f, rng);
        CHECK(multiply(g, inverse(g)).is_identity());
        CHECK(multiply(multiply(g, h), m) == multiply(g, multiply(h, m)));
        CHECK(conjugate(id, m) == m);
        CHECK(conjugate(g, m) == multiply(multiply(g, m), inverse(g)));
        CHECK(power(g, 5) == multiply(power(g, 2), power(g, 3)));
        CHECK(power(g, -1) == inverse(g));
    }
}

TEST_CASE("conjugating R gives the closed form") {
    const auto f = make_field(13, 1);
    const Field &F = *f;
    const auto R = order_p_rep(F);
    std::mt19937_64 rng(5);
    std::uniform_int_distribution<std::uint32_t> pick(0, F.q() - 1);
    for (int i = 0; i < 200; ++i) {
        const std::uint32_t x = pick(rng), y = pick(rng), z = pick(rng);
        if (x == 0)
            continue;
        // choose w so that xw - yz = 1
        const std::uint32_t w = F.mul(F.add(1, F.mul(y, z)), F.inv(x));
        const auto g = ProjMatrix::normalize(F, x, y, z, w);
        const std::uint32_t xz = F.mul(x, z);
        const auto want = ProjMatrix::normalize(F, F.sub(1, xz), F.mul(x, x), F.neg(F.mul(z, z)), F.add(1, xz));
        CHECK(conjugate(g, R) == want);
    }
}

TEST_CASE("psl membership, traces and orders on documented elements") {
    const auto f7 = make_field(7, 1);
    const auto id = ProjMatrix::identity(*f7);
    const auto R = order_p_rep(*f7);
    CHECK(in_psl(id));
    CHECK(in_psl(R));
    CHECK_FALSE(in_psl(diagonal(*f7, f7->one(), f7->element(3))));
    CHECK(trace_pair(R).t == f7->element(2));
    CHECK(trace_pair(id).t == f7->element(2));
    CHECK(trace_pair(ProjMatrix::normalize(*f7, 0, 1, 6, 0)).t == f7->zero());
    CHECK_THROWS_AS((void)trace_pair(diagonal(*f7, f7->one(), f7->element(3))), FieldError);
    CHECK(order(id) == 1);
    CHECK(order(R) == 7);
    CHECK(has_order_p(R));
    CHECK_FALSE(has_order_p(id));

    const auto f11 = make_field(11, 1);
    const auto a = f11->element_of_order(10);
    const auto d = diagonal(*f11, a, a.inv());
    CHECK(order(d) == 5);
    CHECK_FALSE(has_order_p(d));
    CHECK(trace_pair(d).t == TracePair::of(f11->element(8)).t);
}

TEST_CASE("class functions under conjugation") {
    std::mt19937_64 rng(19);
    for (auto [p, k] : {std::pair{7u, 1u}, {3u, 2u}, {5u, 2u}, {11u, 1u}, {3u, 3u}}) {
        const auto f = make_field(p, k);
        for (int i = 0; i < 300; ++i) {
            const auto g = random_pgl(*f, rng), h = random_pgl(*f, rng), m = random_psl(*f, rng);
            CHECK(in_psl(conjugate(g, m)));
            CHECK(trace_pair(conjugate(g, m)) == trace_pair(m));
            CHECK(trace_invariant(conjugate(g, h)) == trace_invariant(h));
            CHECK(in_psl(conjugate(g, h)) == in_psl(h));
            CHECK(in_psl(multiply(g, h)) == (in_psl(g) == in_psl(h)));
        }
    }
}

TEST_CASE("standard generators generate PSL(2,q)") {
    CHECK(closure_size(standard_generators(*make_field(5, 1))) == 60);
    CHECK(closure_size(standard_generators(*make_field(7, 1))) == 168);
    CHECK(closure_size(standard_generators(*make_field(3, 2))) == 360);
    CHECK(closure_size(standard_generators(*make_field(5, 2))) == 7800);
    CHECK(closure_size(standard_generators(*make_field(3, 3))) == 9828);
}

TEST_CASE("PSL enumeration and element orders against naive matrices") {
    for (auto [p, k] : {std::pair{3u, 1u}, {5u, 1u}, {7u, 1u}, {3u, 2u}, {11u, 1u}, {13u, 1u}, {5u, 2u}}) {
        const auto f = make_field(p, k);
        const oracle::NaiveField n(p, k);
        const auto G = enumerate_psl(*f);
        const std::uint64_t q = f->q();
        CHECK(G.size() == q * (q * q - 1) / 2);
        CHECK(std::set<ProjMatrix>(G.begin(), G.end()).size() == G.size());
        for (const auto &g : G) {
            const auto &e = g.entries();
            REQUIRE(order(g) == oracle::projective_order(n, {e[0], e[1], e[2], e[3]}));
        }
    }
}

TEST_CASE("trace criterion matches direct order on all of PSL(2,q), q <= 49") {
    for (std::uint64_t q = 3; q <= 49; q += 2) {
        const auto pk = prime_power(q);
        if (!pk)
            continue;
        const auto f = make_field(pk->first, pk->second);
        std::size_t order_p = 0;
        for (const auto &g : enumerate_psl(*f)) {
            const bool by_order = order(g) == f->p();
            REQUIRE(has_order_p(g) == by_order);
            order_p += by_order;
        }
        CAPTURE(q);
        CHECK(order_p == q * q - 1);
    }
}

TEST_CASE("unipotent square classes") {
    const auto f = make_field(5, 2);
    CHECK(unipotent_in_square_class(order_p_rep(*f)));
    CHECK_FALSE(unipotent_in_square_class(order_p_rep_delta(*f)));
    std::mt19937_64 rng(23);
    for (int i = 0; i < 100; ++i) {
        const auto g = random_psl(*f, rng);
        CHECK(unipotent_in_square_class(conjugate(g, order_p_rep(*f))));
        CHECK_FALSE(unipotent_in_square_class(conjugate(g, order_p_rep_delta(*f))));
    }
}

TEST_CASE("SL representatives round-trip") {
    std::mt19937_64 rng(29);
    const auto f = make_field(7, 2);
    for (int i = 0; i < 200; ++i) {
        const auto g = random_psl(*f, rng);
        const SlMatrix s = sl_representative(g);
        CHECK(f->sub(f->mul(s.a, s.d), f->mul(s.b, s.c)) == 1);
        CHECK(from_sl(*f, s) == g);
    }
}
