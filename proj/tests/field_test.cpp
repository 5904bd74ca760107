#include "oracles.hpp"

#include "psld/field.hpp"

#include <doctest.h>

#include <random>

using namespace psld;

namespace {

std::vector<std::pair<std::uint32_t, std::uint32_t>> small_fields() {
    return {{3, 1}, {5, 1}, {7, 1}, {11, 1}, {3, 2}, {5, 2}, {7, 2}, {3, 3}, {3, 4}, {5, 3}, {13, 1}};
}

} // namespace

TEST_CASE("moduli are the smallest irreducibles") {
    for (auto [p, k] : small_fields()) {
        CAPTURE(p);
        CAPTURE(k);
        const auto f = make_field(p, k);
        CHECK(f->q() == oracle::ipow(p, k));
        if (k > 1)
            CHECK(f->modulus() == oracle::smallest_irreducible(p, k));
    }
    CHECK(make_field(3, 2)->modulus() == std::vector<std::uint32_t>{1, 0, 1});
    CHECK(make_field(5, 2)->modulus() == std::vector<std::uint32_t>{2, 0, 1});
    CHECK(make_field(7, 1)->q() == 7);
}

TEST_CASE("make_field rejects bad input") {
    CHECK_THROWS_AS(make_field(9, 1), FieldError);
    CHECK_THROWS_AS(make_field(2, 3), FieldError);
    CHECK_THROWS_AS(make_field(3, 0), FieldError);
    CHECK_THROWS_AS(make_field(101, 2), FieldError);
    CHECK_NOTHROW(make_field(101, 2, 20000));
}

TEST_CASE("arithmetic agrees with schoolbook polynomials") {
    for (auto [p, k] : small_fields()) {
        const auto f = make_field(p, k);
        const oracle::NaiveField n(p, k);
        CAPTURE(f->name());
        for (std::uint32_t x = 0; x < f->q(); ++x)
            for (std::uint32_t y = 0; y < f->q(); ++y) {
                REQUIRE(f->add(x, y) == n.add(x, y));
                REQUIRE(f->mul(x, y) == n.mul(x, y));
                REQUIRE(f->sub(x, y) == n.sub(x, y));
            }
        for (std::uint32_t x = 1; x < f->q(); ++x) {
            CHECK(f->inv(x) == n.inv(x));
            CHECK(f->order(x) == n.order(x));
        }
    }
}

TEST_CASE("field axioms on random triples") {
    std::mt19937_64 rng(7);
    for (auto [p, k] : small_fields()) {
        const auto f = make_field(p, k);
        std::uniform_int_distribution<std::uint32_t> pick(0, f->q() - 1);
        for (int i = 0; i < 500; ++i) {
            const auto x = f->element(pick(rng)), y = f->element(pick(rng)), z = f->element(pick(rng));
            CHECK((x + y) + z == x + (y + z));
            CHECK((x * y) * z == x * (y * z));
            CHECK(x * (y + z) == x * y + x * z);
            if (!x.is_zero()) {
                CHECK(x * x.inv() == f->one());
                CHECK(x.pow(-3) * x.pow(3) == f->one());
            }
        }
    }
}

TEST_CASE("documented small values") {
    const auto f7 = make_field(7, 1);
    CHECK(f7->element(3).inv() == f7->element(5));
    CHECK(f7->element(4).pow(0) == f7->one());
    CHECK(is_square(f7->element(2)));
    CHECK_FALSE(is_square(f7->element(3)));
    CHECK(is_square(f7->zero()));
    CHECK(f7->primitive_element() == f7->element(3));
    CHECK(f7->nonsquare_delta() == f7->element(3));
    CHECK(f7->element_of_order(1) == f7->one());
    CHECK(sqrt(f7->element(2)) == f7->element(3));
    CHECK_FALSE(sqrt(f7->element(3)).has_value());
    CHECK(sqrt(f7->zero()) == f7->zero());

    const auto f9 = make_field(3, 2);
    const auto x = f9->element(3);
    CHECK(x * x == f9->element(2));
    CHECK(f9->primitive_element() == f9->element(4)); // x + 1
    // x squares to -1, so x has order 4 and is itself a square; the first
    // nonsquare outside F_3 is x + 1.
    CHECK(is_square(x));
    CHECK(f9->nonsquare_delta() == f9->element(4));

    const auto f11 = make_field(11, 1);
    CHECK(f11->primitive_element() == f11->element(2));
    CHECK(f11->element_of_order(10) == f11->element(2));
    CHECK(f11->element_of_order(2) == f11->element(10));
    CHECK_THROWS_AS((void)f11->element_of_order(3), FieldError);

    const auto f5 = make_field(5, 1);
    CHECK(f5->nonsquare_delta() == f5->element(2));
}

TEST_CASE("mixed fields and zero inverse are errors") {
    const auto a = make_field(7, 1), b = make_field(7, 1);
    CHECK_THROWS_AS((void)(a->one() + b->one()), FieldError);
    CHECK_THROWS_AS((void)a->zero().inv(), FieldError);
    CHECK_THROWS_AS((void)a->zero().pow(-1), FieldError);
}

TEST_CASE("square roots and primitive elements against brute force") {
    for (auto [p, k] : small_fields()) {
        const auto f = make_field(p, k);
        const oracle::NaiveField n(p, k);
        const auto sq = n.squares();
        std::uint32_t first_primitive = 0;
        for (std::uint32_t y = 1; y < f->q() && first_primitive == 0; ++y)
            if (n.order(y) == f->q() - 1)
                first_primitive = y;
        CHECK(f->primitive_element().index() == first_primitive);
        for (std::uint32_t y = 0; y < f->q(); ++y) {
            const auto e = f->element(y);
            CHECK(is_square(e) == sq[y]);
            const auto root = sqrt(e);
            REQUIRE(root.has_value() == sq[y]);
            if (root) {
                CHECK(*root * *root == e);
                CHECK(root->index() <= (-*root).index());
            }
        }
    }
}

TEST_CASE("nonsquare delta respects the subfield rule") {
    for (auto [p, k] : small_fields()) {
        const auto f = make_field(p, k);
        const auto d = f->nonsquare_delta();
        CHECK_FALSE(is_square(d));
        CHECK(f->in_prime_subfield(d.index()) == (k % 2 == 1));
        for (std::uint32_t y = 0; y < d.index(); ++y)
            if (f->in_prime_subfield(y) == (k % 2 == 1))
                CHECK(is_square(f->element(y)));
    }
}

TEST_CASE("element_of_order has exact order") {
    for (auto [p, k] : small_fields()) {
        const auto f = make_field(p, k);
        for (std::uint64_t n = 1; n <= f->q() - 1; ++n)
            if ((f->q() - 1) % n == 0) {
                const auto e = f->element_of_order(n);
                std::uint64_t ord = 1;
                for (auto y = e; !y.is_one(); y *= e)
                    ++ord;
                CHECK(ord == n);
            }
    }
}

TEST_CASE("square counts for every odd q up to 1000") {
    for (std::uint64_t q = 3; q <= 1000; q += 2) {
        const auto pk = prime_power(q);
        if (!pk)
            continue;
        const auto f = make_field(pk->first, pk->second);
        std::size_t squares = 0, shifted = 0;
        for (std::uint32_t x = 0; x < f->q(); ++x) {
            const auto e = f->element(x);
            squares += is_square(e);
            shifted += is_square(e * e - f->one());
        }
        CAPTURE(q);
        CHECK(squares == (q + 1) / 2);
        CHECK(shifted == (q + 1) / 2);
    }
}

TEST_CASE("prime helpers") {
    CHECK(prime_power(81) == std::pair<std::uint32_t, std::uint32_t>{3, 4});
    CHECK_FALSE(prime_power(45).has_value());
    CHECK_FALSE(prime_power(1).has_value());
    CHECK(is_prime(97));
    CHECK_FALSE(is_prime(91));
    CHECK(prime_factors(360) == std::vector<std::uint64_t>{2, 3, 5});
}
