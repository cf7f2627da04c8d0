#include <catch2/catch_amalgamated.hpp>

#include "oracles.hpp"

#include "flatchain/coeff.hpp"

#include <random>

using namespace flatchain;

TEST_CASE("group addition examples", "[coeff]") {
    const Group z = Group::integers();
    CHECK((z.element(std::int64_t{2}) + z.element(std::int64_t{-2})).is_zero());

    const Group z2 = Group::cyclic(2);
    CHECK((z2.element(std::int64_t{1}) + z2.element(std::int64_t{1})).is_zero());

    const Group z5 = Group::cyclic(5);
    CHECK((z5.element(std::int64_t{3}) + z5.element(std::int64_t{4})).integer() == 2);
}

TEST_CASE("group norm examples", "[coeff]") {
    CHECK(Group::integers().element(std::int64_t{-3}).norm() == 3.0);
    CHECK(Group::cyclic(5).element(std::int64_t{3}).norm() == 2.0);
    CHECK(Group::reals().zero().norm() == 0.0);
    CHECK(norm(Group::reals().element(-2.5)) == 2.5);
}

TEST_CASE("cyclic representatives are canonical", "[coeff]") {
    const Group z7 = Group::cyclic(7);
    for (std::int64_t k = -30; k <= 30; ++k) {
        const auto g = z7.element(k);
        CHECK(g.integer() >= 0);
        CHECK(g.integer() < 7);
        CHECK(g.integer() == ((k % 7) + 7) % 7);
    }
}

TEST_CASE("cyclic addition tables match modular arithmetic", "[coeff][property]") {
    for (std::int64_t p = 2; p <= 7; ++p) {
        const Group g = Group::cyclic(p);
        for (std::int64_t a = 0; a < p; ++a)
            for (std::int64_t b = 0; b < p; ++b) {
                const auto s = g.element(a) + g.element(b);
                CHECK(s.integer() == (a + b) % p);
                CHECK(s.norm() == static_cast<double>(oracle::cyclic_norm(a + b, p)));
                CHECK((g.element(a) - g.element(b)).integer() == ((a - b) % p + p) % p);
            }
    }
}

TEST_CASE("norm axioms on random pairs", "[coeff][property]") {
    std::mt19937_64 rng(42);
    std::uniform_int_distribution<std::int64_t> ints(-1000, 1000);
    std::uniform_real_distribution<double> reals(-10.0, 10.0);
    for (const Group& g : {Group::integers(), Group::reals(), Group::cyclic(2), Group::cyclic(6), Group::cyclic(11)}) {
        for (int t = 0; t < 1000; ++t) {
            const auto a = g.kind() == GroupKind::Reals ? g.element(reals(rng)) : g.element(ints(rng));
            const auto b = g.kind() == GroupKind::Reals ? g.element(reals(rng)) : g.element(ints(rng));
            REQUIRE((-a).norm() == a.norm());
            REQUIRE((a + b).norm() <= a.norm() + b.norm());
            REQUIRE((a.norm() == 0.0) == a.is_zero());
            REQUIRE(a + b == b + a);
            REQUIRE((a - a).is_zero());
        }
    }
}

TEST_CASE("times and group equality", "[coeff]") {
    const Group z3 = Group::cyclic(3);
    CHECK(z3.element(std::int64_t{2}).times(2).integer() == 1);
    CHECK(Group::integers().element(std::int64_t{4}).times(-3).integer() == -12);
    CHECK(Group::cyclic(3) == Group::cyclic(3));
    CHECK_FALSE(Group::cyclic(3) == Group::cyclic(5));
    CHECK_FALSE(Group::integers() == Group::reals());
    CHECK(Group::cyclic(4).name() == "Z_4");
}

TEST_CASE("invalid coefficients are rejected", "[coeff]") {
    CHECK_THROWS_AS(Group::cyclic(1), std::invalid_argument);
    CHECK_THROWS_AS(Group::integers().element(0.5), std::invalid_argument);
    CHECK_THROWS_AS(Group::integers().element(std::int64_t{1}) + Group::reals().element(1.0), std::invalid_argument);
    CHECK(Group::cyclic(3).element(4.0).integer() == 1);
}
