#include <catch2/catch_amalgamated.hpp>

#include "oracles.hpp"
#include "unit/scenes.hpp"

#include "flatchain/dictionary.hpp"
#include "flatchain/grassmann.hpp"

#include <cmath>
#include <numbers>
#include <random>

using namespace flatchain;
using Catch::Approx;
using scenes::pt;

namespace {

Plane random_plane(int n, int d, std::mt19937_64& rng) {
    std::normal_distribution<double> g;
    Eigen::MatrixXd m(n, d);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < d; ++j) m(i, j) = g(rng);
    return Plane::from_spanning(m);
}

Plane line(double theta) {
    Eigen::MatrixXd m(2, 1);
    m << std::cos(theta), std::sin(theta);
    return Plane::from_spanning(m);
}

}  // namespace

TEST_CASE("projector invariants", "[grassmann][property]") {
    std::mt19937_64 rng(21);
    for (int t = 0; t < 50; ++t) {
        const int n = 2 + t % 4;
        const int d = 1 + t % n;
        const Plane p = random_plane(n, d, rng);
        const auto& pr = p.projector();
        CHECK((pr * pr - pr).norm() <= 1e-10);
        CHECK((pr.transpose() - pr).norm() <= 1e-10);
        CHECK(std::abs(pr.trace() - d) <= 1e-10);
        CHECK((p.basis().transpose() * p.basis() - Eigen::MatrixXd::Identity(d, d)).norm() <= 1e-10);
    }
}

TEST_CASE("grassmann distance examples", "[grassmann]") {
    const Plane x = line(0.0);
    CHECK(grassmann_dist(x, x) == 0.0);
    CHECK(grassmann_dist(x, line(std::numbers::pi / 2)) == Approx(1.0).epsilon(1e-12));
    for (double theta : {std::numbers::pi / 6, std::numbers::pi / 4, std::numbers::pi / 3, 2.5})
        CHECK(std::abs(grassmann_dist(x, line(theta)) - oracle::line_distance(theta)) <= 1e-9);
    CHECK(grassmann_dist(Plane::coordinate(3, {0, 1}), Plane::coordinate(3, {0, 2})) == Approx(1.0));
    CHECK_THROWS(grassmann_dist(Plane::coordinate(3, {0}), Plane::coordinate(3, {0, 1})));
}

TEST_CASE("grassmann distance is a metric", "[grassmann][property]") {
    std::mt19937_64 rng(22);
    for (int t = 0; t < 100; ++t) {
        const int n = 2 + t % 3;
        const int d = 1 + t % (n - 1);
        const Plane a = random_plane(n, d, rng), b = random_plane(n, d, rng), c = random_plane(n, d, rng);
        CHECK(grassmann_dist(a, a) <= 1e-9);
        CHECK(std::abs(grassmann_dist(a, b) - grassmann_dist(b, a)) <= 1e-9);
        CHECK(grassmann_dist(a, c) <= grassmann_dist(a, b) + grassmann_dist(b, c) + 1e-9);
        CHECK(grassmann_dist(a, b) <= 1.0 + 1e-12);
    }
}

TEST_CASE("plane construction", "[grassmann]") {
    Eigen::MatrixXd dependent(3, 2);
    dependent << 1, 2, 1, 2, 0, 0;
    CHECK_THROWS_AS(Plane::from_spanning(dependent), std::invalid_argument);
    CHECK_FALSE(Plane::try_from_spanning(dependent).has_value());
    Eigen::MatrixXd skew(2, 1);
    skew << 3, 4;
    const Plane p = Plane::from_spanning(skew);
    CHECK(p.dim() == 1);
    CHECK(p.ambient_dim() == 2);
    CHECK(grassmann_dist(p, line(std::atan2(4.0, 3.0))) <= 1e-12);
    CHECK(Plane::zero(3).dim() == 0);
    CHECK(Plane::zero(3).projector().norm() == 0.0);
}

TEST_CASE("volume factor", "[grassmann]") {
    Eigen::MatrixXd m(2, 2);
    m << 2, 0, 0, 3;
    CHECK(volume_factor(m) == Approx(6.0));
    Eigen::MatrixXd v(3, 1);
    v << 1, 2, 2;
    CHECK(volume_factor(v) == Approx(3.0));
    CHECK(volume_factor(Eigen::MatrixXd(3, 0)) == 1.0);
}

TEST_CASE("standard dictionary", "[dictionary]") {
    const auto dict = TestDictionary::standard(2, 1);
    CHECK(dict.size() == 150);
    CHECK(dict.spatial().size() == 25);
    CHECK(dict.support_radius() == Approx(2.0 * std::sqrt(2.0) + 1.0));
    CHECK(TestDictionary::standard(2, 2).size() == 25);
    CHECK(TestDictionary::standard(1, 1).size() == 5);
    CHECK_THROWS(TestDictionary::by_name("nope", 2, 1));
    CHECK(TestDictionary::by_name("tents", 2, 1).size() > 0);
}

TEST_CASE("dictionary functions respect their sup norms and supports", "[dictionary][property]") {
    std::mt19937_64 rng(23);
    std::uniform_real_distribution<double> u(-4.0, 4.0);
    for (const auto& [n, d] : {std::pair{2, 1}, std::pair{3, 1}, std::pair{3, 2}}) {
        const auto dict = TestDictionary::standard(n, d);
        for (int t = 0; t < 200; ++t) {
            Point x(n);
            for (int i = 0; i < n; ++i) x[i] = u(rng);
            const Plane p = random_plane(n, d, rng);
            for (const auto& phi : dict.functions()) {
                const double v = phi(x, p);
                REQUIRE(std::abs(v) <= phi.sup_norm(n, d) + 1e-12);
                if ((x - phi.center).norm() >= phi.radius) REQUIRE(v == 0.0);
            }
        }
    }
}

TEST_CASE("spatial lipschitz constants", "[dictionary][property]") {
    std::mt19937_64 rng(24);
    std::uniform_real_distribution<double> u(-1.5, 1.5);
    const auto dict = TestDictionary::standard(2, 1).spatial();
    const auto tents = TestDictionary::tents({pt({0, 0})}, 0.5, 2, 1);
    for (const auto* dd : {&dict, &tents}) {
        for (const auto& phi : dd->functions()) {
            for (int t = 0; t < 200; ++t) {
                const Point a = pt({u(rng), u(rng)}), b = pt({u(rng), u(rng)});
                REQUIRE(std::abs(phi.spatial(a) - phi.spatial(b)) <= phi.lipschitz_x() * (a - b).norm() + 1e-12);
            }
        }
    }
}

TEST_CASE("distance factor vanishes on its reference plane", "[dictionary]") {
    const auto dict = TestDictionary::standard(2, 1);
    const Plane x_axis = Plane::coordinate(2, {0});
    int checked = 0;
    for (const auto& phi : dict.functions()) {
        if (phi.factor.kind != PlaneFactor::Kind::DistanceToReference) continue;
        const double at_center = phi(phi.center, x_axis);
        const double on_perp = phi(phi.center, Plane::coordinate(2, {1}));
        CHECK(std::min(at_center, on_perp) == Approx(0.0).margin(1e-15));
        CHECK(std::max(at_center, on_perp) == Approx(1.0));
        ++checked;
    }
    CHECK(checked == 50);
}
