#include "oracles.hpp"

#include "flatchain/flatnorm.hpp"
#include "flatchain/grassmann.hpp"
#include "flatchain/harness.hpp"
#include "flatchain/lipmap.hpp"
#include "flatchain/varifold.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

using namespace flatchain;

namespace {

struct Outcome {
    bool passed = true;
    std::string detail;

    void require(bool ok, const std::string& what) {
        if (!ok) {
            if (passed) detail = what;
            passed = false;
        }
    }
};

std::string num(double v) {
    char buf[48];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

class Stopwatch {
public:
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
    }

private:
    std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

// Triangulated grid of nx x ny cells over [x0, x0 + nx h] x [y0, y0 + ny h],
// interior vertices jittered by up to `jitter` h.
ComplexPtr grid(int nx, int ny, double h, double x0, double y0, double jitter, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(-jitter, jitter);
    std::vector<Point> verts;
    for (int j = 0; j <= ny; ++j)
        for (int i = 0; i <= nx; ++i) {
            Point p(2);
            const bool interior = i > 0 && i < nx && j > 0 && j < ny;
            p << x0 + h * (i + (interior ? u(rng) : 0.0)), y0 + h * (j + (interior ? u(rng) : 0.0));
            verts.push_back(p);
        }
    auto id = [nx](int i, int j) { return j * (nx + 1) + i; };
    std::vector<std::vector<int>> tris;
    for (int j = 0; j < ny; ++j)
        for (int i = 0; i < nx; ++i) {
            tris.push_back({id(i, j), id(i + 1, j), id(i + 1, j + 1)});
            tris.push_back({id(i, j), id(i, j + 1), id(i + 1, j + 1)});
        }
    return Complex::create(2, std::move(verts), {{}, {}, tris});
}

std::vector<oracle::Vec> oracle_vertices(const Complex& k) {
    return {k.vertices().begin(), k.vertices().end()};
}

std::vector<std::vector<int>> vertex_lists(const Complex& k, int d) {
    std::vector<std::vector<int>> out;
    for (const auto& s : k.simplices(d)) out.push_back(s.vertices);
    return out;
}

LipMap random_map(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    switch (rng() % 5) {
    case 0: return LipMap::scale(2, 0.5 + 1.5 * u(rng));
    case 1: return LipMap::rotation(2, 2.0 * std::numbers::pi * u(rng));
    case 2: return LipMap::polar_wrap();
    case 3: return LipMap::fold(2.0 * u(rng) - 1.0);
    default: {
        std::array<double, 6> c{};
        for (auto& x : c) x = 0.3 * (2.0 * u(rng) - 1.0);
        return LipMap::poly(c);
    }
    }
}

Outcome norm_axioms() {
    Outcome o;
    Stopwatch sw;
    std::mt19937_64 rng(1);
    std::uniform_int_distribution<std::int64_t> ints(-50, 50);
    std::uniform_real_distribution<double> reals(-50.0, 50.0);
    const std::vector<Group> groups{Group::integers(), Group::reals(), Group::cyclic(2), Group::cyclic(3),
                                    Group::cyclic(5), Group::cyclic(7)};
    for (const auto& g : groups) {
        o.require(g.zero().norm() == 0.0, g.name() + ": |0| != 0");
        auto draw = [&] { return g.kind() == GroupKind::Reals ? g.element(reals(rng)) : g.element(ints(rng)); };
        for (int t = 0; t < 1000; ++t) {
            const auto a = draw(), b = draw(), c = draw();
            for (const auto& x : {a, b, c}) {
                o.require(x.norm() >= 0.0, g.name() + ": negative norm");
                o.require((x.norm() == 0.0) == x.is_zero(), g.name() + ": |g| = 0 without g = 0");
                o.require((-x).norm() == x.norm(), g.name() + ": |-g| != |g|");
            }
            o.require((a + b).norm() <= a.norm() + b.norm() + 1e-12, g.name() + ": triangle inequality");
            o.require(((a + b) + c - (a + (b + c))).norm() <= 1e-12, g.name() + ": associativity");
            if (g.kind() == GroupKind::CyclicMod)
                o.require(a.norm() == static_cast<double>(oracle::cyclic_norm(a.integer(), g.modulus())),
                          g.name() + ": geodesic norm");
        }
    }
    const double t = sw.seconds();
    o.require(t < 1.0, "took " + num(t) + " s");
    if (o.passed) o.detail = "6 groups x 1000 triples in " + num(t) + " s";
    return o;
}

Outcome z2_relaxation_vs_enumeration() {
    Outcome o;
    Stopwatch sw;
    std::mt19937_64 rng(2);
    const std::pair<int, int> shapes[] = {{1, 1}, {1, 2}, {2, 2}, {1, 3}, {2, 3}, {3, 2}, {1, 6}};
    int integral = 0;
    double worst_gap = 0.0;
    for (int trial = 0; trial < 20; ++trial) {
        const auto [nx, ny] = shapes[rng() % std::size(shapes)];
        const auto k = grid(nx, ny, 1.0, 0.0, 0.0, 0.2, rng);
        Chain p(k, 1, Group::cyclic(2));
        std::vector<int> support;
        for (std::size_t e = 0; e < k->count(1); ++e)
            if (rng() % 5 < 2) {
                p.add(static_cast<int>(e), 1.0);
                support.push_back(static_cast<int>(e));
            }
        FlatNormOptions brute_opts, lp_opts;
        brute_opts.method = MethodChoice::BruteForce;
        lp_opts.method = MethodChoice::LinearProgram;
        const auto brute = flat_norm(p, brute_opts);
        const auto lp = flat_norm(p, lp_opts);
        const double reference =
            oracle::z2_flat_norm(oracle_vertices(*k), vertex_lists(*k, 1), vertex_lists(*k, 2), support);
        const std::string tag = "trial " + std::to_string(trial) + ": ";
        o.require(std::abs(brute.value - reference) <= 1e-9,
                  tag + "enumeration " + num(brute.value) + " vs oracle " + num(reference));
        o.require(brute.report.residual <= 1e-9, tag + "enumeration residual " + num(brute.report.residual));
        o.require(lp.report.lower_bound <= brute.value + 1e-9,
                  tag + "relaxation " + num(lp.report.lower_bound) + " above " + num(brute.value));
        if (lp.report.relaxation_integral) {
            ++integral;
            o.require(std::abs(lp.value - brute.value) <= 1e-9,
                      tag + "integral relaxation " + num(lp.value) + " vs " + num(brute.value));
        }
        worst_gap = std::max(worst_gap, brute.value - lp.report.lower_bound);
    }
    const double t = sw.seconds();
    o.require(t < 60.0, "took " + num(t) + " s");
    if (o.passed)
        o.detail = "20 chains, " + std::to_string(integral) + " integral relaxations, max gap " + num(worst_gap) +
                   ", " + num(t) + " s";
    return o;
}

Outcome unit_square() {
    Outcome o;
    std::vector<Point> v(4, Point(2));
    v[0] << 0, 0;
    v[1] << 1, 0;
    v[2] << 1, 1;
    v[3] << 0, 1;
    const auto k = Complex::create(2, v, {{}, {}, {{0, 1, 2}, {0, 2, 3}}});
    const auto p = boundary(Chain::fundamental(k, 2, Group::cyclic(2)));
    FlatNormOptions opts;
    opts.method = MethodChoice::BruteForce;
    const auto r = flat_norm(p, opts);
    o.require(r.report.method == SolverMethod::BruteForce, "solver was not enumeration");
    o.require(r.value == 1.0, "value " + num(r.value));
    o.require(mass(p) == 4.0, "boundary mass " + num(mass(p)));
    if (o.passed) o.detail = "fn = " + num(r.value);
    return o;
}

Outcome escaping_rectangle() {
    Outcome o;
    RunConfig c;
    c.scenario = "escaping_rectangle";
    c.m_first = 1;
    c.m_last = 12;
    const auto rep = run(c);
    const auto dict = TestDictionary::by_name(c.dictionary, 2, 1);
    for (const auto& r : rep.rows) {
        const std::string tag = "m=" + std::to_string(r.m) + ": ";
        o.require(std::abs(r.mass - (2.0 + 2.0 / r.m)) <= 1e-9, tag + "mass " + num(r.mass));
        o.require(r.flat <= 1.0 / r.m + 1e-9, tag + "fn " + num(r.flat));
        if (r.m >= dict.support_radius()) o.require(r.var_distance <= 1e-12, tag + "var " + num(r.var_distance));
    }
    const auto& last = rep.rows.back();
    o.require(last.m == 12 && std::abs(last.mass - 2.0) <= 0.17, "m=12 mass " + num(last.mass));
    if (o.passed) o.detail = "mass(12) = " + num(last.mass) + ", fn(12) = " + num(last.flat);
    return o;
}

Outcome annulus() {
    Outcome o;
    Stopwatch sw;
    RunConfig c;
    c.scenario = "annulus";
    c.m_first = 2;
    c.m_last = 10;
    const auto rep = run(c);
    std::vector<double> ms, vars;
    for (const auto& r : rep.rows) {
        const double bound = 0.5 * std::numbers::pi * (2.0 / (r.m * r.m) + 1.0 / std::pow(r.m, 4)) * 1.05;
        o.require(r.flat <= bound, "m=" + std::to_string(r.m) + ": fn " + num(r.flat) + " > " + num(bound));
        o.require(std::abs(bound / 1.05 - oracle::annulus_sector_area(r.m)) <= 1e-12, "sector area formula");
        if (r.m >= 4) {
            ms.push_back(r.m);
            vars.push_back(r.var_distance);
        }
    }
    for (std::size_t i = 1; i < rep.rows.size(); ++i)
        o.require(rep.rows[i].flat < rep.rows[i - 1].flat, "fn not decreasing at m=" + std::to_string(rep.rows[i].m));
    const double rho = spearman(ms, vars);
    o.require(rho <= -0.9, "spearman " + num(rho));
    o.require(vars.back() <= 0.05, "final var distance " + num(vars.back()));
    const double t = sw.seconds();
    o.require(t < 300.0, "took " + num(t) + " s");
    if (o.passed)
        o.detail = "fn(10) = " + num(rep.rows.back().flat) + ", rho = " + num(rho) + ", var(10) = " + num(vars.back()) +
                   ", " + num(t) + " s";
    return o;
}

// Criteria 6 and 7 share one run.
const ConvergenceReport& circle_report() {
    static const ConvergenceReport rep = [] {
        RunConfig c;
        c.scenario = "polygonal_circle";
        c.m_first = 3;
        c.m_last = 9;
        return run(c);
    }();
    return rep;
}

Outcome polygonal_circle() {
    Outcome o;
    const auto& rows = circle_report().rows;
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const auto& r = rows[i];
        const std::string tag = "m=" + std::to_string(r.m) + ": ";
        o.require(std::abs(r.mass - oracle::inscribed_perimeter(std::pow(2.0, r.m))) <= 1e-9, tag + "perimeter");
        if (i > 0) {
            o.require(r.flat < rows[i - 1].flat, tag + "fn not decreasing");
            o.require(r.var_distance < rows[i - 1].var_distance, tag + "var distance not decreasing");
        }
    }
    const auto& last = rows.back();
    o.require(last.flat <= 1e-2, "fn(P_9 - S) = " + num(last.flat));
    o.require(std::abs(last.mass - 2.0 * std::numbers::pi) <= 1e-3, "mass(P_9) = " + num(last.mass));
    o.require(last.var_distance <= 2e-2, "var distance " + num(last.var_distance));
    if (o.passed)
        o.detail = "fn(9) = " + num(last.flat) + ", mass(9) = " + num(last.mass) + ", var(9) = " + num(last.var_distance);
    return o;
}

Outcome circle_measures() {
    Outcome o;
    const auto& rows = circle_report().rows;
    for (std::size_t i = 1; i < rows.size(); ++i)
        o.require(rows[i].measure_distance < rows[i - 1].measure_distance,
                  "not decreasing at m=" + std::to_string(rows[i].m));
    o.require(rows.back().measure_distance <= 2e-2, "final " + num(rows.back().measure_distance));
    if (o.passed) o.detail = "final " + num(rows.back().measure_distance);
    return o;
}

Outcome shear_jacobian() {
    Outcome o;
    Stopwatch sw;
    std::vector<Point> v(3, Point(2));
    v[0] << 0, 0;
    v[1] << 1, 0;
    v[2] << 0, 1;
    const auto k = Complex::create(2, v, {{}, {}, {{0, 1, 2}}});
    const auto f = LipMap::poly({0.0, 0.0, 0.0, 0.5, 0.0, 0.0});
    std::vector<double> errs;
    for (int level = 0; level <= 8; ++level) errs.push_back(jacobian_l1_error(f, k, level));
    for (std::size_t i = 2; i < errs.size(); ++i)
        o.require(errs[i] <= errs[i - 1], "increase at k=" + std::to_string(i) + ": " + num(errs[i]));
    o.require(errs.back() <= 1e-3, "k=8 error " + num(errs.back()));
    const double t = sw.seconds();
    o.require(t < 30.0, "took " + num(t) + " s");
    if (o.passed) o.detail = "k=1 " + num(errs[1]) + ", k=8 " + num(errs.back()) + ", " + num(t) + " s";
    return o;
}

Chain random_one_chain(const ComplexPtr& k, std::mt19937_64& rng, bool real) {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    Chain p(k, 1, real ? Group::reals() : Group::integers());
    for (std::size_t e = 0; e < k->count(1); ++e) {
        if (rng() % 3 != 0) continue;
        if (real)
            p.add(static_cast<int>(e), u(rng));
        else
            p.add(static_cast<int>(e), static_cast<double>(static_cast<int>(rng() % 5) - 2));
    }
    return p;
}

Outcome pushforward_mass() {
    Outcome o;
    std::mt19937_64 rng(9);
    double worst = -1e300;
    for (int trial = 0; trial < 50; ++trial) {
        const auto k = grid(3, 3, 2.0 / 3.0, -1.0, -1.0, 0.2, rng);
        const Chain p = random_one_chain(k, rng, trial % 2 == 0);
        const LipMap f = random_map(rng);
        const double pushed = mass(pushforward_chain(f, p, 2).chain);
        const double integral = jacobian_integral(f, p, 10);
        worst = std::max(worst, pushed - integral);
        o.require(pushed <= integral + 1e-6,
                  "trial " + std::to_string(trial) + " " + f.name() + ": " + num(pushed) + " > " + num(integral));
    }
    if (o.passed) o.detail = "50 pairs, max mass - integral = " + num(worst);
    return o;
}

Outcome pushforward_flat() {
    Outcome o;
    std::mt19937_64 rng(10);
    const int k = 2;
    double worst = -1e300;
    for (int trial = 0; trial < 20; ++trial) {
        const auto base = grid(4, 4, 0.25, -0.5, -0.5, 0.0, rng);
        const Chain p = random_one_chain(base, rng, false);
        const Chain q = random_one_chain(base, rng, false);
        const LipMap f = random_map(rng);
        const auto fine = iterated_subdivision(base, k);
        const double before = flat_norm(refine(p - q, fine)).value;
        const auto images = pushforward_chains(f, {p, q}, k);
        const double after = flat_norm(images[0].chain - images[1].chain).value;
        const double lip = f.lip_bound();
        const double bound = std::max(lip, lip * lip) * before + 1e-3;
        worst = std::max(worst, after - bound);
        o.require(after <= bound, "trial " + std::to_string(trial) + " " + f.name() + ": " + num(after) + " > " + num(bound));
    }
    if (o.passed) o.detail = "20 pairs, max excess = " + num(worst);
    return o;
}

Outcome shortest_paths() {
    Outcome o;
    std::mt19937_64 rng(11);
    const auto k = grid(10, 10, 0.1, 0.0, 0.0, 0.0, rng);
    const int nv = static_cast<int>(k->num_vertices());
    std::vector<std::pair<std::pair<int, int>, double>> edges;
    for (const auto& e : k->simplices(1))
        edges.push_back({{e.vertices[0], e.vertices[1]}, (k->vertex(e.vertices[0]) - k->vertex(e.vertices[1])).norm()});
    double worst = 0.0;
    for (int trial = 0; trial < 10; ++trial) {
        const int a = static_cast<int>(rng() % nv);
        const int b = (a + 1 + static_cast<int>(rng() % (nv - 1))) % nv;
        Chain t(k, 0, Group::reals());
        t.add(b, 1.0);
        t.add(a, -1.0);
        const auto res = mass_minimize(t, k);
        const double expected = oracle::dijkstra(nv, edges, a)[static_cast<std::size_t>(b)];
        worst = std::max(worst, std::abs(res.mass - expected));
        o.require(std::abs(res.mass - expected) <= 1e-9, "pair " + std::to_string(a) + "-" + std::to_string(b) + ": " +
                                                          num(res.mass) + " vs " + num(expected));
        o.require(mass(boundary(res.s) - t) <= 1e-9, "boundary of the minimizer differs");
    }
    if (o.passed) o.detail = "10 pairs, max deviation " + num(worst);
    return o;
}

Outcome grassmann_lines() {
    Outcome o;
    for (double theta : {std::numbers::pi / 6, std::numbers::pi / 4, std::numbers::pi / 3}) {
        Eigen::MatrixXd a(2, 1), b(2, 1);
        a << 1, 0;
        b << std::cos(theta), std::sin(theta);
        const double d = grassmann_dist(Plane::from_spanning(a), Plane::from_spanning(b));
        o.require(std::abs(d - oracle::line_distance(theta)) <= 1e-9, "theta " + num(theta) + ": " + num(d));
    }
    std::mt19937_64 rng(12);
    std::normal_distribution<double> g;
    auto random_plane = [&](int n, int d) {
        Eigen::MatrixXd m(n, d);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < d; ++j) m(i, j) = g(rng);
        return Plane::from_spanning(m);
    };
    for (int t = 0; t < 100; ++t) {
        const int n = 2 + t % 3;
        const int d = 1 + t % (n - 1);
        const auto x = random_plane(n, d), y = random_plane(n, d), z = random_plane(n, d);
        const double xy = grassmann_dist(x, y), yz = grassmann_dist(y, z), xz = grassmann_dist(x, z);
        o.require(grassmann_dist(x, x) <= 1e-12, "d(x, x) > 0");
        o.require(xy > 0.0 && xy <= 1.0 + 1e-12, "range");
        o.require(std::abs(xy - grassmann_dist(y, x)) <= 1e-12, "symmetry");
        o.require(xz <= xy + yz + 1e-12, "triangle inequality");
    }
    if (o.passed) o.detail = "sin(theta) at three angles, axioms on 100 triples";
    return o;
}

}  // namespace

int main() {
    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
        {"coefficient norm axioms", norm_axioms},
        {"Z2 relaxation versus enumeration", z2_relaxation_vs_enumeration},
        {"Z2 unit square boundary", unit_square},
        {"escaping rectangle", escaping_rectangle},
        {"annulus sequence", annulus},
        {"polygonal circle", polygonal_circle},
        {"circle measure distances", circle_measures},
        {"simplexwise affine jacobian", shear_jacobian},
        {"pushforward mass bound", pushforward_mass},
        {"pushforward flat distance bound", pushforward_flat},
        {"least-mass chains versus shortest paths", shortest_paths},
        {"grassmannian distance", grassmann_lines},
    };
    int failures = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        Outcome out;
        try {
            out = criteria[i].second();
        } catch (const std::exception& e) {
            out.passed = false;
            out.detail = std::string("exception: ") + e.what();
        }
        failures += out.passed ? 0 : 1;
        std::printf("%s %2zu %s: %s\n", out.passed ? "PASS" : "FAIL", i + 1, criteria[i].first.c_str(),
                    out.detail.c_str());
        std::fflush(stdout);
    }
    return failures == 0 ? 0 : 1;
}
