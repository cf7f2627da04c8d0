#include "flatchain/flatnorm.hpp"

#include "flatchain/overlay.hpp"

#include <Eigen/SparseQR>

#include <bit>
#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>

namespace flatchain {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

bool certified(double value, double lb) { return value - lb <= 1e-9 * std::max(1.0, std::abs(value)); }

// Signed boundary matrix of the (d+1)-simplices into the d-simplices.
Eigen::SparseMatrix<double> boundary_matrix(const Complex& k, int d) {
    std::vector<Eigen::Triplet<double>> trip;
    for (std::size_t t = 0; t < k.count(d + 1); ++t)
        for (const auto& inc : k.boundary(d + 1, static_cast<int>(t)))
            trip.emplace_back(inc.index, static_cast<int>(t), inc.sign);
    Eigen::SparseMatrix<double> b(static_cast<Eigen::Index>(k.count(d)), static_cast<Eigen::Index>(k.count(d + 1)));
    b.setFromTriplets(trip.begin(), trip.end());
    return b;
}

Eigen::VectorXd volumes(const Complex& k, int d) {
    Eigen::VectorXd v(static_cast<Eigen::Index>(k.count(d)));
    for (std::size_t i = 0; i < k.count(d); ++i) v(static_cast<Eigen::Index>(i)) = k.simplex(d, static_cast<int>(i)).volume;
    return v;
}

Eigen::VectorXd dense_values(const Chain& p) {
    Eigen::VectorXd v = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(p.complex()->count(p.dim())));
    for (const auto& [i, g] : p.coefficients()) v(i) = g.value();
    return v;
}

double max_norm(const Chain& c) {
    double r = 0.0;
    for (const auto& [i, g] : c.coefficients()) r = std::max(r, g.norm());
    return r;
}

Chain chain_from_vector(const ComplexPtr& k, int d, const Group& g, const Eigen::VectorXd& v) {
    Chain c(k, d, g);
    for (Eigen::Index i = 0; i < v.size(); ++i)
        if (v(i) != 0.0) c.add(static_cast<int>(i), g.kind() == GroupKind::Reals ? g.element(v(i)) : g.element(static_cast<std::int64_t>(std::llround(v(i)))));
    return c;
}

// Sum of nonzero mod-p coefficients' norms, tracked per simplex.
double zp_norm(std::int64_t k, std::int64_t p) { return static_cast<double>(std::min(k, p - k)); }

// Lagrangian bound for min w|q| + v|r| s.t. q + B r = p, from any multiplier y.
double flat_dual_bound(Eigen::VectorXd y, const Eigen::SparseMatrix<double>& b, const Eigen::VectorXd& w,
                       const Eigen::VectorXd& v, const Eigen::VectorXd& p) {
    y = y.cwiseMax(-w).cwiseMin(w);
    const Eigen::VectorXd t = b.transpose() * y;
    double scale = 1.0;
    for (Eigen::Index j = 0; j < t.size(); ++j)
        if (std::abs(t(j)) > v(j)) scale = std::min(scale, v(j) / std::abs(t(j)));
    return scale * p.dot(y);
}

struct Candidate {
    Chain q;
    Chain r;
    double value;
};

Candidate make_candidate(const Chain& p, Chain r) {
    Chain q = p - boundary(r);
    const double value = mass(q) + mass(r);
    return {std::move(q), std::move(r), value};
}

FlatNormResult finish(const Chain& p, Candidate best, SolverReport report) {
    report.residual = max_norm(p - best.q - boundary(best.r));
    report.lower_bound = std::min(report.lower_bound, best.value);
    const double value = best.value;
    return FlatNormResult{value, FlatDecomposition{std::move(best.q), std::move(best.r), value}, std::move(report)};
}

FlatNormResult flat_lp_real(const Chain& p, const FlatNormOptions& opt) {
    const auto& k = p.complex();
    const int d = p.dim();
    const auto nd = static_cast<Eigen::Index>(k->count(d));
    const auto nt = static_cast<Eigen::Index>(k->count(d + 1));
    const auto b = boundary_matrix(*k, d);
    const Eigen::VectorXd w = volumes(*k, d);
    const Eigen::VectorXd v = volumes(*k, d + 1);
    const Eigen::VectorXd pv = dense_values(p);

    LinearProgram lp;
    std::vector<Eigen::Triplet<double>> trip;
    for (Eigen::Index e = 0; e < nd; ++e) {
        trip.emplace_back(e, e, 1.0);
        trip.emplace_back(e, nd + e, -1.0);
    }
    for (int col = 0; col < b.outerSize(); ++col)
        for (Eigen::SparseMatrix<double>::InnerIterator it(b, col); it; ++it) {
            trip.emplace_back(it.row(), 2 * nd + col, it.value());
            trip.emplace_back(it.row(), 2 * nd + nt + col, -it.value());
        }
    lp.a.resize(nd, 2 * nd + 2 * nt);
    lp.a.setFromTriplets(trip.begin(), trip.end());
    lp.b = pv;
    lp.c.resize(2 * nd + 2 * nt);
    lp.c << w, w, v, v;
    lp.upper = Eigen::VectorXd::Constant(lp.c.size(), kInf);
    const LpResult sol = solve_lp(lp, opt.lp);

    const Eigen::VectorXd r = sol.x.segment(2 * nd, nt) - sol.x.segment(2 * nd + nt, nt);
    const double rmax = r.size() ? r.cwiseAbs().maxCoeff() : 0.0;
    const Eigen::VectorXd rounded = r.array().round().matrix();
    const bool integral = (r - rounded).cwiseAbs().maxCoeff() <= 1e-6;

    std::vector<Candidate> cands;
    cands.push_back(make_candidate(p, Chain(k, d + 1, p.group())));
    if (p.group().kind() == GroupKind::Reals) {
        Eigen::VectorXd cleaned = r;
        for (Eigen::Index j = 0; j < r.size(); ++j)
            if (std::abs(r(j)) <= 1e-9 * std::max(1.0, rmax)) cleaned(j) = 0.0;
        cands.push_back(make_candidate(p, chain_from_vector(k, d + 1, p.group(), cleaned)));
    }
    cands.push_back(make_candidate(p, chain_from_vector(k, d + 1, p.group(), rounded)));
    std::size_t best = 0;
    for (std::size_t i = 1; i < cands.size(); ++i)
        if (cands[i].value < cands[best].value) best = i;

    SolverReport rep;
    rep.method = SolverMethod::LinearProgram;
    rep.iterations = sol.iterations;
    rep.lower_bound = flat_dual_bound(sol.y, b, w, v, pv);
    rep.relaxation_integral = integral;
    rep.optimal = certified(cands[best].value, rep.lower_bound);
    if (!sol.converged) rep.note = "interior point method did not reach tolerance";
    if (!rep.optimal && p.group().kind() == GroupKind::Integers)
        rep.note = "LP relaxation fractional; integral decomposition not certified";
    return finish(p, std::move(cands[best]), std::move(rep));
}

// Feasible set of x in {0,1}^N with sum = parity (mod 2), as parity-polytope rows.
void parity_rows(const std::vector<int>& vars, int parity, std::vector<Eigen::Triplet<double>>& trip,
                 std::vector<double>& rhs, int& slack_col) {
    const std::size_t n = vars.size();
    if (n > 20) throw std::runtime_error("parity relaxation: neighbourhood too large");
    for (std::uint32_t s = 0; s < (1u << n); ++s) {
        const int size = std::popcount(s);
        if (size % 2 == parity) continue;
        const int row = static_cast<int>(rhs.size());
        for (std::size_t i = 0; i < n; ++i) trip.emplace_back(row, vars[i], (s >> i) & 1u ? 1.0 : -1.0);
        trip.emplace_back(row, slack_col++, 1.0);
        rhs.push_back(size - 1.0);
    }
}

struct ParitySolution {
    Eigen::VectorXd x;
    double relaxation = 0.0;
    bool converged = false;
    bool integral = false;
    int iterations = 0;
};

// min cost.x over the intersection of parity polytopes, 0 <= x <= 1.
ParitySolution solve_parity_lp(const Eigen::VectorXd& cost, const std::vector<std::pair<std::vector<int>, int>>& groups,
                               const LpOptions& opt) {
    const auto nv = cost.size();
    std::vector<Eigen::Triplet<double>> trip;
    std::vector<double> rhs;
    int slack = static_cast<int>(nv);
    for (const auto& [vars, parity] : groups) parity_rows(vars, parity, trip, rhs, slack);
    LinearProgram lp;
    lp.a.resize(static_cast<Eigen::Index>(rhs.size()), slack);
    lp.a.setFromTriplets(trip.begin(), trip.end());
    lp.b = Eigen::Map<Eigen::VectorXd>(rhs.data(), static_cast<Eigen::Index>(rhs.size()));
    lp.c = Eigen::VectorXd::Zero(slack);
    lp.c.head(nv) = cost;
    lp.upper = Eigen::VectorXd::Constant(slack, kInf);
    lp.upper.head(nv).setOnes();
    const LpResult sol = solve_lp(lp, opt);
    ParitySolution out;
    out.x = sol.x.head(nv);
    out.converged = sol.converged;
    out.iterations = sol.iterations;
    out.relaxation = sol.converged ? std::min(sol.primal_objective, sol.dual_objective) : 0.0;
    out.integral = true;
    for (Eigen::Index i = 0; i < nv; ++i)
        if (std::min(std::abs(out.x(i)), std::abs(1.0 - out.x(i))) > 1e-6) out.integral = false;
    return out;
}

Chain z2_chain(const ComplexPtr& k, int d, const Group& g, const std::vector<std::uint8_t>& bits) {
    Chain c(k, d, g);
    for (std::size_t i = 0; i < bits.size(); ++i)
        if (bits[i]) c.add(static_cast<int>(i), g.element(std::int64_t{1}));
    return c;
}

FlatNormResult flat_z2_lp(const Chain& p, const FlatNormOptions& opt) {
    const auto& k = p.complex();
    const int d = p.dim();
    const auto nd = static_cast<int>(k->count(d));
    const auto nt = static_cast<int>(k->count(d + 1));
    Eigen::VectorXd cost(nd + nt);
    cost << volumes(*k, d), volumes(*k, d + 1);
    std::vector<std::pair<std::vector<int>, int>> groups;
    for (int e = 0; e < nd; ++e) {
        std::vector<int> vars{e};
        for (const auto& inc : k->cofaces(d, e)) vars.push_back(nd + inc.index);
        groups.emplace_back(std::move(vars), static_cast<int>(p.coefficient(e).integer()));
    }
    const ParitySolution sol = solve_parity_lp(cost, groups, opt.lp);

    std::vector<std::uint8_t> rbits(static_cast<std::size_t>(nt));
    for (int t = 0; t < nt; ++t) rbits[static_cast<std::size_t>(t)] = sol.x(nd + t) > 0.5;
    Candidate zero = make_candidate(p, Chain(k, d + 1, p.group()));
    Candidate rounded = make_candidate(p, z2_chain(k, d + 1, p.group(), rbits));
    Candidate best = rounded.value < zero.value ? std::move(rounded) : std::move(zero);

    SolverReport rep;
    rep.method = SolverMethod::LinearProgram;
    rep.iterations = sol.iterations;
    rep.lower_bound = sol.relaxation;
    rep.relaxation_integral = sol.integral;
    rep.optimal = sol.converged && certified(best.value, rep.lower_bound);
    rep.note = sol.converged ? "parity-polytope relaxation" : "parity relaxation did not converge";
    if (!rep.optimal) rep.note += "; rounded solution, gap not closed";
    return finish(p, std::move(best), std::move(rep));
}

FlatNormResult flat_z2_brute(const Chain& p) {
    const auto& k = p.complex();
    const int d = p.dim();
    const auto nd = k->count(d);
    const int nt = static_cast<int>(k->count(d + 1));
    const Eigen::VectorXd w = volumes(*k, d);
    const Eigen::VectorXd v = volumes(*k, d + 1);
    std::vector<std::uint8_t> q(nd, 0);
    double value = 0.0;
    for (const auto& [i, g] : p.coefficients()) {
        q[static_cast<std::size_t>(i)] = 1;
        value += w(i);
    }
    std::vector<std::uint8_t> r(static_cast<std::size_t>(nt), 0);
    double best = value;
    std::uint64_t best_mask = 0;
    const std::uint64_t total = std::uint64_t{1} << nt;
    for (std::uint64_t i = 1; i < total; ++i) {
        const int t = std::countr_zero(i);
        auto& rt = r[static_cast<std::size_t>(t)];
        rt ^= 1;
        value += rt ? v(t) : -v(t);
        for (const auto& inc : k->boundary(d + 1, t)) {
            auto& qe = q[static_cast<std::size_t>(inc.index)];
            qe ^= 1;
            value += qe ? w(inc.index) : -w(inc.index);
        }
        const std::uint64_t gray = i ^ (i >> 1);
        const double tol = 1e-12 * std::max(1.0, best);
        if (value < best - tol || (value <= best + tol && gray < best_mask)) {
            best = value;
            best_mask = gray;
        }
    }
    std::vector<std::uint8_t> bits(static_cast<std::size_t>(nt));
    for (int t = 0; t < nt; ++t) bits[static_cast<std::size_t>(t)] = (best_mask >> t) & 1u;
    Candidate c = make_candidate(p, z2_chain(k, d + 1, p.group(), bits));
    SolverReport rep;
    rep.method = SolverMethod::BruteForce;
    rep.iterations = static_cast<long long>(total);
    rep.lower_bound = c.value;
    rep.optimal = true;
    rep.note = "exhaustive enumeration";
    return finish(p, std::move(c), std::move(rep));
}

// Enumerates all R in (Z_p)^N with an odometer; `score` receives digit changes.
template <class OnChange, class OnVisit>
std::uint64_t odometer(int n, std::int64_t p, OnChange&& change, OnVisit&& visit) {
    std::vector<std::int64_t> digit(static_cast<std::size_t>(n), 0);
    std::uint64_t count = 1;
    visit(digit);
    while (true) {
        int j = 0;
        while (j < n && digit[static_cast<std::size_t>(j)] == p - 1) {
            change(j, -(p - 1));
            digit[static_cast<std::size_t>(j)] = 0;
            ++j;
        }
        if (j == n) break;
        change(j, 1);
        ++digit[static_cast<std::size_t>(j)];
        ++count;
        visit(digit);
    }
    return count;
}

std::int64_t mod(std::int64_t a, std::int64_t p) {
    a %= p;
    return a < 0 ? a + p : a;
}

void require_enumerable(std::int64_t p, int n, int limit_bits) {
    const double log2_count = static_cast<double>(n) * std::log2(static_cast<double>(p));
    if (log2_count > limit_bits + 1e-9)
        throw std::runtime_error("exhaustive search over " + std::to_string(p) + "^" + std::to_string(n) +
                                 " candidates exceeds the enumeration limit");
}

FlatNormResult flat_zp_brute(const Chain& p, int limit_bits) {
    const auto& k = p.complex();
    const int d = p.dim();
    const std::int64_t mp = p.group().modulus();
    const int nt = static_cast<int>(k->count(d + 1));
    require_enumerable(mp, nt, limit_bits);
    const Eigen::VectorXd w = volumes(*k, d);
    const Eigen::VectorXd v = volumes(*k, d + 1);
    std::vector<std::int64_t> q(k->count(d), 0);
    double value = 0.0;
    for (const auto& [i, g] : p.coefficients()) {
        q[static_cast<std::size_t>(i)] = g.integer();
        value += g.norm() * w(i);
    }
    std::vector<std::int64_t> r(static_cast<std::size_t>(nt), 0);
    double best = value;
    std::vector<std::int64_t> best_r = r;
    const auto count = odometer(
        nt, mp,
        [&](int t, std::int64_t delta) {
            auto& rt = r[static_cast<std::size_t>(t)];
            value -= zp_norm(rt, mp) * v(t);
            rt = mod(rt + delta, mp);
            value += zp_norm(rt, mp) * v(t);
            for (const auto& inc : k->boundary(d + 1, t)) {
                auto& qe = q[static_cast<std::size_t>(inc.index)];
                value -= zp_norm(qe, mp) * w(inc.index);
                qe = mod(qe - inc.sign * delta, mp);
                value += zp_norm(qe, mp) * w(inc.index);
            }
        },
        [&](const std::vector<std::int64_t>&) {
            if (value < best - 1e-12 * std::max(1.0, best)) {
                best = value;
                best_r = r;
            }
        });
    Chain rc(k, d + 1, p.group());
    for (int t = 0; t < nt; ++t) rc.add(t, p.group().element(best_r[static_cast<std::size_t>(t)]));
    Candidate c = make_candidate(p, std::move(rc));
    SolverReport rep;
    rep.method = SolverMethod::BruteForce;
    rep.iterations = static_cast<long long>(count);
    rep.lower_bound = c.value;
    rep.optimal = true;
    rep.note = "exhaustive enumeration";
    return finish(p, std::move(c), std::move(rep));
}

// ---- mass minimization -------------------------------------------------

// Solves B s = t over GF(2). Returns nullopt when inconsistent.
std::optional<std::vector<std::uint8_t>> solve_gf2(const Complex& k, int d, const std::vector<std::uint8_t>& t) {
    const std::size_t rows = k.count(d - 1);
    const std::size_t cols = k.count(d);
    const std::size_t words = (cols + 1 + 63) / 64;
    std::vector<std::vector<std::uint64_t>> m(rows, std::vector<std::uint64_t>(words, 0));
    auto set = [&](std::size_t r, std::size_t c) { m[r][c / 64] ^= std::uint64_t{1} << (c % 64); };
    auto get = [&](std::size_t r, std::size_t c) { return (m[r][c / 64] >> (c % 64)) & 1u; };
    for (std::size_t c = 0; c < cols; ++c)
        for (const auto& inc : k.boundary(d, static_cast<int>(c))) set(static_cast<std::size_t>(inc.index), c);
    for (std::size_t r = 0; r < rows; ++r)
        if (t[r]) set(r, cols);
    std::vector<std::size_t> pivot_col;
    std::size_t prow = 0;
    for (std::size_t c = 0; c < cols && prow < rows; ++c) {
        std::size_t r = prow;
        while (r < rows && !get(r, c)) ++r;
        if (r == rows) continue;
        std::swap(m[r], m[prow]);
        for (std::size_t rr = 0; rr < rows; ++rr)
            if (rr != prow && get(rr, c))
                for (std::size_t wd = 0; wd < words; ++wd) m[rr][wd] ^= m[prow][wd];
        pivot_col.push_back(c);
        ++prow;
    }
    for (std::size_t r = prow; r < rows; ++r)
        if (get(r, cols)) return std::nullopt;
    std::vector<std::uint8_t> s(cols, 0);
    for (std::size_t r = 0; r < prow; ++r) s[pivot_col[r]] = static_cast<std::uint8_t>(get(r, cols));
    return s;
}

[[noreturn]] void obstruction(int d, const std::string& detail) {
    throw std::domain_error("boundary data is not a boundary in the complex: its class in H_" + std::to_string(d - 1) +
                            " is nonzero (" + detail + ")");
}

MassMinResult massmin_real(const Chain& t, const ComplexPtr& k, int d, const FlatNormOptions& opt) {
    const Group g = t.group();
    const auto b = boundary_matrix(*k, d - 1);
    const Eigen::VectorXd tv = dense_values(t);
    const Eigen::VectorXd vol = volumes(*k, d);
    const double tscale = 1.0 + (tv.size() ? tv.cwiseAbs().maxCoeff() : 0.0);

    Eigen::SparseQR<Eigen::SparseMatrix<double>, Eigen::COLAMDOrdering<int>> qr;
    Eigen::SparseMatrix<double> bc = b;
    bc.makeCompressed();
    qr.compute(bc);
    if (qr.info() != Eigen::Success) throw std::runtime_error("mass_minimize: factorization failed");
    const Eigen::VectorXd ls = qr.solve(tv);
    const double feas = (b * ls - tv).cwiseAbs().maxCoeff();
    if (feas > 1e-9 * tscale) obstruction(d, "least-squares residual " + std::to_string(feas));

    const auto nd = static_cast<Eigen::Index>(k->count(d));
    LinearProgram lp;
    std::vector<Eigen::Triplet<double>> trip;
    for (int col = 0; col < b.outerSize(); ++col)
        for (Eigen::SparseMatrix<double>::InnerIterator it(b, col); it; ++it) {
            trip.emplace_back(it.row(), col, it.value());
            trip.emplace_back(it.row(), nd + col, -it.value());
        }
    lp.a.resize(b.rows(), 2 * nd);
    lp.a.setFromTriplets(trip.begin(), trip.end());
    lp.b = tv;
    lp.c.resize(2 * nd);
    lp.c << vol, vol;
    lp.upper = Eigen::VectorXd::Constant(2 * nd, kInf);
    const LpResult sol = solve_lp(lp, opt.lp);
    Eigen::VectorXd s = sol.x.head(nd) - sol.x.tail(nd);

    // Lagrangian bound: y scaled so that |B^T y| <= vol.
    const Eigen::VectorXd bty = b.transpose() * sol.y;
    double scale = 1.0;
    for (Eigen::Index j = 0; j < bty.size(); ++j)
        if (std::abs(bty(j)) > vol(j)) scale = std::min(scale, vol(j) / std::abs(bty(j)));
    const double lb = scale * tv.dot(sol.y);

    SolverReport rep;
    rep.method = SolverMethod::LinearProgram;
    rep.iterations = sol.iterations;
    rep.lower_bound = lb;
    const double smax = s.size() ? s.cwiseAbs().maxCoeff() : 0.0;
    const Eigen::VectorXd rounded = s.array().round().matrix();
    rep.relaxation_integral = (s - rounded).cwiseAbs().maxCoeff() <= 1e-6;

    Chain best(k, d, g);
    if (g.kind() == GroupKind::Reals) {
        for (Eigen::Index j = 0; j < nd; ++j)
            if (std::abs(s(j)) <= 1e-12 * std::max(1.0, smax)) s(j) = 0.0;
        best = chain_from_vector(k, d, g, s);
    } else {
        best = chain_from_vector(k, d, g, rounded);
        if (!(boundary(best) == t)) {
            // Integral rounding missed the constraint: fall back to any integral solution.
            const Eigen::VectorXd lsr = ls.array().round().matrix();
            best = chain_from_vector(k, d, g, lsr);
            if (!(boundary(best) == t))
                throw std::runtime_error("mass_minimize: no integral solution recovered from the relaxation");
            rep.note = "integral minimizer not recovered; returning a feasible integral chain";
        }
    }
    const double m = mass(best);
    rep.residual = max_norm(boundary(best) - t);
    rep.lower_bound = std::min(rep.lower_bound, m);
    rep.optimal = sol.converged && rep.residual <= 1e-9 * tscale && certified(m, lb);
    if (!sol.converged && rep.note.empty()) rep.note = "interior point method did not reach tolerance";
    return {std::move(best), m, std::move(rep)};
}

MassMinResult massmin_z2(const Chain& t, const ComplexPtr& k, int d, const FlatNormOptions& opt) {
    const Group g = t.group();
    std::vector<std::uint8_t> tb(k->count(d - 1), 0);
    for (const auto& [i, e] : t.coefficients()) tb[static_cast<std::size_t>(i)] = 1;
    const auto particular = solve_gf2(*k, d, tb);
    if (!particular) obstruction(d, "inconsistent over Z_2");
    const int n = static_cast<int>(k->count(d));
    const Eigen::VectorXd vol = volumes(*k, d);
    SolverReport rep;

    const bool brute = opt.method == MethodChoice::BruteForce ||
                       (opt.method == MethodChoice::Auto && n <= opt.brute_force_limit);
    if (brute) {
        if (n > opt.brute_force_limit) require_enumerable(2, n, opt.brute_force_limit);
        // Gray-code walk tracking the mismatch between dS and T.
        std::vector<std::uint8_t> cur(tb);  // dS + T, starts at T for S = 0
        long long mismatch = 0;
        for (auto x : cur) mismatch += x;
        std::vector<std::uint8_t> s(static_cast<std::size_t>(n), 0);
        double value = 0.0;
        double best = mismatch == 0 ? 0.0 : kInf;
        std::uint64_t best_mask = 0;
        const std::uint64_t total = std::uint64_t{1} << n;
        for (std::uint64_t i = 1; i < total; ++i) {
            const int j = std::countr_zero(i);
            auto& sj = s[static_cast<std::size_t>(j)];
            sj ^= 1;
            value += sj ? vol(j) : -vol(j);
            for (const auto& inc : k->boundary(d, j)) {
                auto& c = cur[static_cast<std::size_t>(inc.index)];
                c ^= 1;
                mismatch += c ? 1 : -1;
            }
            if (mismatch != 0) continue;
            const std::uint64_t gray = i ^ (i >> 1);
            const double tol = 1e-12 * std::max(1.0, best == kInf ? 1.0 : best);
            if (value < best - tol || (value <= best + tol && gray < best_mask)) {
                best = value;
                best_mask = gray;
            }
        }
        std::vector<std::uint8_t> bits(static_cast<std::size_t>(n));
        for (int j = 0; j < n; ++j) bits[static_cast<std::size_t>(j)] = (best_mask >> j) & 1u;
        Chain sc = z2_chain(k, d, g, bits);
        rep.method = SolverMethod::BruteForce;
        rep.iterations = static_cast<long long>(total);
        rep.optimal = true;
        rep.residual = max_norm(boundary(sc) - t);
        rep.lower_bound = mass(sc);
        rep.note = "exhaustive enumeration";
        const double m = mass(sc);
        return {std::move(sc), m, std::move(rep)};
    }
    if (opt.method == MethodChoice::Auto && !opt.allow_relaxation)
        throw std::runtime_error("mass_minimize: Z_2 instance exceeds the enumeration limit and relaxation is disabled");

    std::vector<std::pair<std::vector<int>, int>> groups;
    for (std::size_t e = 0; e < k->count(d - 1); ++e) {
        std::vector<int> vars;
        for (const auto& inc : k->cofaces(d - 1, static_cast<int>(e))) vars.push_back(inc.index);
        if (vars.empty()) continue;
        groups.emplace_back(std::move(vars), tb[e]);
    }
    const ParitySolution sol = solve_parity_lp(vol, groups, opt.lp);
    std::vector<std::uint8_t> bits(static_cast<std::size_t>(n));
    for (int j = 0; j < n; ++j) bits[static_cast<std::size_t>(j)] = sol.x(j) > 0.5;
    Chain sc = z2_chain(k, d, g, bits);
    rep.method = SolverMethod::LinearProgram;
    rep.iterations = sol.iterations;
    rep.lower_bound = sol.relaxation;
    rep.relaxation_integral = sol.integral;
    rep.note = "parity-polytope relaxation";
    const bool rounded_ok = boundary(sc) == t;
    if (!rounded_ok) sc = z2_chain(k, d, g, *particular);

    // Integer lift: minimize over Z with the boundary of the lifted elimination solution, then reduce mod 2.
    // Repeated with the signs of the previous integer solution.
    Chain lift(k, d, Group::integers());
    for (int j = 0; j < n; ++j)
        if ((*particular)[static_cast<std::size_t>(j)]) lift.add(j, 1.0);
    bool lifted = false;
    for (int round = 0; round < 8; ++round) {
        Chain next(k, d, Group::integers());
        try {
            const auto zres = massmin_real(boundary(lift), k, d, opt);
            for (const auto& [j, e] : zres.s.coefficients())
                if (e.integer() % 2 != 0) next.add(j, e.integer() > 0 ? 1.0 : -1.0);
        } catch (const std::runtime_error&) {
            break;
        }
        std::vector<std::uint8_t> zbits(static_cast<std::size_t>(n), 0);
        for (const auto& [j, e] : next.coefficients()) zbits[static_cast<std::size_t>(j)] = 1;
        Chain zc = z2_chain(k, d, g, zbits);
        if (!(boundary(zc) == t) || mass(zc) >= mass(sc) - 1e-12 * (1.0 + mass(sc))) {
            if (next == lift) break;
            lift = std::move(next);
            continue;
        }
        sc = std::move(zc);
        lifted = true;
        lift = std::move(next);
    }
    if (lifted)
        rep.note += "; improved by an integer lift";
    else if (!rounded_ok)
        rep.note += "; rounding infeasible, returning an elimination solution";
    const double m = mass(sc);
    rep.residual = max_norm(boundary(sc) - t);
    rep.lower_bound = std::min(rep.lower_bound, m);
    rep.optimal = sol.converged && certified(m, rep.lower_bound);
    return {std::move(sc), m, std::move(rep)};
}

MassMinResult massmin_zp(const Chain& t, const ComplexPtr& k, int d, const FlatNormOptions& opt) {
    const Group g = t.group();
    const std::int64_t mp = g.modulus();
    const int n = static_cast<int>(k->count(d));
    require_enumerable(mp, n, opt.brute_force_limit);
    const Eigen::VectorXd vol = volumes(*k, d);
    std::vector<std::int64_t> diff(k->count(d - 1), 0);  // dS - T
    long long mismatch = 0;
    for (const auto& [i, e] : t.coefficients()) {
        diff[static_cast<std::size_t>(i)] = mod(-e.integer(), mp);
        ++mismatch;
    }
    std::vector<std::int64_t> s(static_cast<std::size_t>(n), 0);
    double value = 0.0;
    double best = mismatch == 0 ? 0.0 : kInf;
    std::vector<std::int64_t> best_s = s;
    const auto count = odometer(
        n, mp,
        [&](int j, std::int64_t delta) {
            auto& sj = s[static_cast<std::size_t>(j)];
            value -= zp_norm(sj, mp) * vol(j);
            sj = mod(sj + delta, mp);
            value += zp_norm(sj, mp) * vol(j);
            for (const auto& inc : k->boundary(d, j)) {
                auto& c = diff[static_cast<std::size_t>(inc.index)];
                const bool was = c != 0;
                c = mod(c + inc.sign * delta, mp);
                mismatch += static_cast<long long>(c != 0) - static_cast<long long>(was);
            }
        },
        [&](const std::vector<std::int64_t>&) {
            if (mismatch == 0 && value < best - 1e-12 * std::max(1.0, best == kInf ? 1.0 : best)) {
                best = value;
                best_s = s;
            }
        });
    if (best == kInf) obstruction(d, "no solution over Z_" + std::to_string(mp));
    Chain sc(k, d, g);
    for (int j = 0; j < n; ++j) sc.add(j, g.element(best_s[static_cast<std::size_t>(j)]));
    SolverReport rep;
    rep.method = SolverMethod::BruteForce;
    rep.iterations = static_cast<long long>(count);
    rep.optimal = true;
    rep.residual = max_norm(boundary(sc) - t);
    rep.lower_bound = mass(sc);
    rep.note = "exhaustive enumeration";
    const double m = mass(sc);
    return {std::move(sc), m, std::move(rep)};
}

}  // namespace

std::string to_string(SolverMethod m) { return m == SolverMethod::BruteForce ? "brute_force" : "linear_program"; }

FlatNormResult flat_norm(const Chain& p, const FlatNormOptions& options) {
    const auto& k = p.complex();
    const int d = p.dim();
    const Group g = p.group();
    if (k->top_dim() < d + 1) {
        const double value = mass(p);
        SolverReport rep;
        rep.method = SolverMethod::BruteForce;
        rep.optimal = true;
        rep.iterations = 1;
        rep.lower_bound = value;
        rep.note = "no (d+1)-simplices: R = 0";
        return FlatNormResult{value, FlatDecomposition{p, std::nullopt, value}, std::move(rep)};
    }
    if (p.is_zero()) {
        Chain zero_r(k, d + 1, g);
        SolverReport rep;
        rep.method = options.method == MethodChoice::LinearProgram ? SolverMethod::LinearProgram : SolverMethod::BruteForce;
        rep.optimal = true;
        rep.note = "zero chain";
        return finish(p, Candidate{p, std::move(zero_r), 0.0}, std::move(rep));
    }
    switch (g.kind()) {
    case GroupKind::Reals:
    case GroupKind::Integers:
        if (options.method == MethodChoice::BruteForce)
            throw std::invalid_argument("flat_norm: exhaustive search needs a finite coefficient group");
        return flat_lp_real(p, options);
    case GroupKind::CyclicMod:
        if (g.modulus() == 2) {
            const int nt = static_cast<int>(k->count(d + 1));
            if (options.method == MethodChoice::LinearProgram) return flat_z2_lp(p, options);
            if (options.method == MethodChoice::BruteForce || nt <= options.brute_force_limit) {
                require_enumerable(2, nt, options.brute_force_limit);
                return flat_z2_brute(p);
            }
            if (!options.allow_relaxation)
                throw std::runtime_error("flat_norm: Z_2 instance with " + std::to_string(nt) +
                                         " top simplices exceeds the enumeration limit and relaxation is disabled");
            return flat_z2_lp(p, options);
        }
        if (options.method == MethodChoice::LinearProgram)
            throw std::invalid_argument("flat_norm: no LP formulation for Z_p with p > 2");
        return flat_zp_brute(p, options.brute_force_limit);
    }
    throw std::logic_error("unreachable");
}

FlatNormResult flat_distance(const Chain& p, const Chain& q, const FlatNormOptions& options) {
    const auto cr = common_refinement(p, q);
    auto res = flat_norm(cr.a - cr.b, options);
    if (cr.route != "shared") {
        if (!res.report.note.empty()) res.report.note += "; ";
        res.report.note += "common refinement via " + cr.route;
    }
    return res;
}

MassMinResult mass_minimize(const Chain& t, const ComplexPtr& k, const FlatNormOptions& options) {
    const int d = t.dim() + 1;
    Chain tt = t.complex() == k ? t : refine(t, k);
    if (k->top_dim() < d) throw std::invalid_argument("mass_minimize: complex has no " + std::to_string(d) + "-simplices");
    if (tt.is_zero()) {
        SolverReport rep;
        rep.optimal = true;
        rep.note = "zero boundary";
        return {Chain(k, d, t.group()), 0.0, std::move(rep)};
    }
    switch (t.group().kind()) {
    case GroupKind::Reals:
    case GroupKind::Integers:
        if (options.method == MethodChoice::BruteForce)
            throw std::invalid_argument("mass_minimize: exhaustive search needs a finite coefficient group");
        return massmin_real(tt, k, d, options);
    case GroupKind::CyclicMod:
        if (t.group().modulus() == 2) return massmin_z2(tt, k, d, options);
        if (options.method == MethodChoice::LinearProgram)
            throw std::invalid_argument("mass_minimize: no LP formulation for Z_p with p > 2");
        return massmin_zp(tt, k, d, options);
    }
    throw std::logic_error("unreachable");
}

}  // namespace flatchain
