#include "flatchain/lp.hpp"

#include <Eigen/SparseCholesky>

#include <cmath>
#include <limits>
#include <stdexcept>

namespace flatchain {

namespace {

double max_step(const Eigen::VectorXd& v, const Eigen::VectorXd& dv, const std::vector<bool>& active) {
    double alpha = 1.0;
    for (Eigen::Index i = 0; i < v.size(); ++i)
        if (active[static_cast<std::size_t>(i)] && dv(i) < 0.0) alpha = std::min(alpha, -v(i) / dv(i));
    return alpha;
}

}  // namespace

LpResult solve_lp(const LinearProgram& lp, const LpOptions& options) {
    const Eigen::Index m = lp.a.rows();
    const Eigen::Index n = lp.a.cols();
    if (lp.b.size() != m || lp.c.size() != n || lp.upper.size() != n)
        throw std::invalid_argument("solve_lp: inconsistent dimensions");

    std::vector<bool> bounded(static_cast<std::size_t>(n));
    std::vector<bool> all(static_cast<std::size_t>(n), true);
    Eigen::VectorXd u = lp.upper;
    Eigen::VectorXd bmask = Eigen::VectorXd::Zero(n);
    for (Eigen::Index j = 0; j < n; ++j) {
        bounded[static_cast<std::size_t>(j)] = std::isfinite(u(j));
        if (bounded[static_cast<std::size_t>(j)]) {
            if (u(j) <= 0.0) throw std::invalid_argument("solve_lp: upper bounds must be positive");
            bmask(j) = 1.0;
        } else {
            u(j) = 0.0;
        }
    }
    const double big = std::max(1.0, lp.b.size() ? lp.b.cwiseAbs().maxCoeff() : 0.0);

    Eigen::VectorXd x(n), s = Eigen::VectorXd::Zero(n), z(n), w = Eigen::VectorXd::Zero(n);
    Eigen::VectorXd y = Eigen::VectorXd::Zero(m);
    for (Eigen::Index j = 0; j < n; ++j) {
        z(j) = 1.0 + std::abs(lp.c(j));
        if (bounded[static_cast<std::size_t>(j)]) {
            x(j) = 0.5 * u(j);
            s(j) = 0.5 * u(j);
            w(j) = 1.0 + std::abs(lp.c(j));
        } else {
            x(j) = big;
        }
    }

    const Eigen::SparseMatrix<double> at = lp.a.transpose();
    Eigen::SparseMatrix<double> normal = lp.a * at;
    Eigen::SparseMatrix<double> reg(m, m);
    reg.setIdentity();
    normal += reg;
    Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> ldlt;
    ldlt.analyzePattern(normal);

    const double nb = 1.0 + lp.b.norm();
    const double nc = 1.0 + lp.c.norm();
    const double nu = 1.0 + u.norm();
    const double complementarity_count = static_cast<double>(n) + bmask.sum();

    LpResult res;
    Eigen::VectorXd theta(n), rhat(n), dx(n), dz(n), ds(n), dw(n), dy(m);

    auto solve_direction = [&](const Eigen::VectorXd& rb, const Eigen::VectorXd& rc, const Eigen::VectorXd& ru,
                               const Eigen::VectorXd& rxz, const Eigen::VectorXd& rsw) {
        for (Eigen::Index j = 0; j < n; ++j) {
            rhat(j) = rc(j) - rxz(j) / x(j);
            if (bounded[static_cast<std::size_t>(j)]) rhat(j) += (rsw(j) - w(j) * ru(j)) / s(j);
        }
        const Eigen::VectorXd rhs = rb + lp.a * theta.cwiseProduct(rhat);
        dy = ldlt.solve(rhs);
        // one step of iterative refinement against the unregularized operator
        const Eigen::VectorXd r = rhs - lp.a * theta.cwiseProduct(at * dy);
        dy += ldlt.solve(r);
        dx = theta.cwiseProduct(at * dy - rhat);
        for (Eigen::Index j = 0; j < n; ++j) {
            dz(j) = (rxz(j) - z(j) * dx(j)) / x(j);
            if (bounded[static_cast<std::size_t>(j)]) {
                ds(j) = ru(j) - dx(j);
                dw(j) = (rsw(j) - w(j) * ds(j)) / s(j);
            } else {
                ds(j) = 0.0;
                dw(j) = 0.0;
            }
        }
    };

    double eta = 0.995;
    for (int it = 0; it < options.max_iterations; ++it) {
        const Eigen::VectorXd rb = lp.b - lp.a * x;
        const Eigen::VectorXd rc = lp.c - at * y - z + w;
        const Eigen::VectorXd ru = (u - x - s).cwiseProduct(bmask);
        const double mu = (x.dot(z) + s.dot(w)) / complementarity_count;
        const double pobj = lp.c.dot(x);
        const double dobj = lp.b.dot(y) - u.dot(w);

        res.iterations = it;
        res.primal_residual = std::max(rb.norm() / nb, ru.norm() / nu);
        res.dual_residual = rc.norm() / nc;
        const double gap = std::abs(pobj - dobj) / (1.0 + std::abs(pobj));
        if (res.primal_residual < options.tolerance && res.dual_residual < options.tolerance &&
            gap < options.tolerance) {
            res.converged = true;
            break;
        }

        Eigen::VectorXd d(n);
        for (Eigen::Index j = 0; j < n; ++j) {
            d(j) = z(j) / x(j);
            if (bounded[static_cast<std::size_t>(j)]) d(j) += w(j) / s(j);
        }
        theta = d.cwiseInverse();
        Eigen::SparseMatrix<double> mat = lp.a * theta.asDiagonal() * at;
        const double delta = options.regularization * std::max(1.0, mat.diagonal().cwiseAbs().maxCoeff());
        mat += delta * reg;
        ldlt.factorize(mat);
        if (ldlt.info() != Eigen::Success) break;

        // predictor
        Eigen::VectorXd rxz = -x.cwiseProduct(z);
        Eigen::VectorXd rsw = -s.cwiseProduct(w);
        solve_direction(rb, rc, ru, rxz, rsw);
        const double ap = std::min(max_step(x, dx, all), max_step(s, ds, bounded));
        const double ad = std::min(max_step(z, dz, all), max_step(w, dw, bounded));
        const double mu_aff = ((x + ap * dx).dot(z + ad * dz) + (s + ap * ds).dot(w + ad * dw)) / complementarity_count;
        const double sigma = std::pow(mu_aff / mu, 3.0);

        // corrector
        rxz = Eigen::VectorXd::Constant(n, sigma * mu) - x.cwiseProduct(z) - dx.cwiseProduct(dz);
        rsw = (Eigen::VectorXd::Constant(n, sigma * mu) - s.cwiseProduct(w) - ds.cwiseProduct(dw)).cwiseProduct(bmask);
        solve_direction(rb, rc, ru, rxz, rsw);
        const double alpha_p = std::min(1.0, eta * std::min(max_step(x, dx, all), max_step(s, ds, bounded)));
        const double alpha_d = std::min(1.0, eta * std::min(max_step(z, dz, all), max_step(w, dw, bounded)));

        x += alpha_p * dx;
        s += alpha_p * ds.cwiseProduct(bmask);
        y += alpha_d * dy;
        z += alpha_d * dz;
        w += alpha_d * dw.cwiseProduct(bmask);
        for (Eigen::Index j = 0; j < n; ++j) {
            x(j) = std::max(x(j), 1e-300);
            z(j) = std::max(z(j), 1e-300);
            if (bounded[static_cast<std::size_t>(j)]) {
                s(j) = std::max(s(j), 1e-300);
                w(j) = std::max(w(j), 1e-300);
            }
        }
        eta = std::min(0.9999, 1.0 - 0.5 * (1.0 - eta));
        res.iterations = it + 1;
    }

    res.x = x;
    res.y = y;
    res.primal_objective = lp.c.dot(x);
    res.dual_objective = lp.b.dot(y) - u.dot(w);
    return res;
}

}  // namespace flatchain
