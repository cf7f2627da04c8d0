#pragma once

#include <Eigen/Dense>
#include <Eigen/Sparse>

namespace flatchain {

/// min c^T x  subject to  A x = b,  0 <= x <= upper  (upper may be +inf).
struct LinearProgram {
    Eigen::SparseMatrix<double> a;
    Eigen::VectorXd b;
    Eigen::VectorXd c;
    Eigen::VectorXd upper;
};

struct LpOptions {
    double tolerance = 1e-12;
    int max_iterations = 200;
    double regularization = 1e-13;
};

struct LpResult {
    Eigen::VectorXd x;
    Eigen::VectorXd y;
    double primal_objective = 0.0;
    /// b^T y - upper^T w; a lower bound on the optimum at any dual-feasible iterate.
    double dual_objective = 0.0;
    int iterations = 0;
    bool converged = false;
    double primal_residual = 0.0;
    double dual_residual = 0.0;
};

/// Mehrotra predictor-corrector interior point method on the normal equations.
LpResult solve_lp(const LinearProgram& lp, const LpOptions& options = {});

}  // namespace flatchain
