#include "flatchain/grassmann.hpp"

#include <cmath>
#include <stdexcept>

namespace flatchain {

Plane::Plane(Eigen::MatrixXd basis) : basis_(std::move(basis)) {
    projector_ = basis_ * basis_.transpose();
}

std::optional<Plane> Plane::try_from_spanning(const Eigen::MatrixXd& vectors, double pivot_tol) {
    Eigen::MatrixXd q = vectors;
    for (Eigen::Index j = 0; j < q.cols(); ++j) {
        const double original = q.col(j).norm();
        for (Eigen::Index i = 0; i < j; ++i) q.col(j) -= q.col(i).dot(q.col(j)) * q.col(i);
        // second pass for numerical orthogonality
        for (Eigen::Index i = 0; i < j; ++i) q.col(j) -= q.col(i).dot(q.col(j)) * q.col(i);
        const double remainder = q.col(j).norm();
        if (original == 0.0 || remainder <= pivot_tol * original) return std::nullopt;
        q.col(j) /= remainder;
    }
    return Plane(std::move(q));
}

Plane Plane::from_spanning(const Eigen::MatrixXd& vectors, double pivot_tol) {
    auto p = try_from_spanning(vectors, pivot_tol);
    if (!p) throw std::invalid_argument("plane spanning vectors are linearly dependent");
    return *p;
}

Plane Plane::coordinate(int n, const std::vector<int>& axes) {
    Eigen::MatrixXd b = Eigen::MatrixXd::Zero(n, static_cast<Eigen::Index>(axes.size()));
    for (std::size_t k = 0; k < axes.size(); ++k) {
        if (axes[k] < 0 || axes[k] >= n) throw std::out_of_range("coordinate axis out of range");
        b(axes[k], static_cast<Eigen::Index>(k)) = 1.0;
    }
    return from_spanning(b);
}

Plane Plane::zero(int n) { return Plane(Eigen::MatrixXd::Zero(n, 0)); }

double grassmann_dist(const Plane& a, const Plane& b) {
    if (a.ambient_dim() != b.ambient_dim() || a.dim() != b.dim())
        throw std::invalid_argument("grassmann_dist: planes from different Grassmannians");
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(a.projector() - b.projector(), Eigen::EigenvaluesOnly);
    return std::min(1.0, es.eigenvalues().cwiseAbs().maxCoeff());
}

double volume_factor(const Eigen::MatrixXd& m) {
    if (m.cols() == 0) return 1.0;
    // sqrt(det(M^T M)) equals the product of singular values.
    const double det = (m.transpose() * m).determinant();
    return std::sqrt(std::max(det, 0.0));
}

}  // namespace flatchain
