#pragma once

#include <Eigen/Dense>

#include <optional>
#include <vector>

namespace flatchain {

/// An unoriented d-dimensional linear subspace of R^n, stored by an
/// orthonormal basis (n x d) and its orthogonal projector.
class Plane {
public:
    /// Orthonormalizes the columns of `vectors` by modified Gram-Schmidt.
    /// Throws when a column's remainder falls below `pivot_tol` relative to
    /// its original length.
    static Plane from_spanning(const Eigen::MatrixXd& vectors, double pivot_tol = 1e-10);
    static std::optional<Plane> try_from_spanning(const Eigen::MatrixXd& vectors, double pivot_tol = 1e-10);
    /// Span of the given coordinate axes.
    static Plane coordinate(int n, const std::vector<int>& axes);
    static Plane zero(int n);

    int ambient_dim() const { return static_cast<int>(basis_.rows()); }
    int dim() const { return static_cast<int>(basis_.cols()); }
    const Eigen::MatrixXd& basis() const { return basis_; }
    const Eigen::MatrixXd& projector() const { return projector_; }

private:
    explicit Plane(Eigen::MatrixXd basis);

    Eigen::MatrixXd basis_;
    Eigen::MatrixXd projector_;
};

/// Operator norm of the projector difference; a metric on G(n, d) with values in [0, 1].
double grassmann_dist(const Plane& a, const Plane& b);

/// Product of the singular values of an n x d matrix (the d-volume scale factor).
double volume_factor(const Eigen::MatrixXd& m);

}  // namespace flatchain
