#pragma once

#include "flatchain/grassmann.hpp"
#include "flatchain/simplicial.hpp"

#include <string>
#include <string_view>
#include <vector>

namespace flatchain {

enum class BumpKind { Smooth, Tent };

/// The Grassmannian part of a test function.
struct PlaneFactor {
    enum class Kind { One, ProjectorEntry, DistanceToReference };
    Kind kind = Kind::One;
    int row = 0;
    int col = 0;
    /// Reference projector for DistanceToReference: value is ||P_T - P_ref||_F^2 / 2.
    Eigen::MatrixXd reference;

    double operator()(const Plane& t) const;
    double sup_norm(int n, int d) const;
    std::string describe() const;
};

/// phi(x, T) = bump(|x - center| / radius) * factor(T), compactly supported in x.
struct TestFunction {
    Point center;
    double radius = 1.0;
    BumpKind bump = BumpKind::Smooth;
    PlaneFactor factor;

    double spatial(const Point& x) const;
    double operator()(const Point& x, const Plane& t) const;
    bool spatial_only() const { return factor.kind == PlaneFactor::Kind::One; }
    double sup_norm(int n, int d) const;
    /// Lipschitz constant of the spatial part.
    double lipschitz_x() const;
};

/// A finite list of test functions on R^n x G(n, d).
class TestDictionary {
public:
    /// 25 smooth bumps (radius 1) on a 5x5 grid over [-2, 2]^2 times
    /// {1, projector entries P_ij (i <= j), distance^2 to each coordinate d-plane}.
    static TestDictionary standard(int n, int d);
    /// Tent functions max(0, 1 - |x - c| / radius); Lipschitz constant 1 / radius.
    static TestDictionary tents(std::vector<Point> centers, double radius, int n, int d);
    /// "default" or "tents".
    static TestDictionary by_name(std::string_view name, int n, int d);

    const std::string& id() const { return id_; }
    int ambient_dim() const { return n_; }
    int plane_dim() const { return d_; }
    const std::vector<TestFunction>& functions() const { return functions_; }
    std::size_t size() const { return functions_.size(); }
    bool empty() const { return functions_.empty(); }

    /// The functions that depend on x only.
    TestDictionary spatial() const;
    /// Radius of a ball about the origin containing every spatial support.
    double support_radius() const;
    std::string describe() const;

private:
    std::string id_;
    int n_ = 0;
    int d_ = 0;
    std::vector<TestFunction> functions_;
};

}  // namespace flatchain
