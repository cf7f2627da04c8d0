#pragma once

#include "flatchain/chain.hpp"
#include "flatchain/grassmann.hpp"

#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace flatchain {

/// A Lipschitz map R^n -> R^n with a differential (analytic when declared,
/// otherwise central finite differences with step 1e-6).
class LipMap {
public:
    using Eval = std::function<Point(const Point&)>;
    using Diff = std::function<Eigen::MatrixXd(const Point&)>;

    LipMap(std::string name, int n, Eval f, std::optional<Diff> df, double lip_bound, bool affine = false);

    static LipMap identity(int n);
    static LipMap scale(int n, double c);
    /// Rotation of the first two coordinates by theta.
    static LipMap rotation(int n, double theta);
    /// y -> x + P_T (y - x), the orthogonal projection onto the affine plane x + T.
    static LipMap projection(const Point& x, const Plane& t);
    /// (x, y) -> ((1 + y) cos x, (1 + y) sin x).
    static LipMap polar_wrap();
    /// (x, y) -> (|x|, y + a x).
    static LipMap fold(double a = 1.0);
    /// (x, y) -> (x + a1 x^2 + a2 x y + a3 y^2, y + b1 x^2 + b2 x y + b3 y^2).
    static LipMap poly(const std::array<double, 6>& coeffs);

    /// Registry lookup: "identity", "scale:c", "rotation:theta", "polar_wrap",
    /// "fold[:a]", "poly:a1,a2,a3,b1,b2,b3". Maps other than identity, scale and
    /// rotation require n = 2.
    static LipMap parse(std::string_view spec, int n = 2);

    Point operator()(const Point& x) const { return f_(x); }
    Eigen::MatrixXd differential(const Point& x) const;
    bool analytic_differential() const { return df_.has_value(); }

    const std::string& name() const { return name_; }
    int dim() const { return n_; }
    /// Lipschitz constant on the domain box [-2, 2]^n (global for affine maps).
    double lip_bound() const { return lip_; }
    bool is_affine() const { return affine_; }

private:
    std::string name_;
    int n_;
    Eval f_;
    std::optional<Diff> df_;
    double lip_;
    bool affine_;
};

/// Names of the registered map families.
std::vector<std::string> map_registry();

/// Largest |f(x) - f(y)| / |x - y| over random pairs from [-2, 2]^n.
double sampled_lipschitz(const LipMap& f, int pairs, std::uint64_t seed);

/// Product of the singular values of Df(x) restricted to T.
double approx_jacobian(const LipMap& f, const Point& x, const Plane& t);

/// Simplexwise affine interpolant of f on a subdivided complex.
struct AffineApprox {
    ComplexPtr base;
    std::vector<Point> images;

    /// Barycentric interpolation on a top simplex containing x. Throws when x
    /// lies outside the complex.
    Point operator()(const Point& x) const;
    /// Image vertices of simplex i of dimension d.
    std::vector<Point> image_points(int d, int i) const;
};

AffineApprox simplexwise_affine(const LipMap& f, const ComplexPtr& k, int levels);

/// Sum over the top simplices of the level-k subdivision of
/// |ap J f_bar - ap J f(barycenter)| * volume.
double jacobian_l1_error(const LipMap& f, const ComplexPtr& k, int levels);

/// Quadrature of ap J_d f against mu_P on the depth-times subdivided support.
double jacobian_integral(const LipMap& f, const Chain& p, int depth);

struct Pushforward {
    Chain chain;
    int dropped = 0;
    std::string warning;
};

/// Level-k approximant f_k#P: the closure of the support is subdivided k
/// times, vertices are mapped, exactly coincident images are merged and
/// degenerate image simplices are dropped.
Pushforward pushforward_chain(const LipMap& f, const Chain& p, int k);

/// Pushes several chains of one complex through the level-k subdivision of the
/// whole complex, so that all images live on one image complex.
std::vector<Pushforward> pushforward_chains(const LipMap& f, const std::vector<Chain>& chains, int k);

/// mass(S - f_k#P) on a common refinement.
double rectifiable_approx_error(const Chain& s, const LipMap& f, const Chain& p, int k);

}  // namespace flatchain
