#pragma once

#include "flatchain/chain.hpp"
#include "flatchain/dictionary.hpp"
#include "flatchain/grassmann.hpp"
#include "flatchain/lipmap.hpp"

#include <functional>
#include <vector>

namespace flatchain {

struct VarifoldAtom {
    Point x;
    Plane t;
    double w;
};

/// A finite atomic measure on R^n x G(n, d) with positive weights.
class Varifold {
public:
    Varifold(int n, int d);

    int ambient_dim() const { return n_; }
    int plane_dim() const { return d_; }
    const std::vector<VarifoldAtom>& atoms() const { return atoms_; }
    bool empty() const { return atoms_.empty(); }
    std::size_t size() const { return atoms_.size(); }

    /// Appends an atom; zero weights are skipped, negative weights rejected.
    void add(VarifoldAtom atom);
    double total_weight() const;
    /// The weight measure ||V|| on R^n.
    ChainMeasure weight() const;

private:
    int n_;
    int d_;
    std::vector<VarifoldAtom> atoms_;
};

/// One atom per simplex of the k-times subdivided support: (barycenter, span, |g| volume).
Varifold var_of_chain(const Chain& p, int k);

double integrate(const Varifold& v, const TestFunction& phi);
double integrate(const Varifold& v, const std::function<double(const Point&, const Plane&)>& phi);

/// (x, T, w) -> (f(x), Df(x) T, w J); atoms with J = 0 are dropped.
Varifold var_pushforward(const LipMap& f, const Varifold& v);

/// Blow-ups (x - a) / r with weights divided by r^d, restricted to the open unit ball.
std::vector<Varifold> var_tangent(const Varifold& v, const Point& a, const std::vector<double>& radii);

/// max |V(phi) - W(phi)| / (1 + sup |phi|) over the dictionary.
double var_weak_distance(const Varifold& v, const Varifold& w, const TestDictionary& dict);

struct ProjectionRatio {
    double radius = 0.0;
    double restricted_mass = 0.0;
    double projected_mass = 0.0;
    /// projected / restricted; NaN when the restricted mass vanishes.
    double ratio = 0.0;
    std::string error;
};

/// Per radius: mass of the orthogonal projection onto x + T of S restricted to
/// an inscribed-box approximation of B(x, r), divided by the restricted mass.
std::vector<ProjectionRatio> projection_mass_ratio(const Chain& s, const Point& x, const Plane& t,
                                                   const std::vector<double>& radii, int depth = 6);

/// Volume of the unit d-ball.
double unit_ball_volume(int d);

/// mu_S(B(a, r)) / (omega_d r^d) per radius, from the depth-level atomic measure.
std::vector<double> density_estimates(const Chain& s, const Point& a, const std::vector<double>& radii, int depth = 6);

}  // namespace flatchain
