#include "flatchain/varifold.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <optional>
#include <stdexcept>

namespace flatchain {

namespace {

Plane plane_of(const std::vector<Point>& pts) {
    const auto d = static_cast<Eigen::Index>(pts.size()) - 1;
    Eigen::MatrixXd e(pts[0].size(), d);
    for (Eigen::Index i = 0; i < d; ++i) e.col(i) = pts[static_cast<std::size_t>(i + 1)] - pts[0];
    return Plane::from_spanning(e);
}

void require_decreasing(const std::vector<double>& radii) {
    for (std::size_t i = 0; i < radii.size(); ++i) {
        if (!(radii[i] > 0.0)) throw std::invalid_argument("radii must be positive");
        if (i > 0 && !(radii[i] < radii[i - 1])) throw std::invalid_argument("radii must be decreasing");
    }
}

}  // namespace

Varifold::Varifold(int n, int d) : n_(n), d_(d) {
    if (n < 1 || d < 0 || d > n) throw std::invalid_argument("varifold: bad dimensions");
}

void Varifold::add(VarifoldAtom atom) {
    if (atom.x.size() != n_ || atom.t.ambient_dim() != n_ || atom.t.dim() != d_)
        throw std::invalid_argument("varifold atom of the wrong dimension");
    if (atom.w < 0.0 || !std::isfinite(atom.w)) throw std::invalid_argument("varifold weights must be positive");
    if (atom.w == 0.0) return;
    atoms_.push_back(std::move(atom));
}

double Varifold::total_weight() const {
    double s = 0.0;
    for (const auto& a : atoms_) s += a.w;
    return s;
}

ChainMeasure Varifold::weight() const {
    ChainMeasure mu;
    mu.ambient_dim = n_;
    for (const auto& a : atoms_) mu.atoms.push_back({a.x, a.w});
    return mu;
}

Varifold var_of_chain(const Chain& p, int k) {
    Varifold v(p.complex()->ambient_dim(), p.dim());
    int current = -1;
    std::optional<Plane> plane;
    for_each_piece(p, k, [&](const std::vector<Point>& pts, int simplex, const GroupElement& g) {
        if (simplex != current) {
            plane = plane_of(p.complex()->points(p.dim(), simplex));
            current = simplex;
        }
        v.add({barycenter(pts), *plane, g.norm() * simplex_volume(pts)});
    });
    return v;
}

double integrate(const Varifold& v, const TestFunction& phi) {
    double s = 0.0;
    for (const auto& a : v.atoms()) s += a.w * phi(a.x, a.t);
    return s;
}

double integrate(const Varifold& v, const std::function<double(const Point&, const Plane&)>& phi) {
    double s = 0.0;
    for (const auto& a : v.atoms()) s += a.w * phi(a.x, a.t);
    return s;
}

Varifold var_pushforward(const LipMap& f, const Varifold& v) {
    if (f.dim() != v.ambient_dim()) throw std::invalid_argument("var_pushforward: map dimension mismatch");
    Varifold out(v.ambient_dim(), v.plane_dim());
    for (const auto& a : v.atoms()) {
        const Eigen::MatrixXd image = f.differential(a.x) * a.t.basis();
        const double j = volume_factor(image);
        if (j == 0.0) continue;
        auto t = Plane::try_from_spanning(image);
        if (!t) continue;
        out.add({f(a.x), *t, a.w * j});
    }
    return out;
}

std::vector<Varifold> var_tangent(const Varifold& v, const Point& a, const std::vector<double>& radii) {
    require_decreasing(radii);
    std::vector<Varifold> out;
    for (double r : radii) {
        Varifold blow(v.ambient_dim(), v.plane_dim());
        const double scale = std::pow(r, -v.plane_dim());
        for (const auto& atom : v.atoms()) {
            Point y = (atom.x - a) / r;
            if (y.norm() < 1.0) blow.add({std::move(y), atom.t, atom.w * scale});
        }
        out.push_back(std::move(blow));
    }
    return out;
}

double var_weak_distance(const Varifold& v, const Varifold& w, const TestDictionary& dict) {
    if (dict.empty()) throw std::invalid_argument("var_weak_distance: empty dictionary");
    if (v.ambient_dim() != w.ambient_dim() || v.plane_dim() != w.plane_dim())
        throw std::invalid_argument("var_weak_distance: varifolds of different type");
    if (dict.ambient_dim() != v.ambient_dim() || dict.plane_dim() != v.plane_dim())
        throw std::invalid_argument("var_weak_distance: dictionary built for a different Grassmannian");
    double best = 0.0;
    for (const auto& phi : dict.functions()) {
        const double diff = std::abs(integrate(v, phi) - integrate(w, phi));
        best = std::max(best, diff / (1.0 + phi.sup_norm(dict.ambient_dim(), dict.plane_dim())));
    }
    return best;
}

std::vector<ProjectionRatio> projection_mass_ratio(const Chain& s, const Point& x, const Plane& t,
                                                   const std::vector<double>& radii, int depth) {
    if (t.ambient_dim() != s.complex()->ambient_dim() || t.dim() != s.dim())
        throw std::invalid_argument("projection_mass_ratio: plane of the wrong type");
    const LipMap proj = LipMap::projection(x, t);
    std::vector<ProjectionRatio> out;
    for (double r : radii) {
        ProjectionRatio row;
        row.radius = r;
        const Chain part = restrict(s, IntervalRegion::inscribed_ball(x, r, depth), depth);
        row.restricted_mass = mass(part);
        for (const auto& [i, g] : part.coefficients()) {
            std::vector<Point> pts;
            for (const auto& p : part.complex()->points(part.dim(), i)) pts.push_back(proj(p));
            row.projected_mass += g.norm() * simplex_volume(pts);
        }
        if (row.restricted_mass > 0.0) {
            row.ratio = row.projected_mass / row.restricted_mass;
        } else {
            row.ratio = std::numeric_limits<double>::quiet_NaN();
            row.error = "zero restricted mass";
        }
        out.push_back(std::move(row));
    }
    return out;
}

double unit_ball_volume(int d) {
    if (d < 0) throw std::invalid_argument("unit_ball_volume: negative dimension");
    return std::pow(std::numbers::pi, 0.5 * d) / std::tgamma(0.5 * d + 1.0);
}

std::vector<double> density_estimates(const Chain& s, const Point& a, const std::vector<double>& radii, int depth) {
    const ChainMeasure mu = induced_measure(s, depth);
    std::vector<double> out;
    for (double r : radii) {
        if (!(r > 0.0)) throw std::invalid_argument("radii must be positive");
        double m = 0.0;
        for (const auto& atom : mu.atoms)
            if ((atom.x - a).norm() < r) m += atom.weight;
        out.push_back(m / (unit_ball_volume(s.dim()) * std::pow(r, s.dim())));
    }
    return out;
}

}  // namespace flatchain
