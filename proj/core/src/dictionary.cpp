#include "flatchain/dictionary.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace flatchain {

namespace {

void combinations(int n, int d, int start, std::vector<int>& current, std::vector<std::vector<int>>& out) {
    if (static_cast<int>(current.size()) == d) {
        out.push_back(current);
        return;
    }
    for (int i = start; i < n; ++i) {
        current.push_back(i);
        combinations(n, d, i + 1, current, out);
        current.pop_back();
    }
}

std::vector<PlaneFactor> plane_factors(int n, int d) {
    std::vector<PlaneFactor> out;
    out.push_back(PlaneFactor{});
    if (d == 0 || d == n) return out;
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j) {
            PlaneFactor f;
            f.kind = PlaneFactor::Kind::ProjectorEntry;
            f.row = i;
            f.col = j;
            out.push_back(f);
        }
    std::vector<std::vector<int>> axes;
    std::vector<int> current;
    combinations(n, d, 0, current, axes);
    for (const auto& a : axes) {
        PlaneFactor f;
        f.kind = PlaneFactor::Kind::DistanceToReference;
        f.reference = Plane::coordinate(n, a).projector();
        f.col = static_cast<int>(out.size());
        out.push_back(f);
    }
    return out;
}

std::vector<Point> grid_centers(int n) {
    std::vector<Point> centers;
    const double ticks[] = {-2.0, -1.0, 0.0, 1.0, 2.0};
    if (n == 1) {
        for (double t : ticks) centers.push_back(Point::Constant(1, t));
        return centers;
    }
    for (double y : ticks)
        for (double x : ticks) {
            Point c = Point::Zero(n);
            c(0) = x;
            c(1) = y;
            centers.push_back(c);
        }
    return centers;
}

}  // namespace

double PlaneFactor::operator()(const Plane& t) const {
    switch (kind) {
    case Kind::One: return 1.0;
    case Kind::ProjectorEntry: return t.projector()(row, col);
    case Kind::DistanceToReference: return 0.5 * (t.projector() - reference).squaredNorm();
    }
    return 0.0;
}

double PlaneFactor::sup_norm(int n, int d) const {
    switch (kind) {
    case Kind::One: return 1.0;
    case Kind::ProjectorEntry: return row == col ? 1.0 : 0.5;
    case Kind::DistanceToReference: return static_cast<double>(d - std::max(0, 2 * d - n));
    }
    return 0.0;
}

std::string PlaneFactor::describe() const {
    switch (kind) {
    case Kind::One: return "1";
    case Kind::ProjectorEntry: return "P" + std::to_string(row) + std::to_string(col);
    case Kind::DistanceToReference: return "dist2_ref";
    }
    return "?";
}

double TestFunction::spatial(const Point& x) const {
    const double s = (x - center).norm() / radius;
    if (s >= 1.0) return 0.0;
    if (bump == BumpKind::Tent) return 1.0 - s;
    const double u = 1.0 - s * s;
    return u * u;
}

double TestFunction::operator()(const Point& x, const Plane& t) const {
    const double s = spatial(x);
    return s == 0.0 ? 0.0 : s * factor(t);
}

double TestFunction::sup_norm(int n, int d) const { return factor.sup_norm(n, d); }

double TestFunction::lipschitz_x() const {
    if (bump == BumpKind::Tent) return 1.0 / radius;
    // max of |d/ds (1 - s^2)^2| on [0, 1] is 8 / (3 sqrt 3)
    return 8.0 / (3.0 * std::sqrt(3.0)) / radius;
}

TestDictionary TestDictionary::standard(int n, int d) {
    if (n < 1 || d < 0 || d > n) throw std::invalid_argument("dictionary: bad dimensions");
    TestDictionary dict;
    dict.id_ = "default";
    dict.n_ = n;
    dict.d_ = d;
    const auto factors = plane_factors(n, d);
    for (const auto& c : grid_centers(n))
        for (const auto& f : factors) dict.functions_.push_back(TestFunction{c, 1.0, BumpKind::Smooth, f});
    return dict;
}

TestDictionary TestDictionary::tents(std::vector<Point> centers, double radius, int n, int d) {
    if (radius <= 0.0) throw std::invalid_argument("dictionary: radius must be positive");
    TestDictionary dict;
    dict.id_ = "tents";
    dict.n_ = n;
    dict.d_ = d;
    for (auto& c : centers) {
        if (c.size() != n) throw std::invalid_argument("dictionary: center dimension mismatch");
        dict.functions_.push_back(TestFunction{std::move(c), radius, BumpKind::Tent, PlaneFactor{}});
    }
    return dict;
}

TestDictionary TestDictionary::by_name(std::string_view name, int n, int d) {
    if (name == "default") return standard(n, d);
    if (name == "tents") {
        std::vector<Point> centers;
        for (const auto& c : grid_centers(n)) centers.push_back(c);
        return tents(std::move(centers), 1.0, n, d);
    }
    throw std::invalid_argument("unknown dictionary: " + std::string(name));
}

TestDictionary TestDictionary::spatial() const {
    TestDictionary out;
    out.id_ = id_ + "/x";
    out.n_ = n_;
    out.d_ = d_;
    for (const auto& f : functions_)
        if (f.spatial_only()) out.functions_.push_back(f);
    return out;
}

double TestDictionary::support_radius() const {
    double r = 0.0;
    for (const auto& f : functions_) r = std::max(r, f.center.norm() + f.radius);
    return r;
}

std::string TestDictionary::describe() const {
    std::ostringstream os;
    os << id_ << " (" << functions_.size() << " functions, n=" << n_ << ", d=" << d_
       << ", support radius " << support_radius() << ")";
    return os.str();
}

}  // namespace flatchain
