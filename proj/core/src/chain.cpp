#include "flatchain/chain.hpp"

#include <cctype>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <string>

namespace flatchain {

namespace {

void require_compatible(const Chain& a, const Chain& b) {
    if (a.complex() != b.complex()) throw std::invalid_argument("chains live on different complexes");
    if (a.dim() != b.dim()) throw std::invalid_argument("chains of different dimension");
    if (!(a.group() == b.group())) throw std::invalid_argument("chains over different groups");
}

void visit_recursive(const std::vector<Point>& pts, int depth, int simplex, const GroupElement& g,
                     const std::function<void(const std::vector<Point>&, int, const GroupElement&)>& visit) {
    if (depth == 0) {
        visit(pts, simplex, g);
        return;
    }
    for (const auto& child : subdivide_simplex(pts)) visit_recursive(child, depth - 1, simplex, g, visit);
}

double parse_bound(const std::string& s) {
    std::string t;
    for (char c : s)
        if (!std::isspace(static_cast<unsigned char>(c))) t.push_back(c);
    if (t == "inf" || t == "+inf") return std::numeric_limits<double>::infinity();
    if (t == "-inf") return -std::numeric_limits<double>::infinity();
    std::size_t used = 0;
    const double v = std::stod(t, &used);
    if (used != t.size()) throw std::invalid_argument("bad interval bound: " + s);
    return v;
}

}  // namespace

Chain::Chain(ComplexPtr complex, int dim, Group group)
    : complex_(std::move(complex)), dim_(dim), group_(group) {
    if (!complex_) throw std::invalid_argument("chain needs a complex");
    if (dim_ < 0 || dim_ > complex_->top_dim()) throw std::invalid_argument("chain dimension exceeds complex");
}

Chain Chain::from_values(ComplexPtr complex, int dim, Group group,
                         const std::vector<std::pair<int, double>>& values) {
    Chain c(std::move(complex), dim, group);
    for (const auto& [i, v] : values) c.add(i, group.element(v));
    return c;
}

Chain Chain::fundamental(ComplexPtr complex, int dim, Group group) {
    Chain c(std::move(complex), dim, group);
    for (std::size_t i = 0; i < c.complex_->count(dim); ++i) c.add(static_cast<int>(i), group.element(std::int64_t{1}));
    return c;
}

void Chain::check_index(int simplex) const {
    if (simplex < 0 || static_cast<std::size_t>(simplex) >= complex_->count(dim_))
        throw std::out_of_range("simplex index " + std::to_string(simplex) + " out of range");
}

GroupElement Chain::coefficient(int simplex) const {
    auto it = coeffs_.find(simplex);
    return it == coeffs_.end() ? group_.zero() : it->second;
}

void Chain::add(int simplex, const GroupElement& g) {
    check_index(simplex);
    if (!(g.group() == group_)) throw std::invalid_argument("coefficient from a different group");
    auto it = coeffs_.find(simplex);
    if (it == coeffs_.end()) {
        if (!g.is_zero()) coeffs_.emplace(simplex, g);
        return;
    }
    it->second += g;
    if (it->second.is_zero()) coeffs_.erase(it);
}

Chain Chain::operator-() const {
    Chain out(complex_, dim_, group_);
    for (const auto& [i, g] : coeffs_) out.coeffs_.emplace(i, -g);
    return out;
}

Chain Chain::times(std::int64_t k) const {
    Chain out(complex_, dim_, group_);
    for (const auto& [i, g] : coeffs_) out.add(i, g.times(k));
    return out;
}

Chain operator+(const Chain& a, const Chain& b) {
    require_compatible(a, b);
    Chain out = a;
    for (const auto& [i, g] : b.coeffs_) out.add(i, g);
    return out;
}

Chain operator-(const Chain& a, const Chain& b) { return a + (-b); }

bool operator==(const Chain& a, const Chain& b) {
    return a.complex_ == b.complex_ && a.dim_ == b.dim_ && a.group_ == b.group_ && a.coeffs_ == b.coeffs_;
}

double mass(const Chain& p) {
    double m = 0.0;
    for (const auto& [i, g] : p.coefficients()) m += g.norm() * p.complex()->simplex(p.dim(), i).volume;
    return m;
}

Chain boundary(const Chain& p) {
    if (p.dim() < 1) throw std::invalid_argument("boundary of a 0-chain");
    Chain out(p.complex(), p.dim() - 1, p.group());
    for (const auto& [i, g] : p.coefficients())
        for (const auto& inc : p.complex()->boundary(p.dim(), i)) out.add(inc.index, g.times(inc.sign));
    return out;
}

std::vector<int> support(const Chain& p) {
    std::vector<int> s;
    s.reserve(p.size());
    for (const auto& [i, g] : p.coefficients()) s.push_back(i);
    return s;
}

ComplexPtr support_complex(const Chain& p) {
    const auto s = support(p);
    return subcomplex(p.complex(), p.dim(), s);
}

Chain refine(const Chain& p, const ComplexPtr& descendant) {
    if (descendant == p.complex()) return p;
    std::vector<const Complex*> path;
    for (const Complex* c = descendant.get(); c != p.complex().get(); c = c->parent().get()) {
        if (c == nullptr) throw std::invalid_argument("refine: target complex does not descend from the chain's complex");
        path.push_back(c);
    }
    const int d = p.dim();
    std::map<int, GroupElement> current = p.coefficients();
    for (auto it = path.rbegin(); it != path.rend(); ++it) {
        const Complex& c = **it;
        std::map<int, GroupElement> next;
        for (std::size_t j = 0; j < c.count(d); ++j) {
            const Carrier& car = c.carrier(d, static_cast<int>(j));
            if (car.dim != d) continue;
            auto found = current.find(car.index);
            if (found == current.end()) continue;
            next.emplace(static_cast<int>(j), found->second.times(car.sign));
        }
        current = std::move(next);
    }
    Chain out(descendant, d, p.group());
    for (const auto& [i, g] : current) out.add(i, g);
    return out;
}

bool Box::contains(const Point& x) const {
    for (Eigen::Index k = 0; k < x.size(); ++k)
        if (!(x(k) > lo(k) && x(k) < hi(k))) return false;
    return true;
}

IntervalRegion::IntervalRegion(std::vector<Box> boxes) : boxes_(std::move(boxes)) {
    for (const auto& b : boxes_) {
        if (b.lo.size() != b.hi.size()) throw std::invalid_argument("box bounds of different dimension");
        for (Eigen::Index k = 0; k < b.lo.size(); ++k)
            if (!(b.lo(k) < b.hi(k))) throw std::invalid_argument("empty box");
    }
}

IntervalRegion IntervalRegion::everything(int n) {
    const double inf = std::numeric_limits<double>::infinity();
    return IntervalRegion({Box{Point::Constant(n, -inf), Point::Constant(n, inf)}});
}

IntervalRegion IntervalRegion::parse(std::string_view text) {
    std::string s(text);
    // accept the typographic minus sign
    for (std::size_t pos; (pos = s.find("\xE2\x88\x92")) != std::string::npos;) s.replace(pos, 3, "-");
    std::vector<double> lo, hi;
    std::stringstream axes(s);
    std::string axis;
    while (std::getline(axes, axis, ';')) {
        const auto comma = axis.find(',');
        if (comma == std::string::npos) throw std::invalid_argument("box axis needs lo,hi: " + axis);
        lo.push_back(parse_bound(axis.substr(0, comma)));
        hi.push_back(parse_bound(axis.substr(comma + 1)));
    }
    if (lo.empty()) throw std::invalid_argument("empty box specification");
    Box b{Eigen::Map<Point>(lo.data(), static_cast<Eigen::Index>(lo.size())),
          Eigen::Map<Point>(hi.data(), static_cast<Eigen::Index>(hi.size()))};
    return IntervalRegion({b});
}

IntervalRegion IntervalRegion::inscribed_ball(const Point& center, double radius, int depth) {
    if (radius <= 0.0) throw std::invalid_argument("ball radius must be positive");
    const auto n = center.size();
    if (n == 1) return IntervalRegion({Box{center.array() - radius, center.array() + radius}});
    const int strips = 1 << depth;
    const double w = 2.0 * radius / strips;
    // Strips overlap by a hair so atoms on a shared strip wall are not lost.
    const double eps = 1e-12 * radius;
    const double side_scale = 1.0 / std::sqrt(static_cast<double>(n - 1));
    std::vector<Box> boxes;
    for (int k = 0; k < strips; ++k) {
        const double a = -radius + k * w;
        const double b = a + w;
        const double t = std::max(std::abs(a), std::abs(b));
        const double rho = std::sqrt(std::max(0.0, radius * radius - t * t));
        if (rho <= 0.0) continue;
        Box box{center, center};
        box.lo(0) = center(0) + a - eps;
        box.hi(0) = center(0) + b + eps;
        for (Eigen::Index j = 1; j < n; ++j) {
            box.lo(j) = center(j) - rho * side_scale;
            box.hi(j) = center(j) + rho * side_scale;
        }
        boxes.push_back(std::move(box));
    }
    return IntervalRegion(std::move(boxes));
}

bool IntervalRegion::contains(const Point& x) const {
    for (const auto& b : boxes_)
        if (b.contains(x)) return true;
    return false;
}

Chain restrict(const Chain& p, const IntervalRegion& x, int depth) {
    if (depth < 0) throw std::invalid_argument("restrict: depth must be >= 0");
    if (p.is_zero()) return Chain(p.complex(), p.dim(), p.group());
    const auto fine = iterated_subdivision(support_complex(p), depth);
    const Chain pf = refine(p, fine);
    Chain out(fine, p.dim(), p.group());
    for (const auto& [i, g] : pf.coefficients())
        if (x.contains(fine->barycenter(p.dim(), i))) out.add(i, g);
    return out;
}

double ChainMeasure::total_weight() const {
    double s = 0.0;
    for (const auto& a : atoms) s += a.weight;
    return s;
}

double ChainMeasure::integrate(const std::function<double(const Point&)>& phi) const {
    double s = 0.0;
    for (const auto& a : atoms) s += a.weight * phi(a.x);
    return s;
}

double ChainMeasure::of(const IntervalRegion& x) const {
    double s = 0.0;
    for (const auto& a : atoms)
        if (x.contains(a.x)) s += a.weight;
    return s;
}

void for_each_piece(const Chain& p, int depth,
                    const std::function<void(const std::vector<Point>&, int, const GroupElement&)>& visit) {
    if (depth < 0) throw std::invalid_argument("depth must be >= 0");
    for (const auto& [i, g] : p.coefficients()) visit_recursive(p.complex()->points(p.dim(), i), depth, i, g, visit);
}

ChainMeasure induced_measure(const Chain& p, int depth) {
    ChainMeasure mu;
    mu.ambient_dim = p.complex()->ambient_dim();
    for_each_piece(p, depth, [&](const std::vector<Point>& pts, int, const GroupElement& g) {
        mu.atoms.push_back({barycenter(pts), g.norm() * simplex_volume(pts)});
    });
    return mu;
}

double measure_weak_distance(const ChainMeasure& mu, const ChainMeasure& nu, const TestDictionary& dict) {
    double best = 0.0;
    bool any = false;
    for (const auto& f : dict.functions()) {
        if (!f.spatial_only()) continue;
        any = true;
        double a = 0.0, b = 0.0;
        for (const auto& atom : mu.atoms) a += atom.weight * f.spatial(atom.x);
        for (const auto& atom : nu.atoms) b += atom.weight * f.spatial(atom.x);
        best = std::max(best, std::abs(a - b));
    }
    if (!any) throw std::invalid_argument("measure_weak_distance: dictionary has no x-only functions");
    return best;
}

}  // namespace flatchain
