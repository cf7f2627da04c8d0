#include "flatchain/lipmap.hpp"

#include "flatchain/overlay.hpp"

#include <cmath>
#include <map>
#include <random>
#include <sstream>
#include <stdexcept>

namespace flatchain {

namespace {

constexpr double kFdStep = 1e-6;
constexpr double kDomain = 2.0;

int sort_with_parity(std::vector<int>& v) {
    int sign = 1;
    for (std::size_t i = 1; i < v.size(); ++i)
        for (std::size_t j = i; j > 0 && v[j - 1] > v[j]; --j) {
            std::swap(v[j - 1], v[j]);
            sign = -sign;
        }
    return sign;
}

double op_norm(const Eigen::MatrixXd& m) {
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(m);
    return svd.singularValues().size() ? svd.singularValues()(0) : 0.0;
}

std::vector<double> parse_numbers(std::string_view text) {
    std::vector<double> out;
    std::stringstream ss{std::string(text)};
    std::string item;
    while (std::getline(ss, item, ',')) {
        std::size_t used = 0;
        out.push_back(std::stod(item, &used));
        if (used != item.size()) throw std::invalid_argument("bad map parameter: " + item);
    }
    return out;
}

Plane plane_of(const std::vector<Point>& pts) {
    const auto d = static_cast<Eigen::Index>(pts.size()) - 1;
    Eigen::MatrixXd e(pts[0].size(), d);
    for (Eigen::Index i = 0; i < d; ++i) e.col(i) = pts[static_cast<std::size_t>(i + 1)] - pts[0];
    return Plane::from_spanning(e);
}

// Maps every simplex of `l` through f; coincident image points are merged and
// degenerate images dropped.
struct ImageComplex {
    ComplexPtr complex;
    std::vector<int> vertex_map;
};

ImageComplex push_complex(const LipMap& f, const Complex& l) {
    ImageComplex out;
    std::vector<Point> verts;
    std::map<std::vector<double>, int> index;
    for (std::size_t v = 0; v < l.num_vertices(); ++v) {
        const Point y = f(l.vertex(static_cast<int>(v)));
        std::vector<double> key(y.data(), y.data() + y.size());
        auto [it, fresh] = index.emplace(std::move(key), static_cast<int>(verts.size()));
        if (fresh) verts.push_back(y);
        out.vertex_map.push_back(it->second);
    }
    std::vector<std::vector<std::vector<int>>> by_dim(static_cast<std::size_t>(std::max(l.top_dim(), 0) + 1));
    for (int d = 1; d <= l.top_dim(); ++d)
        for (const auto& s : l.simplices(d)) {
            std::vector<int> ids;
            std::vector<Point> pts;
            for (int v : s.vertices) {
                ids.push_back(out.vertex_map[static_cast<std::size_t>(v)]);
                pts.push_back(verts[static_cast<std::size_t>(ids.back())]);
            }
            std::sort(ids.begin(), ids.end());
            if (std::adjacent_find(ids.begin(), ids.end()) != ids.end()) continue;
            const double diam = simplex_diameter(pts);
            if (diam == 0.0 || simplex_volume(pts) / std::pow(diam, d) < kDegenerateFullness) continue;
            by_dim[static_cast<std::size_t>(d)].push_back(std::move(ids));
        }
    out.complex = Complex::create(f.dim(), std::move(verts), by_dim);
    return out;
}

Pushforward carry(const Chain& pl, const ImageComplex& img, const Chain& fallback) {
    const int d = pl.dim();
    Pushforward out{fallback, 0, {}};
    if (img.complex->top_dim() < d) {
        out.dropped = static_cast<int>(pl.size());
    } else {
        Chain c(img.complex, d, pl.group());
        for (const auto& [i, g] : pl.coefficients()) {
            std::vector<int> ids;
            for (int v : pl.complex()->simplex(d, i).vertices) ids.push_back(img.vertex_map[static_cast<std::size_t>(v)]);
            const int sign = sort_with_parity(ids);
            const auto idx = img.complex->find(d, ids);
            if (!idx) {
                ++out.dropped;
                continue;
            }
            c.add(*idx, g.times(sign));
        }
        out.chain = std::move(c);
    }
    if (!pl.is_zero() && out.dropped == static_cast<int>(pl.size())) {
        out.chain = fallback;
        out.warning = "every image simplex is degenerate; returning the zero chain";
    }
    return out;
}

}  // namespace

LipMap::LipMap(std::string name, int n, Eval f, std::optional<Diff> df, double lip_bound, bool affine)
    : name_(std::move(name)), n_(n), f_(std::move(f)), df_(std::move(df)), lip_(lip_bound), affine_(affine) {
    if (n_ < 1) throw std::invalid_argument("map dimension must be >= 1");
}

Eigen::MatrixXd LipMap::differential(const Point& x) const {
    if (df_) return (*df_)(x);
    Eigen::MatrixXd j(n_, n_);
    for (int k = 0; k < n_; ++k) {
        Point a = x, b = x;
        a(k) += kFdStep;
        b(k) -= kFdStep;
        j.col(k) = (f_(a) - f_(b)) / (2.0 * kFdStep);
    }
    if (!j.allFinite()) throw std::domain_error("differential unavailable at the given point");
    return j;
}

LipMap LipMap::identity(int n) {
    return LipMap("identity", n, [](const Point& x) { return x; },
                  [n](const Point&) { return Eigen::MatrixXd(Eigen::MatrixXd::Identity(n, n)); }, 1.0, true);
}

LipMap LipMap::scale(int n, double c) {
    return LipMap("scale:" + std::to_string(c), n, [c](const Point& x) { return Point(c * x); },
                  [n, c](const Point&) { return Eigen::MatrixXd(c * Eigen::MatrixXd::Identity(n, n)); }, std::abs(c), true);
}

LipMap LipMap::rotation(int n, double theta) {
    if (n < 2) throw std::invalid_argument("rotation needs n >= 2");
    Eigen::MatrixXd r = Eigen::MatrixXd::Identity(n, n);
    r(0, 0) = std::cos(theta);
    r(0, 1) = -std::sin(theta);
    r(1, 0) = std::sin(theta);
    r(1, 1) = std::cos(theta);
    return LipMap("rotation:" + std::to_string(theta), n, [r](const Point& x) { return Point(r * x); },
                  [r](const Point&) { return r; }, 1.0, true);
}

LipMap LipMap::projection(const Point& x, const Plane& t) {
    const Eigen::MatrixXd p = t.projector();
    return LipMap("projection", static_cast<int>(x.size()), [x, p](const Point& y) { return Point(x + p * (y - x)); },
                  [p](const Point&) { return p; }, 1.0, true);
}

LipMap LipMap::polar_wrap() {
    auto f = [](const Point& p) {
        Point y(2);
        y << (1.0 + p(1)) * std::cos(p(0)), (1.0 + p(1)) * std::sin(p(0));
        return y;
    };
    auto df = [](const Point& p) {
        Eigen::MatrixXd j(2, 2);
        j << -(1.0 + p(1)) * std::sin(p(0)), std::cos(p(0)), (1.0 + p(1)) * std::cos(p(0)), std::sin(p(0));
        return j;
    };
    // columns are orthogonal with lengths |1 + y| and 1
    return LipMap("polar_wrap", 2, f, df, std::max(1.0, 1.0 + kDomain));
}

LipMap LipMap::fold(double a) {
    auto f = [a](const Point& p) {
        Point y(2);
        y << std::abs(p(0)), p(1) + a * p(0);
        return y;
    };
    auto df = [a](const Point& p) {
        Eigen::MatrixXd j(2, 2);
        j << (p(0) < 0.0 ? -1.0 : 1.0), 0.0, a, 1.0;
        return j;
    };
    const double lip = 0.5 * (std::abs(a) + std::sqrt(a * a + 4.0));
    return LipMap("fold:" + std::to_string(a), 2, f, df, lip);
}

LipMap LipMap::poly(const std::array<double, 6>& c) {
    auto f = [c](const Point& p) {
        const double x = p(0), y = p(1);
        Point out(2);
        out << x + c[0] * x * x + c[1] * x * y + c[2] * y * y, y + c[3] * x * x + c[4] * x * y + c[5] * y * y;
        return out;
    };
    auto df = [c](const Point& p) {
        const double x = p(0), y = p(1);
        Eigen::MatrixXd j(2, 2);
        j << 1.0 + 2.0 * c[0] * x + c[1] * y, c[1] * x + 2.0 * c[2] * y, 2.0 * c[3] * x + c[4] * y,
            1.0 + c[4] * x + 2.0 * c[5] * y;
        return j;
    };
    // Df is affine in x, so its operator norm is convex and peaks at a corner.
    double lip = 0.0;
    for (double sx : {-kDomain, kDomain})
        for (double sy : {-kDomain, kDomain}) {
            Point corner(2);
            corner << sx, sy;
            lip = std::max(lip, op_norm(df(corner)));
        }
    std::ostringstream name;
    name << "poly:";
    for (std::size_t i = 0; i < 6; ++i) name << (i ? "," : "") << c[i];
    const bool affine = c[0] == 0 && c[1] == 0 && c[2] == 0 && c[3] == 0 && c[4] == 0 && c[5] == 0;
    return LipMap(name.str(), 2, f, df, lip, affine);
}

LipMap LipMap::parse(std::string_view spec, int n) {
    const auto colon = spec.find(':');
    const std::string_view head = spec.substr(0, colon);
    const std::string_view args = colon == std::string_view::npos ? std::string_view{} : spec.substr(colon + 1);
    const auto nums = args.empty() ? std::vector<double>{} : parse_numbers(args);
    auto need = [&](std::size_t k) {
        if (nums.size() != k)
            throw std::invalid_argument("map '" + std::string(head) + "' takes " + std::to_string(k) + " parameter(s)");
    };
    auto planar = [&] {
        if (n != 2) throw std::invalid_argument("map '" + std::string(head) + "' is defined on R^2 only");
    };
    if (head == "identity") {
        need(0);
        return identity(n);
    }
    if (head == "scale") {
        need(1);
        return scale(n, nums[0]);
    }
    if (head == "rotation") {
        need(1);
        return rotation(n, nums[0]);
    }
    if (head == "polar_wrap") {
        need(0);
        planar();
        return polar_wrap();
    }
    if (head == "fold") {
        planar();
        if (nums.empty()) return fold(1.0);
        need(1);
        return fold(nums[0]);
    }
    if (head == "poly") {
        need(6);
        planar();
        return poly({nums[0], nums[1], nums[2], nums[3], nums[4], nums[5]});
    }
    throw std::invalid_argument("unknown map: " + std::string(spec));
}

std::vector<std::string> map_registry() { return {"identity", "scale", "rotation", "polar_wrap", "fold", "poly"}; }

double sampled_lipschitz(const LipMap& f, int pairs, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(-kDomain, kDomain);
    double best = 0.0;
    for (int i = 0; i < pairs; ++i) {
        Point a(f.dim()), b(f.dim());
        for (int k = 0; k < f.dim(); ++k) {
            a(k) = u(rng);
            b(k) = u(rng);
        }
        const double dist = (a - b).norm();
        if (dist > 0.0) best = std::max(best, (f(a) - f(b)).norm() / dist);
    }
    return best;
}

double approx_jacobian(const LipMap& f, const Point& x, const Plane& t) {
    if (t.ambient_dim() != f.dim()) throw std::invalid_argument("approx_jacobian: plane dimension mismatch");
    return volume_factor(f.differential(x) * t.basis());
}

Point AffineApprox::operator()(const Point& x) const {
    const int d = base->top_dim();
    for (std::size_t i = 0; i < base->count(d); ++i) {
        const auto pts = base->points(d, static_cast<int>(i));
        const auto u = barycentric_coordinates(pts, x);
        if (!u || u->minCoeff() < -kGeometryTolerance) continue;
        const auto& verts = base->simplex(d, static_cast<int>(i)).vertices;
        Point y = Point::Zero(images.front().size());
        for (std::size_t k = 0; k < verts.size(); ++k)
            y += (*u)(static_cast<Eigen::Index>(k)) * images[static_cast<std::size_t>(verts[k])];
        return y;
    }
    throw std::out_of_range("point outside the interpolation complex");
}

std::vector<Point> AffineApprox::image_points(int d, int i) const {
    std::vector<Point> out;
    for (int v : base->simplex(d, i).vertices) out.push_back(images[static_cast<std::size_t>(v)]);
    return out;
}

AffineApprox simplexwise_affine(const LipMap& f, const ComplexPtr& k, int levels) {
    AffineApprox a;
    a.base = iterated_subdivision(k, levels);
    a.images.reserve(a.base->num_vertices());
    for (const auto& v : a.base->vertices()) a.images.push_back(f(v));
    return a;
}

double jacobian_l1_error(const LipMap& f, const ComplexPtr& k, int levels) {
    const AffineApprox a = simplexwise_affine(f, k, levels);
    const int d = a.base->top_dim();
    double err = 0.0;
    for (std::size_t i = 0; i < a.base->count(d); ++i) {
        const int ii = static_cast<int>(i);
        const auto pts = a.base->points(d, ii);
        const double vol = a.base->simplex(d, ii).volume;
        const double jbar = simplex_volume(a.image_points(d, ii)) / vol;
        const double j = approx_jacobian(f, barycenter(pts), plane_of(pts));
        err += std::abs(jbar - j) * vol;
    }
    return err;
}

double jacobian_integral(const LipMap& f, const Chain& p, int depth) {
    double total = 0.0;
    int current = -1;
    std::optional<Plane> plane;
    for_each_piece(p, depth, [&](const std::vector<Point>& pts, int simplex, const GroupElement& g) {
        if (simplex != current) {
            plane = plane_of(p.complex()->points(p.dim(), simplex));
            current = simplex;
        }
        total += g.norm() * simplex_volume(pts) * approx_jacobian(f, barycenter(pts), *plane);
    });
    return total;
}

Pushforward pushforward_chain(const LipMap& f, const Chain& p, int k) {
    if (k < 0) throw std::invalid_argument("pushforward: depth must be >= 0");
    if (p.complex()->ambient_dim() != f.dim()) throw std::invalid_argument("pushforward: map dimension mismatch");
    if (p.is_zero()) return {p, 0, {}};
    const auto l = iterated_subdivision(support_complex(p), k);
    const Chain pl = refine(p, l);
    const ImageComplex img = push_complex(f, *l);
    return carry(pl, img, Chain(l, p.dim(), p.group()));
}

std::vector<Pushforward> pushforward_chains(const LipMap& f, const std::vector<Chain>& chains, int k) {
    if (chains.empty()) return {};
    const auto& base = chains.front().complex();
    for (const auto& c : chains)
        if (c.complex() != base) throw std::invalid_argument("pushforward_chains: chains must share one complex");
    const auto l = iterated_subdivision(base, k);
    const ImageComplex img = push_complex(f, *l);
    std::vector<Pushforward> out;
    for (const auto& c : chains) out.push_back(carry(refine(c, l), img, Chain(l, c.dim(), c.group())));
    return out;
}

double rectifiable_approx_error(const Chain& s, const LipMap& f, const Chain& p, int k) {
    if (s.dim() != p.dim()) throw std::invalid_argument("rectifiable_approx_error: dimension mismatch");
    const Chain image = pushforward_chain(f, p, k).chain;
    if (s.is_zero()) return mass(image);
    if (image.is_zero()) return mass(s);
    const Chain ss = refine(s, support_complex(s));
    const auto cr = common_refinement(ss, image);
    return mass(cr.a - cr.b);
}

}  // namespace flatchain
