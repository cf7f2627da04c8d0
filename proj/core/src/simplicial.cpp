#include "flatchain/simplicial.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <map>
#include <stdexcept>
#include <string>

namespace flatchain {

namespace {

Eigen::MatrixXd edge_matrix(std::span<const Point> pts) {
    const auto n = pts.front().size();
    const auto d = static_cast<Eigen::Index>(pts.size()) - 1;
    Eigen::MatrixXd e(n, d);
    for (Eigen::Index k = 0; k < d; ++k) e.col(k) = pts[static_cast<std::size_t>(k + 1)] - pts[0];
    return e;
}

double factorial(int d) {
    double f = 1.0;
    for (int i = 2; i <= d; ++i) f *= i;
    return f;
}

// Parity of the permutation that sorts `v`; sorts in place.
int sort_with_parity(std::vector<int>& v) {
    int sign = 1;
    for (std::size_t i = 1; i < v.size(); ++i)
        for (std::size_t j = i; j > 0 && v[j - 1] > v[j]; --j) {
            std::swap(v[j - 1], v[j]);
            sign = -sign;
        }
    return sign;
}

}  // namespace

double simplex_volume(std::span<const Point> pts) {
    if (pts.size() <= 1) return 1.0;
    const int d = static_cast<int>(pts.size()) - 1;
    Eigen::MatrixXd e = edge_matrix(pts);
    double det = (e.transpose() * e).determinant();
    return std::sqrt(std::max(det, 0.0)) / factorial(d);
}

double simplex_diameter(std::span<const Point> pts) {
    double diam = 0.0;
    for (std::size_t i = 0; i < pts.size(); ++i)
        for (std::size_t j = i + 1; j < pts.size(); ++j) diam = std::max(diam, (pts[i] - pts[j]).norm());
    return diam;
}

double fullness(std::span<const Point> pts) {
    if (pts.size() < 2) throw std::invalid_argument("fullness needs a simplex of dimension >= 1");
    const double diam = simplex_diameter(pts);
    if (diam == 0.0) return 0.0;
    return simplex_volume(pts) / std::pow(diam, static_cast<double>(pts.size() - 1));
}

Point barycenter(std::span<const Point> pts) {
    Point c = Point::Zero(pts.front().size());
    for (const auto& p : pts) c += p;
    return c / static_cast<double>(pts.size());
}

std::optional<Eigen::VectorXd> barycentric_coordinates(std::span<const Point> pts, const Point& p, double tol) {
    const auto d = static_cast<Eigen::Index>(pts.size()) - 1;
    Eigen::VectorXd lambda(d + 1);
    if (d == 0) {
        if ((p - pts[0]).norm() > tol) return std::nullopt;
        lambda(0) = 1.0;
        return lambda;
    }
    Eigen::MatrixXd e = edge_matrix(pts);
    Eigen::VectorXd rhs = p - pts[0];
    Eigen::VectorXd mu = (e.transpose() * e).ldlt().solve(e.transpose() * rhs);
    if ((e * mu - rhs).norm() > tol) return std::nullopt;
    lambda(0) = 1.0 - mu.sum();
    lambda.tail(d) = mu;
    return lambda;
}

bool in_closed_simplex(std::span<const Point> pts, const Point& p, double tol) {
    auto lambda = barycentric_coordinates(pts, p, tol);
    if (!lambda) return false;
    const double scale = std::max(simplex_diameter(pts), 1e-300);
    return lambda->minCoeff() >= -tol / scale;
}

bool in_relative_interior(std::span<const Point> pts, const Point& p, double tol) {
    auto lambda = barycentric_coordinates(pts, p, tol);
    if (!lambda) return false;
    if (pts.size() == 1) return true;
    const double scale = std::max(simplex_diameter(pts), 1e-300);
    return lambda->minCoeff() > tol / scale;
}

int relative_orientation(std::span<const Point> parent, std::span<const Point> child) {
    if (parent.size() != child.size()) throw std::invalid_argument("relative_orientation: dimension mismatch");
    if (parent.size() == 1) return 1;
    const double det = (edge_matrix(parent).transpose() * edge_matrix(child)).determinant();
    return det >= 0.0 ? 1 : -1;
}

const std::vector<std::vector<std::pair<int, int>>>& subdivision_pattern(int d) {
    static std::map<int, std::vector<std::vector<std::pair<int, int>>>> cache;
    auto it = cache.find(d);
    if (it != cache.end()) return it->second;

    // Maximal chains of nested intervals [i,i] < ... < [0,d], each step
    // widening the interval by one on either side.
    std::vector<std::vector<std::pair<int, int>>> out;
    std::vector<std::pair<int, int>> chain;
    std::function<void(int, int)> grow = [&](int lo, int hi) {
        chain.emplace_back(lo, hi);
        if (lo == 0 && hi == d) {
            out.push_back(chain);
        } else {
            if (lo > 0) grow(lo - 1, hi);
            if (hi < d) grow(lo, hi + 1);
        }
        chain.pop_back();
    };
    for (int i = 0; i <= d; ++i) grow(i, i);
    return cache.emplace(d, std::move(out)).first->second;
}

std::vector<std::vector<Point>> subdivide_simplex(std::span<const Point> pts) {
    const int d = static_cast<int>(pts.size()) - 1;
    const auto& pattern = subdivision_pattern(d);
    // The midpoint order of a complex (span first) restricted to one simplex
    // agrees with chain order, so each child stays in its induced order.
    std::vector<std::vector<Point>> children;
    children.reserve(pattern.size());
    for (const auto& child : pattern) {
        std::vector<Point> c;
        c.reserve(child.size());
        for (auto [i, j] : child)
            c.push_back(0.5 * (pts[static_cast<std::size_t>(i)] + pts[static_cast<std::size_t>(j)]));
        children.push_back(std::move(c));
    }
    return children;
}

std::size_t Complex::VertexListHash::operator()(const std::vector<int>& v) const noexcept {
    std::size_t h = 1469598103934665603ull;
    for (int x : v) {
        h ^= static_cast<std::size_t>(x) + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
    }
    return h;
}

class ComplexBuilder {
public:
    ComplexBuilder(int n, std::vector<Point> vertices) : c_(new Complex()) {
        c_->n_ = n;
        for (const auto& v : vertices)
            if (v.size() != n) throw std::invalid_argument("vertex coordinate count does not match ambient dimension");
        c_->vertices_ = std::move(vertices);
        // 0-simplex indices coincide with vertex indices.
        for (std::size_t v = 0; v < c_->vertices_.size(); ++v) insert({static_cast<int>(v)}, {}, {});
    }

    // Inserts a sorted vertex list and any missing faces. Returns the index.
    int insert(const std::vector<int>& sorted, const Carrier& self, const Carrier& faces) {
        const int d = static_cast<int>(sorted.size()) - 1;
        ensure_dim(d);
        auto& lookup = c_->lookup_[static_cast<std::size_t>(d)];
        if (auto it = lookup.find(sorted); it != lookup.end()) return it->second;
        if (d >= 1) {
            std::vector<int> facet(sorted.size() - 1);
            for (std::size_t skip = 0; skip < sorted.size(); ++skip) {
                std::size_t w = 0;
                for (std::size_t k = 0; k < sorted.size(); ++k)
                    if (k != skip) facet[w++] = sorted[k];
                insert(facet, faces, faces);
            }
        }
        Simplex s;
        s.vertices = sorted;
        std::vector<Point> pts;
        pts.reserve(sorted.size());
        for (int v : sorted) pts.push_back(c_->vertices_[static_cast<std::size_t>(v)]);
        s.volume = simplex_volume(pts);
        s.diameter = simplex_diameter(pts);
        if (d >= 1 && (s.diameter == 0.0 || s.volume / std::pow(s.diameter, d) < kDegenerateFullness))
            throw std::invalid_argument("degenerate " + std::to_string(d) + "-simplex");
        auto& list = c_->simplices_[static_cast<std::size_t>(d)];
        const int idx = static_cast<int>(list.size());
        list.push_back(std::move(s));
        lookup.emplace(sorted, idx);
        c_->carriers_[static_cast<std::size_t>(d)].push_back(self);
        return idx;
    }

    int insert_checked(std::vector<int> verts, const Carrier& self, const Carrier& faces) {
        std::sort(verts.begin(), verts.end());
        if (std::adjacent_find(verts.begin(), verts.end()) != verts.end())
            throw std::invalid_argument("simplex with repeated vertex");
        for (int v : verts)
            if (v < 0 || static_cast<std::size_t>(v) >= c_->vertices_.size())
                throw std::invalid_argument("vertex index out of range: " + std::to_string(v));
        if (static_cast<int>(verts.size()) - 1 > c_->n_)
            throw std::invalid_argument("simplex dimension exceeds ambient dimension");
        return insert(verts, self, faces);
    }

    const std::vector<Point>& vertices() const { return c_->vertices_; }
    std::size_t dims() const { return c_->simplices_.size(); }
    std::size_t count(std::size_t d) const { return c_->simplices_[d].size(); }
    const std::vector<int>& simplex_vertices(std::size_t d, std::size_t i) const {
        return c_->simplices_[d][i].vertices;
    }
    void set_carrier(std::size_t d, std::size_t i, const Carrier& c) { c_->carriers_[d][i] = c; }

    ComplexPtr finish(ComplexPtr parent) {
        auto& c = *c_;
        c.parent_ = std::move(parent);
        c.depth_ = c.parent_ ? c.parent_->depth_ + 1 : 0;
        const std::size_t dims = c.simplices_.size();
        c.boundary_.assign(dims, {});
        c.cofaces_.assign(dims, {});
        for (std::size_t d = 0; d < dims; ++d) c.cofaces_[d].assign(c.simplices_[d].size(), {});
        for (std::size_t d = 1; d < dims; ++d) {
            auto& bd = c.boundary_[d];
            bd.resize(c.simplices_[d].size());
            std::vector<int> facet(d);
            for (std::size_t i = 0; i < c.simplices_[d].size(); ++i) {
                const auto& verts = c.simplices_[d][i].vertices;
                for (std::size_t skip = 0; skip <= d; ++skip) {
                    std::size_t w = 0;
                    for (std::size_t k = 0; k <= d; ++k)
                        if (k != skip) facet[w++] = verts[k];
                    const int f = c.lookup_[d - 1].at(facet);
                    const int sign = (skip % 2 == 0) ? 1 : -1;
                    bd[i].push_back({f, sign});
                    c.cofaces_[d - 1][static_cast<std::size_t>(f)].push_back({static_cast<int>(i), sign});
                }
            }
        }
        return ComplexPtr(c_.release());
    }

private:
    void ensure_dim(int d) {
        auto& c = *c_;
        while (static_cast<int>(c.simplices_.size()) <= d) {
            c.simplices_.emplace_back();
            c.lookup_.emplace_back();
            c.carriers_.emplace_back();
        }
    }

    std::unique_ptr<Complex> c_;
};

ComplexPtr Complex::create(int ambient_dim, std::vector<Point> vertices,
                           const std::vector<std::vector<std::vector<int>>>& simplices_by_dim) {
    if (ambient_dim < 1) throw std::invalid_argument("ambient dimension must be >= 1");
    const auto nv = vertices.size();
    ComplexBuilder b(ambient_dim, std::move(vertices));
    for (std::size_t d = 1; d < simplices_by_dim.size(); ++d)
        for (const auto& s : simplices_by_dim[d]) {
            if (s.size() != d + 1) throw std::invalid_argument("simplex listed under the wrong dimension");
            b.insert_checked(s, {}, {});
        }
    if (!simplices_by_dim.empty())
        for (const auto& s : simplices_by_dim[0])
            if (s.size() != 1 || s[0] < 0 || static_cast<std::size_t>(s[0]) >= nv)
                throw std::invalid_argument("bad 0-simplex entry");
    return b.finish(nullptr);
}

std::size_t Complex::count(int d) const {
    if (d < 0 || d > top_dim()) return 0;
    return simplices_[static_cast<std::size_t>(d)].size();
}

const std::vector<Simplex>& Complex::simplices(int d) const {
    static const std::vector<Simplex> none;
    if (d < 0 || d > top_dim()) return none;
    return simplices_[static_cast<std::size_t>(d)];
}

std::optional<int> Complex::find(int d, std::span<const int> sorted_vertices) const {
    if (d < 0 || d > top_dim()) return std::nullopt;
    const auto& lookup = lookup_[static_cast<std::size_t>(d)];
    auto it = lookup.find(std::vector<int>(sorted_vertices.begin(), sorted_vertices.end()));
    if (it == lookup.end()) return std::nullopt;
    return it->second;
}

std::vector<Point> Complex::points(int d, int i) const {
    const auto& s = simplex(d, i);
    std::vector<Point> pts;
    pts.reserve(s.vertices.size());
    for (int v : s.vertices) pts.push_back(vertex(v));
    return pts;
}

Point Complex::barycenter(int d, int i) const {
    const auto pts = points(d, i);
    return flatchain::barycenter(pts);
}

std::span<const Incidence> Complex::boundary(int d, int i) const {
    if (d < 1 || d > top_dim()) throw std::out_of_range("boundary of a simplex needs 1 <= d <= top_dim");
    return boundary_[static_cast<std::size_t>(d)][static_cast<std::size_t>(i)];
}

std::span<const Incidence> Complex::cofaces(int d, int i) const {
    if (d < 0 || d > top_dim()) throw std::out_of_range("cofaces: dimension out of range");
    return cofaces_[static_cast<std::size_t>(d)][static_cast<std::size_t>(i)];
}

const Carrier& Complex::carrier(int d, int i) const {
    return carriers_.at(static_cast<std::size_t>(d)).at(static_cast<std::size_t>(i));
}

bool Complex::boundary_squares_to_zero() const {
    for (int d = 2; d <= top_dim(); ++d) {
        for (std::size_t i = 0; i < count(d); ++i) {
            std::map<int, int> signed_sum;
            std::map<int, int> parity;
            for (const auto& f : boundary(d, static_cast<int>(i)))
                for (const auto& g : boundary(d - 1, f.index)) {
                    signed_sum[g.index] += f.sign * g.sign;
                    parity[g.index] ^= 1;
                }
            for (const auto& [idx, v] : signed_sum)
                if (v != 0) return false;
            for (const auto& [idx, v] : parity)
                if (v != 0) return false;
        }
    }
    return true;
}

bool Complex::interiors_disjoint(double tol) const {
    const int d = top_dim();
    if (d < 1) return true;
    const auto& top = simplices(d);
    std::vector<std::vector<Point>> pts(top.size());
    std::vector<Point> centers(top.size());
    for (std::size_t i = 0; i < top.size(); ++i) {
        pts[i] = points(d, static_cast<int>(i));
        centers[i] = flatchain::barycenter(pts[i]);
    }
    for (std::size_t i = 0; i < top.size(); ++i)
        for (std::size_t j = 0; j < top.size(); ++j) {
            if (i == j) continue;
            if ((centers[i] - centers[j]).norm() > top[i].diameter + top[j].diameter) continue;
            if (in_relative_interior(pts[j], centers[i], tol)) return false;
        }
    return true;
}

double mesh(const Complex& k) {
    if (k.empty()) throw std::invalid_argument("mesh of an empty complex");
    double m = 0.0;
    for (const auto& s : k.simplices(1)) m = std::max(m, s.diameter);
    return m;
}

double fullness(const Complex& k, int d, int i) {
    if (d < 1) throw std::invalid_argument("fullness needs a simplex of dimension >= 1");
    const auto& s = k.simplex(d, i);
    if (s.diameter == 0.0) throw std::invalid_argument("fullness of a degenerate simplex");
    return s.volume / std::pow(s.diameter, d);
}

ComplexPtr standard_subdivision(const ComplexPtr& kp) {
    const Complex& k = *kp;
    const auto nv = k.num_vertices();
    const auto& edges = k.simplices(1);

    std::vector<int> order(edges.size());
    for (std::size_t e = 0; e < edges.size(); ++e) order[e] = static_cast<int>(e);
    std::sort(order.begin(), order.end(), [&](int a, int b) {
        const auto& ea = edges[static_cast<std::size_t>(a)].vertices;
        const auto& eb = edges[static_cast<std::size_t>(b)].vertices;
        const int sa = ea[1] - ea[0];
        const int sb = eb[1] - eb[0];
        if (sa != sb) return sa < sb;
        return ea < eb;
    });

    std::vector<Point> verts(k.vertices());
    verts.reserve(nv + edges.size());
    std::vector<int> midpoint(edges.size());
    for (int e : order) {
        const auto& ev = edges[static_cast<std::size_t>(e)].vertices;
        midpoint[static_cast<std::size_t>(e)] = static_cast<int>(verts.size());
        verts.push_back(0.5 * (k.vertex(ev[0]) + k.vertex(ev[1])));
    }

    ComplexBuilder b(k.ambient_dim(), std::move(verts));
    const auto& new_vertices = b.vertices();
    for (int d = 0; d <= k.top_dim(); ++d) {
        const auto& pattern = subdivision_pattern(d);
        for (std::size_t i = 0; i < k.count(d); ++i) {
            const auto& sv = k.simplex(d, static_cast<int>(i)).vertices;
            const auto parent_pts = k.points(d, static_cast<int>(i));
            for (const auto& child : pattern) {
                std::vector<int> ids;
                ids.reserve(child.size());
                for (auto [p, q] : child) {
                    if (p == q) {
                        ids.push_back(sv[static_cast<std::size_t>(p)]);
                    } else {
                        const int pair[2] = {sv[static_cast<std::size_t>(p)], sv[static_cast<std::size_t>(q)]};
                        ids.push_back(midpoint[static_cast<std::size_t>(*k.find(1, pair))]);
                    }
                }
                sort_with_parity(ids);
                int sign = 1;
                if (d >= 1) {
                    std::vector<Point> child_pts;
                    child_pts.reserve(ids.size());
                    for (int v : ids) child_pts.push_back(new_vertices[static_cast<std::size_t>(v)]);
                    sign = relative_orientation(parent_pts, child_pts);
                }
                const int di = static_cast<int>(i);
                b.insert(ids, {d, di, sign}, {d, di, 0});
            }
        }
    }
    for (std::size_t v = 0; v < nv; ++v) b.set_carrier(0, v, {0, static_cast<int>(v), 1});
    for (std::size_t e = 0; e < edges.size(); ++e)
        b.set_carrier(0, static_cast<std::size_t>(midpoint[e]), {1, static_cast<int>(e), 0});
    return b.finish(kp);
}

ComplexPtr iterated_subdivision(const ComplexPtr& k, int levels) {
    if (levels < 0) throw std::invalid_argument("subdivision levels must be >= 0");
    ComplexPtr cur = k;
    for (int m = 0; m < levels; ++m) cur = standard_subdivision(cur);
    return cur;
}

double fullness_floor(const ComplexPtr& k, int m_max) {
    if (m_max < 1) throw std::invalid_argument("fullness_floor needs m_max >= 1");
    double floor = 1.0;
    ComplexPtr cur = k;
    for (int m = 1; m <= m_max; ++m) {
        cur = standard_subdivision(cur);
        for (int d = 1; d <= cur->top_dim(); ++d)
            for (std::size_t i = 0; i < cur->count(d); ++i)
                floor = std::min(floor, fullness(*cur, d, static_cast<int>(i)));
    }
    return floor;
}

ComplexPtr subcomplex(const ComplexPtr& kp, int d, std::span<const int> indices) {
    const Complex& k = *kp;
    std::vector<int> used;
    for (int i : indices) {
        const auto& s = k.simplex(d, i);
        used.insert(used.end(), s.vertices.begin(), s.vertices.end());
    }
    std::sort(used.begin(), used.end());
    used.erase(std::unique(used.begin(), used.end()), used.end());
    std::vector<int> renumber(k.num_vertices(), -1);
    std::vector<Point> verts;
    verts.reserve(used.size());
    for (std::size_t j = 0; j < used.size(); ++j) {
        renumber[static_cast<std::size_t>(used[j])] = static_cast<int>(j);
        verts.push_back(k.vertex(used[j]));
    }
    ComplexBuilder b(k.ambient_dim(), std::move(verts));
    for (int i : indices) {
        std::vector<int> ids;
        for (int v : k.simplex(d, i).vertices) ids.push_back(renumber[static_cast<std::size_t>(v)]);
        b.insert(ids, {}, {});
    }
    // Renumbering preserves vertex order, so every simplex keeps its orientation.
    for (std::size_t dd = 0; dd < b.dims(); ++dd)
        for (std::size_t i = 0; i < b.count(dd); ++i) {
            std::vector<int> orig;
            for (int v : b.simplex_vertices(dd, i)) orig.push_back(used[static_cast<std::size_t>(v)]);
            b.set_carrier(dd, i, {static_cast<int>(dd), *k.find(static_cast<int>(dd), orig), 1});
        }
    return b.finish(kp);
}

std::optional<int> ancestor_distance(const ComplexPtr& descendant, const Complex* ancestor) {
    int steps = 0;
    for (const Complex* c = descendant.get(); c != nullptr; c = c->parent().get(), ++steps)
        if (c == ancestor) return steps;
    return std::nullopt;
}

}  // namespace flatchain
