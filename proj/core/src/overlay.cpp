#include "flatchain/overlay.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>
#include <unordered_map>

namespace flatchain {

namespace {

struct CellKey {
    std::vector<long long> c;
    bool operator==(const CellKey&) const = default;
};

struct CellHash {
    std::size_t operator()(const CellKey& k) const noexcept {
        std::size_t h = 0xcbf29ce484222325ull;
        for (long long x : k.c) h = (h ^ static_cast<std::size_t>(x)) * 0x100000001b3ull;
        return h;
    }
};

CellKey cell_of(const Point& p, double size) {
    CellKey k;
    k.c.resize(static_cast<std::size_t>(p.size()));
    for (Eigen::Index i = 0; i < p.size(); ++i) k.c[static_cast<std::size_t>(i)] = static_cast<long long>(std::floor(p(i) / size));
    return k;
}

int sort_with_parity(std::vector<int>& v) {
    int sign = 1;
    for (std::size_t i = 1; i < v.size(); ++i)
        for (std::size_t j = i; j > 0 && v[j - 1] > v[j]; --j) {
            std::swap(v[j - 1], v[j]);
            sign = -sign;
        }
    return sign;
}

// Bucket grid over the simplices (dim >= 1) of a complex for point queries.
class SimplexGrid {
public:
    explicit SimplexGrid(const Complex& k) {
        cell_ = k.top_dim() >= 1 ? std::max(mesh(k), 1e-6) : 1.0;
        for (int d = 1; d <= k.top_dim(); ++d)
            for (std::size_t i = 0; i < k.count(d); ++i) {
                const auto pts = k.points(d, static_cast<int>(i));
                Point lo = pts[0], hi = pts[0];
                for (const auto& p : pts) {
                    lo = lo.cwiseMin(p);
                    hi = hi.cwiseMax(p);
                }
                const CellKey a = cell_of(lo.array() - kGeometryTolerance, cell_);
                const CellKey b = cell_of(hi.array() + kGeometryTolerance, cell_);
                CellKey cur = a;
                // enumerate all cells in the box [a, b]
                while (true) {
                    buckets_[cur].push_back({d, static_cast<int>(i)});
                    std::size_t ax = 0;
                    while (ax < cur.c.size()) {
                        if (cur.c[ax] < b.c[ax]) {
                            ++cur.c[ax];
                            break;
                        }
                        cur.c[ax] = a.c[ax];
                        ++ax;
                    }
                    if (ax == cur.c.size()) break;
                }
            }
    }

    template <class F>
    void query(const Point& p, F&& f) const {
        auto it = buckets_.find(cell_of(p, cell_));
        if (it == buckets_.end()) return;
        for (const auto& [d, i] : it->second) f(d, i);
    }

private:
    double cell_ = 1.0;
    std::unordered_map<CellKey, std::vector<std::pair<int, int>>, CellHash> buckets_;
};

std::vector<int> mapped(const std::vector<int>& verts, const std::vector<int>& vmap) {
    std::vector<int> out;
    out.reserve(verts.size());
    for (int v : verts) out.push_back(vmap[static_cast<std::size_t>(v)]);
    std::sort(out.begin(), out.end());
    return out;
}

// True when no vertex or simplex barycenter of `b` falls inside a different
// simplex of `a`.
bool one_sided_consistent(const Complex& a, const std::vector<int>& map_a, const Complex& b,
                          const std::vector<int>& map_b) {
    const SimplexGrid grid(a);
    bool ok = true;
    auto probe = [&](const Point& p, const std::vector<int>& key) {
        grid.query(p, [&](int d, int i) {
            if (!ok) return;
            if (static_cast<int>(key.size()) - 1 == d && mapped(a.simplex(d, i).vertices, map_a) == key) return;
            if (in_relative_interior(a.points(d, i), p)) ok = false;
        });
    };
    for (std::size_t v = 0; v < b.num_vertices() && ok; ++v) probe(b.vertex(static_cast<int>(v)), {map_b[v]});
    for (int d = 1; d <= b.top_dim() && ok; ++d)
        for (std::size_t i = 0; i < b.count(d) && ok; ++i)
            probe(b.barycenter(d, static_cast<int>(i)), mapped(b.simplex(d, static_cast<int>(i)).vertices, map_b));
    return ok;
}

}  // namespace

ComplexUnion union_of(const Complex& a, const Complex& b, double tol) {
    if (a.ambient_dim() != b.ambient_dim()) throw std::invalid_argument("union_of: ambient dimensions differ");
    const double cell = std::max(tol * 10.0, 1e-12);
    std::unordered_map<CellKey, std::vector<int>, CellHash> index;
    std::vector<Point> verts;
    ComplexUnion u;

    auto locate = [&](const Point& p) -> int {
        const CellKey base = cell_of(p, cell);
        CellKey k = base;
        const std::size_t n = base.c.size();
        std::vector<int> offs(n, -1);
        while (true) {
            for (std::size_t i = 0; i < n; ++i) k.c[i] = base.c[i] + offs[i];
            if (auto it = index.find(k); it != index.end())
                for (int v : it->second)
                    if ((verts[static_cast<std::size_t>(v)] - p).norm() <= tol) return v;
            std::size_t ax = 0;
            while (ax < n && offs[ax] == 1) offs[ax++] = -1;
            if (ax == n) break;
            ++offs[ax];
        }
        const int id = static_cast<int>(verts.size());
        verts.push_back(p);
        index[base].push_back(id);
        return id;
    };

    for (std::size_t v = 0; v < a.num_vertices(); ++v) u.vertex_map_a.push_back(locate(a.vertex(static_cast<int>(v))));
    for (std::size_t v = 0; v < b.num_vertices(); ++v) u.vertex_map_b.push_back(locate(b.vertex(static_cast<int>(v))));

    const int top = std::max(a.top_dim(), b.top_dim());
    std::vector<std::vector<std::vector<int>>> by_dim(static_cast<std::size_t>(std::max(top, 0) + 1));
    for (int d = 1; d <= top; ++d) {
        for (const auto& s : a.simplices(d)) by_dim[static_cast<std::size_t>(d)].push_back(mapped(s.vertices, u.vertex_map_a));
        for (const auto& s : b.simplices(d)) by_dim[static_cast<std::size_t>(d)].push_back(mapped(s.vertices, u.vertex_map_b));
    }
    u.complex = Complex::create(a.ambient_dim(), std::move(verts), by_dim);
    return u;
}

Chain transfer(const Chain& p, const ComplexPtr& target, const std::vector<int>& vertex_map) {
    Chain out(target, p.dim(), p.group());
    for (const auto& [i, g] : p.coefficients()) {
        std::vector<int> v;
        for (int x : p.complex()->simplex(p.dim(), i).vertices) v.push_back(vertex_map[static_cast<std::size_t>(x)]);
        const int sign = sort_with_parity(v);
        const auto idx = target->find(p.dim(), v);
        if (!idx) throw std::invalid_argument("transfer: simplex missing from target complex");
        out.add(*idx, g.times(sign));
    }
    return out;
}

CommonRefinement common_refinement(const Chain& a, const Chain& b, int depth_budget) {
    if (a.dim() != b.dim()) throw std::invalid_argument("common_refinement: chains of different dimension");
    if (!(a.group() == b.group())) throw std::invalid_argument("common_refinement: chains over different groups");
    if (a.complex() == b.complex()) return {a, b, "shared", 0, 0};
    if (auto da = ancestor_distance(a.complex(), b.complex().get()))
        return {a, refine(b, a.complex()), "lineage", 0, *da};
    if (auto db = ancestor_distance(b.complex(), a.complex().get()))
        return {refine(a, b.complex()), b, "lineage", *db, 0};

    std::vector<ComplexPtr> la{a.complex()}, lb{b.complex()};
    auto level = [](std::vector<ComplexPtr>& cache, int k) {
        while (static_cast<int>(cache.size()) <= k) cache.push_back(standard_subdivision(cache.back()));
        return cache[static_cast<std::size_t>(k)];
    };
    for (int total = 0; total <= depth_budget; ++total)
        for (int ia = 0; ia <= total; ++ia) {
            const int ib = total - ia;
            const auto ka = level(la, ia);
            const auto kb = level(lb, ib);
            ComplexUnion u;
            try {
                u = union_of(*ka, *kb);
            } catch (const std::invalid_argument&) {
                continue;
            }
            if (!one_sided_consistent(*ka, u.vertex_map_a, *kb, u.vertex_map_b) ||
                !one_sided_consistent(*kb, u.vertex_map_b, *ka, u.vertex_map_a))
                continue;
            Chain ta = transfer(refine(a, ka), u.complex, u.vertex_map_a);
            Chain tb = transfer(refine(b, kb), u.complex, u.vertex_map_b);
            const double ma = mass(a), mb = mass(b);
            if (std::abs(mass(ta) - ma) > 1e-9 * (1.0 + ma) || std::abs(mass(tb) - mb) > 1e-9 * (1.0 + mb))
                continue;
            return {std::move(ta), std::move(tb), "union", ia, ib};
        }
    throw std::runtime_error("common_refinement: no common refinement within depth budget " +
                             std::to_string(depth_budget));
}

}  // namespace flatchain
