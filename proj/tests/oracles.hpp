#pragma once

// Reference computations that avoid the library's own algorithms.

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <map>
#include <numbers>
#include <queue>
#include <stdexcept>
#include <utility>
#include <vector>

namespace oracle {

using Vec = Eigen::VectorXd;

/// d-volume of the simplex with the given vertices via the Gram determinant.
inline double volume(const std::vector<Vec>& pts) {
    const auto d = static_cast<Eigen::Index>(pts.size()) - 1;
    if (d == 0) return 1.0;
    Eigen::MatrixXd e(pts[0].size(), d);
    for (Eigen::Index i = 0; i < d; ++i) e.col(i) = pts[static_cast<std::size_t>(i + 1)] - pts[0];
    double fact = 1.0;
    for (int i = 2; i <= d; ++i) fact *= i;
    return std::sqrt(std::max(0.0, (e.transpose() * e).determinant())) / fact;
}

/// Minimal flat norm of a mod-2 d-chain by exhaustive search over every
/// subset of (d+1)-simplices. `faces` lists d-simplices, `cells` lists
/// (d+1)-simplices (vertex indices), `chain` holds the support of P as
/// indices into `faces`.
inline double z2_flat_norm(const std::vector<Vec>& verts, const std::vector<std::vector<int>>& faces,
                           const std::vector<std::vector<int>>& cells, const std::vector<int>& chain) {
    if (cells.size() > 24) throw std::invalid_argument("too many cells for exhaustive search");
    std::map<std::vector<int>, int> index;
    std::vector<double> face_vol, cell_vol;
    for (std::size_t i = 0; i < faces.size(); ++i) {
        auto s = faces[i];
        std::sort(s.begin(), s.end());
        index[s] = static_cast<int>(i);
        std::vector<Vec> pts;
        for (int v : s) pts.push_back(verts[static_cast<std::size_t>(v)]);
        face_vol.push_back(volume(pts));
    }
    std::vector<std::vector<int>> cell_faces;
    for (const auto& c : cells) {
        std::vector<Vec> pts;
        for (int v : c) pts.push_back(verts[static_cast<std::size_t>(v)]);
        cell_vol.push_back(volume(pts));
        std::vector<int> fs;
        for (std::size_t drop = 0; drop < c.size(); ++drop) {
            std::vector<int> f;
            for (std::size_t j = 0; j < c.size(); ++j)
                if (j != drop) f.push_back(c[j]);
            std::sort(f.begin(), f.end());
            fs.push_back(index.at(f));
        }
        cell_faces.push_back(std::move(fs));
    }
    std::vector<char> base(faces.size(), 0);
    for (int i : chain) base[static_cast<std::size_t>(i)] ^= 1;
    double best = std::numeric_limits<double>::infinity();
    const std::uint64_t subsets = std::uint64_t{1} << cells.size();
    for (std::uint64_t mask = 0; mask < subsets; ++mask) {
        std::vector<char> q = base;
        double cost = 0.0;
        for (std::size_t c = 0; c < cells.size(); ++c) {
            if (!(mask >> c & 1)) continue;
            cost += cell_vol[c];
            for (int f : cell_faces[c]) q[static_cast<std::size_t>(f)] ^= 1;
        }
        for (std::size_t f = 0; f < q.size(); ++f)
            if (q[f]) cost += face_vol[f];
        best = std::min(best, cost);
    }
    return best;
}

/// Single-source shortest path lengths in an undirected weighted graph.
inline std::vector<double> dijkstra(int n, const std::vector<std::pair<std::pair<int, int>, double>>& edges, int source) {
    std::vector<std::vector<std::pair<int, double>>> adj(static_cast<std::size_t>(n));
    for (const auto& [e, w] : edges) {
        adj[static_cast<std::size_t>(e.first)].push_back({e.second, w});
        adj[static_cast<std::size_t>(e.second)].push_back({e.first, w});
    }
    std::vector<double> dist(static_cast<std::size_t>(n), std::numeric_limits<double>::infinity());
    using Item = std::pair<double, int>;
    std::priority_queue<Item, std::vector<Item>, std::greater<>> pq;
    dist[static_cast<std::size_t>(source)] = 0.0;
    pq.push({0.0, source});
    while (!pq.empty()) {
        const auto [d, u] = pq.top();
        pq.pop();
        if (d > dist[static_cast<std::size_t>(u)]) continue;
        for (const auto& [v, w] : adj[static_cast<std::size_t>(u)]) {
            if (d + w < dist[static_cast<std::size_t>(v)]) {
                dist[static_cast<std::size_t>(v)] = d + w;
                pq.push({d + w, v});
            }
        }
    }
    return dist;
}

/// Perimeter of the regular k-gon inscribed in the unit circle.
inline double inscribed_perimeter(double k) { return 2.0 * k * std::sin(std::numbers::pi / k); }

/// Area between the unit circle and the inscribed regular k-gon.
inline double circle_gap_area(double k) {
    return std::numbers::pi - 0.5 * k * std::sin(2.0 * std::numbers::pi / k);
}

/// Total area of the m alternating sectors of the ring 1 <= |z| <= 1 + 1/m^2.
inline double annulus_sector_area(double m) {
    const double outer = 1.0 + 1.0 / (m * m);
    return 0.5 * std::numbers::pi * (outer * outer - 1.0);
}

/// Operator-norm distance between two lines in the plane at angle theta.
inline double line_distance(double theta) { return std::abs(std::sin(theta)); }

/// |J_affine - J| integrated over one triangle for f(x, y) = (x, y + x^2 / 2):
/// the affine interpolant gains det = 1 + a1 a2 (x2 - x1) / (2 det E).
inline double shear_jacobian_error(const Vec& p0, const Vec& p1, const Vec& p2) {
    const double a1 = p1(0) - p0(0), a2 = p2(0) - p0(0);
    return std::abs(a1 * a2 * (p2(0) - p1(0))) / 4.0;
}

/// Norm of k in Z/pZ.
inline std::int64_t cyclic_norm(std::int64_t k, std::int64_t p) {
    const std::int64_t r = ((k % p) + p) % p;
    return std::min(r, p - r);
}

}  // namespace oracle
