#pragma once

#include "flatchain/chain.hpp"

#include <cmath>
#include <initializer_list>
#include <random>
#include <utility>
#include <vector>

namespace scenes {

using flatchain::Complex;
using flatchain::ComplexPtr;
using flatchain::Point;

inline Point pt(std::initializer_list<double> xs) {
    Point p(static_cast<Eigen::Index>(xs.size()));
    Eigen::Index i = 0;
    for (double x : xs) p[i++] = x;
    return p;
}

inline ComplexPtr unit_segment() { return Complex::create(1, {pt({0}), pt({1})}, {{}, {{0, 1}}}); }

inline ComplexPtr segment_in_plane(Point a, Point b) {
    return Complex::create(2, {std::move(a), std::move(b)}, {{}, {{0, 1}}});
}

/// Unit square as triangles (0,1,2) and (0,2,3).
inline ComplexPtr unit_square() {
    return Complex::create(2, {pt({0, 0}), pt({1, 0}), pt({1, 1}), pt({0, 1})}, {{}, {}, {{0, 1, 2}, {0, 2, 3}}});
}

inline ComplexPtr right_triangle() {
    return Complex::create(2, {pt({0, 0}), pt({1, 0}), pt({0, 1})}, {{}, {}, {{0, 1, 2}}});
}

/// Legs of length 1 with the right angle second in vertex order.
inline ComplexPtr right_triangle_apex_middle() {
    return Complex::create(2, {pt({1, 0}), pt({0, 0}), pt({0, 1})}, {{}, {}, {{0, 1, 2}}});
}

inline ComplexPtr equilateral_triangle() {
    return Complex::create(2, {pt({0, 0}), pt({1, 0}), pt({0.5, std::sqrt(3.0) / 2})}, {{}, {}, {{0, 1, 2}}});
}

/// nx x ny cells of side h starting at (x0, y0), each split along its main diagonal.
inline ComplexPtr grid(int nx, int ny, double h = 1.0, double x0 = 0.0, double y0 = 0.0) {
    std::vector<Point> verts;
    for (int j = 0; j <= ny; ++j)
        for (int i = 0; i <= nx; ++i) verts.push_back(pt({x0 + h * i, y0 + h * j}));
    auto id = [nx](int i, int j) { return j * (nx + 1) + i; };
    std::vector<std::vector<int>> tris;
    for (int j = 0; j < ny; ++j)
        for (int i = 0; i < nx; ++i) {
            tris.push_back({id(i, j), id(i + 1, j), id(i + 1, j + 1)});
            tris.push_back({id(i, j), id(i, j + 1), id(i + 1, j + 1)});
        }
    return Complex::create(2, std::move(verts), {{}, {}, tris});
}

inline int edge(const ComplexPtr& k, int a, int b) {
    const int key[2] = {std::min(a, b), std::max(a, b)};
    return k->find(1, key).value();
}

/// Random chain with integer values in [-2, 2] (or reals in [-1, 1]).
inline flatchain::Chain random_chain(const ComplexPtr& k, int dim, const flatchain::Group& g, std::mt19937_64& rng) {
    flatchain::Chain p(k, dim, g);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (std::size_t i = 0; i < k->count(dim); ++i) {
        if (rng() % 2) continue;
        if (g.kind() == flatchain::GroupKind::Reals)
            p.add(static_cast<int>(i), u(rng));
        else
            p.add(static_cast<int>(i), g.element(static_cast<std::int64_t>(rng() % 5) - 2));
    }
    return p;
}

}  // namespace scenes
