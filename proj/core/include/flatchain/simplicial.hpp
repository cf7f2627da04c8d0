#pragma once

#include <Eigen/Dense>

#include <cstddef>
#include <memory>
#include <optional>
#include <span>
#include <unordered_map>
#include <utility>
#include <vector>

namespace flatchain {

using Point = Eigen::VectorXd;

/// Relative fullness below which a simplex is treated as degenerate.
inline constexpr double kDegenerateFullness = 1e-12;
/// Absolute tolerance for containment tests in ambient coordinates.
inline constexpr double kGeometryTolerance = 1e-9;

/// A simplex of a complex. Vertices are listed in increasing index order,
/// which also fixes the simplex's orientation.
struct Simplex {
    std::vector<int> vertices;
    double volume = 0.0;
    double diameter = 0.0;

    int dim() const { return static_cast<int>(vertices.size()) - 1; }
};

/// The smallest simplex of the parent complex containing a simplex of a
/// refined complex. `sign` relates orientations when the dimensions agree and
/// is 0 otherwise.
struct Carrier {
    int dim = -1;
    int index = -1;
    int sign = 0;
};

struct Incidence {
    int index;
    int sign;
};

// Geometry of a simplex given by its ordered vertex coordinates.
double simplex_volume(std::span<const Point> pts);
double simplex_diameter(std::span<const Point> pts);
double fullness(std::span<const Point> pts);
Point barycenter(std::span<const Point> pts);

/// Barycentric coordinates of `p` relative to `pts`, or nullopt when `p` is
/// farther than `tol` from the affine span.
std::optional<Eigen::VectorXd> barycentric_coordinates(std::span<const Point> pts, const Point& p,
                                                       double tol = kGeometryTolerance);
bool in_closed_simplex(std::span<const Point> pts, const Point& p, double tol = kGeometryTolerance);
bool in_relative_interior(std::span<const Point> pts, const Point& p, double tol = kGeometryTolerance);

/// +1/-1 when `child` and `parent` span the same d-plane with equal/opposite
/// orientation.
int relative_orientation(std::span<const Point> parent, std::span<const Point> child);

/// Vertex pattern of the standard subdivision of an ordered d-simplex. Each
/// child is a list of index pairs (i, j), i <= j, naming the point
/// (p_i + p_j) / 2, in the increasing order of the nested-interval partial order.
const std::vector<std::vector<std::pair<int, int>>>& subdivision_pattern(int d);

/// Children of the standard subdivision of one ordered simplex, each listed in
/// its induced vertex order (so the result can be subdivided again).
std::vector<std::vector<Point>> subdivide_simplex(std::span<const Point> pts);

class Complex;
using ComplexPtr = std::shared_ptr<const Complex>;

/// A finite simplicial complex embedded in R^n.
///
/// Vertex order is the index order. Every face of a stored simplex is stored.
/// Complexes are immutable and shared through ComplexPtr; refinements keep a
/// pointer to the complex they were derived from together with a carrier for
/// each of their simplices.
class Complex {
public:
    /// Builds a complex from per-dimension vertex lists. Listed simplices keep
    /// their listed order within each dimension; missing faces are appended.
    /// Throws on out-of-range or repeated vertices and on degenerate simplices.
    static ComplexPtr create(int ambient_dim, std::vector<Point> vertices,
                             const std::vector<std::vector<std::vector<int>>>& simplices_by_dim);

    int ambient_dim() const { return n_; }
    int top_dim() const { return static_cast<int>(simplices_.size()) - 1; }
    bool empty() const { return vertices_.empty(); }

    std::size_t num_vertices() const { return vertices_.size(); }
    const Point& vertex(int i) const { return vertices_[static_cast<std::size_t>(i)]; }
    const std::vector<Point>& vertices() const { return vertices_; }

    std::size_t count(int d) const;
    const std::vector<Simplex>& simplices(int d) const;
    const Simplex& simplex(int d, int i) const { return simplices(d)[static_cast<std::size_t>(i)]; }
    std::optional<int> find(int d, std::span<const int> sorted_vertices) const;

    std::vector<Point> points(int d, int i) const;
    Point barycenter(int d, int i) const;

    /// Signed faces of a d-simplex, d >= 1: the face without vertex k has sign (-1)^k.
    std::span<const Incidence> boundary(int d, int i) const;
    /// Signed (d+1)-dimensional cofaces of a d-simplex.
    std::span<const Incidence> cofaces(int d, int i) const;

    const ComplexPtr& parent() const { return parent_; }
    const Carrier& carrier(int d, int i) const;
    /// Number of derivation steps from the root complex.
    int depth() const { return depth_; }

    /// Checks the chain-complex identity over Z and over Z_2.
    bool boundary_squares_to_zero() const;
    /// Pairwise barycenter test: no top simplex's barycenter lies in the
    /// relative interior of another top simplex.
    bool interiors_disjoint(double tol = kGeometryTolerance) const;

private:
    struct VertexListHash {
        std::size_t operator()(const std::vector<int>& v) const noexcept;
    };
    using SimplexIndex = std::unordered_map<std::vector<int>, int, VertexListHash>;

    friend class ComplexBuilder;

    Complex() = default;

    int n_ = 0;
    std::vector<Point> vertices_;
    std::vector<std::vector<Simplex>> simplices_;
    std::vector<SimplexIndex> lookup_;
    std::vector<std::vector<std::vector<Incidence>>> boundary_;
    std::vector<std::vector<std::vector<Incidence>>> cofaces_;
    ComplexPtr parent_;
    std::vector<std::vector<Carrier>> carriers_;
    int depth_ = 0;
};

/// Maximum diameter over all simplices. Throws on an empty complex.
double mesh(const Complex& k);

/// Fullness vol / diam^d of simplex i of dimension d >= 1.
double fullness(const Complex& k, int d, int i);

/// Standard midpoint subdivision of every simplex. New midpoint vertices are
/// appended after the existing ones, ordered by (index span, first index).
ComplexPtr standard_subdivision(const ComplexPtr& k);
ComplexPtr iterated_subdivision(const ComplexPtr& k, int levels);

/// Minimum fullness over every simplex of dimension >= 1 in the subdivisions
/// of levels 1..m_max.
double fullness_floor(const ComplexPtr& k, int m_max);

/// The closure of the given d-simplices as a complex of its own, derived from
/// `k` (carriers map each simplex to itself in `k`).
ComplexPtr subcomplex(const ComplexPtr& k, int d, std::span<const int> indices);

/// Walks parent links from `descendant`; returns the number of steps to reach
/// `ancestor`, or nullopt when it is not an ancestor.
std::optional<int> ancestor_distance(const ComplexPtr& descendant, const Complex* ancestor);

}  // namespace flatchain
