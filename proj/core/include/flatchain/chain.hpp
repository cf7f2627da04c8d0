#pragma once

#include "flatchain/coeff.hpp"
#include "flatchain/dictionary.hpp"
#include "flatchain/simplicial.hpp"

#include <functional>
#include <map>
#include <string_view>
#include <utility>
#include <vector>

namespace flatchain {

/// A d-chain: group coefficients on the d-simplices of a complex. Zero
/// coefficients are never stored.
class Chain {
public:
    Chain(ComplexPtr complex, int dim, Group group);

    /// Builds a chain from (simplex index, value) pairs; repeated indices add up.
    static Chain from_values(ComplexPtr complex, int dim, Group group,
                             const std::vector<std::pair<int, double>>& values);
    /// Coefficient 1 on every d-simplex of the complex.
    static Chain fundamental(ComplexPtr complex, int dim, Group group);

    const ComplexPtr& complex() const { return complex_; }
    int dim() const { return dim_; }
    const Group& group() const { return group_; }
    const std::map<int, GroupElement>& coefficients() const { return coeffs_; }
    GroupElement coefficient(int simplex) const;
    bool is_zero() const { return coeffs_.empty(); }
    std::size_t size() const { return coeffs_.size(); }

    void add(int simplex, const GroupElement& g);
    void add(int simplex, double value) { add(simplex, group_.element(value)); }

    Chain operator-() const;
    Chain times(std::int64_t k) const;
    friend Chain operator+(const Chain& a, const Chain& b);
    friend Chain operator-(const Chain& a, const Chain& b);
    friend bool operator==(const Chain& a, const Chain& b);

private:
    void check_index(int simplex) const;

    ComplexPtr complex_;
    int dim_;
    Group group_;
    std::map<int, GroupElement> coeffs_;
};

double mass(const Chain& p);
Chain boundary(const Chain& p);

/// Indices of the d-simplices with nonzero coefficient.
std::vector<int> support(const Chain& p);
/// Closure of the support as a complex derived from p's complex.
ComplexPtr support_complex(const Chain& p);

/// Re-expresses p on a complex obtained from p's complex by subdivisions and
/// subcomplex extractions.
Chain refine(const Chain& p, const ComplexPtr& descendant);

/// An open axis-aligned box; bounds may be infinite.
struct Box {
    Point lo;
    Point hi;

    bool contains(const Point& x) const;
};

/// A finite union of open boxes.
class IntervalRegion {
public:
    IntervalRegion() = default;
    explicit IntervalRegion(std::vector<Box> boxes);

    /// The whole space R^n.
    static IntervalRegion everything(int n);
    /// "lo0,hi0;lo1,hi1;..." for a single box; "inf" is accepted.
    static IntervalRegion parse(std::string_view text);
    /// Union of boxes approximating the open ball from inside: per axis-0 strip
    /// of width 2r / 2^depth, the largest box fitting in the ball.
    static IntervalRegion inscribed_ball(const Point& center, double radius, int depth);

    const std::vector<Box>& boxes() const { return boxes_; }
    bool contains(const Point& x) const;

private:
    std::vector<Box> boxes_;
};

/// P restricted to X. The closure of the support is subdivided `depth` times
/// and each small simplex keeps its coefficient iff its barycenter lies in X.
Chain restrict(const Chain& p, const IntervalRegion& x, int depth = 6);

struct MeasureAtom {
    Point x;
    double weight;
};

/// Atomic approximation of the mass measure mu_P.
struct ChainMeasure {
    int ambient_dim = 0;
    std::vector<MeasureAtom> atoms;

    double total_weight() const;
    double integrate(const std::function<double(const Point&)>& phi) const;
    /// Weight of the atoms lying in X.
    double of(const IntervalRegion& x) const;
};

/// One atom per simplex of the depth-times subdivided support, at its
/// barycenter with weight |g| * volume.
ChainMeasure induced_measure(const Chain& p, int depth = 0);

/// max |int phi dmu - int phi dnu| over the x-only functions of the dictionary.
double measure_weak_distance(const ChainMeasure& mu, const ChainMeasure& nu, const TestDictionary& dict);

/// Calls `visit(points, simplex, coefficient)` on every piece of the
/// depth-times subdivided support of p, in simplex order.
void for_each_piece(const Chain& p, int depth,
                    const std::function<void(const std::vector<Point>&, int, const GroupElement&)>& visit);

}  // namespace flatchain
