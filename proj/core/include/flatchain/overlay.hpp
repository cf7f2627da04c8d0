#pragma once

#include "flatchain/chain.hpp"

#include <string>

namespace flatchain {

struct CommonRefinement {
    Chain a;
    Chain b;
    /// "shared", "lineage" or "union".
    std::string route;
    int levels_a = 0;
    int levels_b = 0;
};

/// Re-expresses two chains of equal dimension and group on one complex.
///
/// Chains on the same complex are returned unchanged; when one complex derives
/// from the other the coarser chain is refined; otherwise both complexes are
/// subdivided (at most `depth_budget` levels in total) until their union with
/// coincident vertices identified is a valid complex. Throws when no such
/// level pair exists.
CommonRefinement common_refinement(const Chain& a, const Chain& b, int depth_budget = 8);

/// Union of two complexes with vertices closer than `tol` identified. Each
/// input simplex maps to the union simplex with the same vertex set.
struct ComplexUnion {
    ComplexPtr complex;
    std::vector<int> vertex_map_a;
    std::vector<int> vertex_map_b;
};
ComplexUnion union_of(const Complex& a, const Complex& b, double tol = kGeometryTolerance);

/// Transfers a chain along a vertex map into a complex containing the mapped simplices.
Chain transfer(const Chain& p, const ComplexPtr& target, const std::vector<int>& vertex_map);

}  // namespace flatchain
