#pragma once

#include "flatchain/chain.hpp"
#include "flatchain/lp.hpp"

#include <optional>
#include <string>

namespace flatchain {

enum class SolverMethod { BruteForce, LinearProgram };
enum class MethodChoice { Auto, BruteForce, LinearProgram };

std::string to_string(SolverMethod m);

struct SolverReport {
    SolverMethod method = SolverMethod::BruteForce;
    /// True when the returned value is certified minimal within the ambient complex.
    bool optimal = false;
    /// LP iterations or number of enumerated candidates.
    long long iterations = 0;
    /// max coefficient norm of P - Q - dR (or dS - T).
    double residual = 0.0;
    /// Certified lower bound on the optimum (equals the value when optimal).
    double lower_bound = 0.0;
    /// For discrete groups solved by LP: the relaxed solution was integral.
    bool relaxation_integral = false;
    std::string note;
};

/// P = Q + dR. R is absent when the ambient complex has no (d+1)-simplices.
struct FlatDecomposition {
    Chain q;
    std::optional<Chain> r;
    double value = 0.0;
};

struct FlatNormResult {
    double value = 0.0;
    FlatDecomposition decomposition;
    SolverReport report;
};

struct FlatNormOptions {
    MethodChoice method = MethodChoice::Auto;
    /// Z_2 instances above the enumeration limit fall back to the LP relaxation.
    bool allow_relaxation = true;
    int brute_force_limit = 24;
    LpOptions lp;
};

/// Simplicial flat norm min mass(Q) + mass(R) subject to P = Q + dR, R ranging
/// over (d+1)-chains of P's complex.
FlatNormResult flat_norm(const Chain& p, const FlatNormOptions& options = {});

/// Flat norm of P - Q on a common refinement of the two complexes.
FlatNormResult flat_distance(const Chain& p, const Chain& q, const FlatNormOptions& options = {});

struct MassMinResult {
    Chain s;
    double mass = 0.0;
    SolverReport report;
};

/// Minimal-mass d-chain S of `k` with dS = T. Throws std::domain_error when T
/// is not a boundary in `k`.
MassMinResult mass_minimize(const Chain& t, const ComplexPtr& k, const FlatNormOptions& options = {});

}  // namespace flatchain
