#pragma once

#include <string>
#include <vector>

#include "whitney/combinatorics.hpp"
#include "whitney/jetfield.hpp"

namespace whitney {

/// A polynomial map phi: R^n -> R^p together with source and target clouds
/// such that phi maps every source point onto a target point.
struct PullbackPlan {
    PolyMap map;
    PointCloud source;
    PointCloud target;
    std::vector<std::size_t> match; // source index -> target index of phi(x)
    Tolerance tol;
};

/// Matches phi(x) against Y for every x in X; throws unmatched_point naming
/// the offending point and the smallest distance seen.
PullbackPlan make_plan(const PolyMap& phi, const PointCloud& X, const PointCloud& Y, const Tolerance& tol);

/// Composition pullback in the multiindex formulation: for |beta| <= m,
///
///   (phi# F)_beta(x) = sum over solutions lambda of
///        beta!/lambda! * F_{sum_alpha lambda_alpha}(phi(x))
///        * prod_alpha (d^alpha phi(x))^{lambda_alpha} / (alpha!)^{sum_i lambda_{i,alpha}}
///
/// with all combinatorial factors exact.
JetField pullback_multi(const PullbackPlan& plan, const JetField& F, std::uint32_t m,
                        Exec exec = Exec::parallel);

/// The same map computed by the block-partition formulation: the component
/// for beta sums over set partitions of |beta| derivative slots and over
/// assignments of target coordinates to blocks. Shares no enumeration logic
/// with pullback_multi; agreement of the two routes is the primary
/// correctness oracle.
JetField pullback_comb(const PullbackPlan& plan, const JetField& F, std::uint32_t m,
                       Exec exec = Exec::parallel);

/// One summand of the multiindex formula, for diagnostics and tests.
struct PullbackTerm {
    std::vector<LambdaSolution::Entry> support;
    Rational contribution;
};

/// Per-solution contributions to (phi# F)_beta at source point x.
std::vector<PullbackTerm> pullback_multi_terms(const PullbackPlan& plan, const JetField& F,
                                               const MultiIndex& beta, std::size_t x);

struct CommutativityReport {
    bool ok = true;
    double max_deviation = 0;
    std::size_t point = 0;
    MultiIndex alpha;
};

/// Checks that pulling back the jet of f through phi equals the jet of the
/// composite f o phi on X, at order m.
CommutativityReport check_commutativity(const Polynomial& f, const PolyMap& phi, const PointCloud& X,
                                        std::uint32_t m, const Tolerance& tol);

/// Builds the image cloud phi(X) with duplicates removed (first occurrence
/// kept, deterministic order).
PointCloud image_cloud(const PolyMap& phi, const PointCloud& X, const Tolerance& tol);

} // namespace whitney
