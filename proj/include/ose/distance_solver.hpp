#pragma once

#include <utility>
#include <vector>

#include "ose/linalg.hpp"

namespace ose {

/// Targets may land a hair outside [0, 2] when computed from real
/// distances; anything within this margin is clamped instead of rejected.
inline constexpr double kTargetTol = 1e-9;

/// ||q|| <= 1 + tol counts as feasible; | ||q|| - 1 | <= tol is treated as
/// the boundary case where q itself is the solution.
inline constexpr double kFeasibilityTol = 1e-9;

/// Allowed disagreement between a dependent row's prescribed target and
/// the one induced by the rows it depends on.
inline constexpr double kConsistencyTol = 1e-9;

struct DistanceSpec {
    std::vector<Vec> vectors;     // the source set B
    std::vector<double> targets;  // prescribed cosine distances, in [0, 2]
};

struct FeasibleInterval {
    double lower = 0;      // smallest achievable common distance
    double upper = 2;      // largest achievable common distance
    double gram_norm = 0;  // norm of V^t (V V^t)^{-1} e
};

/// Finds a unit vector whose cosine distance to vectors[i] is targets[i]:
/// reduces dependent rows, forms the minimum-norm candidate
/// q = V^t (V V^t)^{-1} (1 - targets) over the normalized rows, and when
/// ||q|| < 1 tops it up with a null-space direction to reach the sphere.
/// Throws Infeasible when ||q|| > 1, InconsistentSystem from the
/// reduction, and NullspaceEmpty when the rows span the whole space but
/// the unique candidate is not unit.
Vec solve_at_distances(const DistanceSpec& spec, double rank_tol = kDefaultRankTol);

/// Drops rows that are linear combinations of earlier rows (after
/// normalization), verifying that each dropped row's target matches the
/// one induced by its representation; mismatch is InconsistentSystem.
DistanceSpec reduce_dependent_rows(const DistanceSpec& spec, double rank_tol = kDefaultRankTol);

/// The range of common distances alpha for which a unit vector at distance
/// alpha from every input exists: [max{0, 1 - 1/g}, min{2, 1 + 1/g}] with
/// g = ||V^t (V V^t)^{-1} e||. Requires linearly independent normalized
/// inputs (DependentRows otherwise). The lower endpoint is the minimal
/// common distance produced by ose.
FeasibleInterval equal_distance_interval(const std::vector<Vec>& vectors,
                                         double rank_tol = kDefaultRankTol);

/// Feasible range of t for targets alpha_i = lower + t * u_i, where lower
/// is the equal-distance minimum and u is strictly increasing. Expanding
/// ||q(t)||^2 = 1 - b t + a t^2 with a = ||V^t (V V^t)^{-1} u||^2 and
/// b = 2 <u, (V V^t)^{-1} e> / g, the unit-ball condition a t^2 - b t <= 0
/// holds exactly for t between 0 and b/a; the pair is returned ordered.
std::pair<double, double> varying_distance_range(const std::vector<Vec>& vectors,
                                                 const std::vector<double>& u,
                                                 double rank_tol = kDefaultRankTol);

/// Squared norm of q + t x1 for orthogonal q and x1: t^2 ||x1||^2 + ||q||^2.
/// Test helper verifying that the cross term vanishes in the expansion.
double p_of_t_check(const Vec& q, const Vec& x1, double t);

} // namespace ose
