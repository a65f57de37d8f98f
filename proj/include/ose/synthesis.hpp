#pragma once

#include <cstddef>
#include <vector>

#include "ose/linalg.hpp"

namespace ose {

enum class SynthesisMethod {
    kProjection,
    kGramAlternative,
    kClosedFormN2,
    kDegenerateIdentical,
};

const char* to_string(SynthesisMethod m) noexcept;

struct SynthesisResult {
    Vec solution;                // unit norm
    double common_distance = 0;  // shared cosine distance to every input
    double distance_spread = 0;  // max - min achieved distance, diagnostic
    std::size_t difference_rank = 0;  // rank m of the difference span S1
    std::size_t ambient_dim = 0;      // n
    SynthesisMethod method = SynthesisMethod::kProjection;
};

/// Synthesizes the unit vector equidistant in cosine distance from every
/// input at the minimal common distance: normalize the inputs, span their
/// differences against the last one (S1), and project that reference onto
/// the orthogonal complement of S1. When the projection vanishes the
/// common distance is 1 for every feasible direction, and a deterministic
/// element of the complement is returned. Throws Infeasible when S1 fills
/// the ambient space.
SynthesisResult ose(const std::vector<Vec>& vectors, double rank_tol = kDefaultRankTol);

/// Two-vector closed form: the normalized sum of the normalized inputs.
/// Regression oracle for ose. Throws AntipodalPair when the sum vanishes.
Vec ose_closed_form_pair(const Vec& v1, const Vec& v2, double rank_tol = kDefaultRankTol);

/// Alternative formula V^t (V V^t)^{-1} e, normalized, where the rows of V
/// are the normalized inputs and e is the all-ones vector. Requires
/// linearly independent normalized inputs (DependentRows otherwise);
/// agrees with ose on its domain.
Vec ose_gram_alternative(const std::vector<Vec>& vectors, double rank_tol = kDefaultRankTol);

/// Third route: build an orthonormal basis {w_j} of the complement of S1
/// explicitly and return the normalized sum of <w_j, ref> w_j, where ref
/// is the normalized last input. Same degenerate fallback as ose.
Vec ose_via_complement_basis(const std::vector<Vec>& vectors, double rank_tol = kDefaultRankTol);

/// Cosine distance between ose's solution and the explicit-basis route on
/// the same input; a stationarity cross-check that should sit at roundoff.
double kkt_cross_check(const std::vector<Vec>& vectors, double rank_tol = kDefaultRankTol);

/// Largest equidistance violation max_j |<u, ref - vhat_j>| committed by
/// the arithmetic mean u of the normalized inputs (ref = normalized last
/// input). Zero exactly when the mean is equidistant from all inputs,
/// e.g. for any orthonormal set.
double mean_equidistance_gap(const std::vector<Vec>& vectors);

/// Fixed three-vector fixture (1,0,0), (0,1,0), (1,1,1) demonstrating that
/// the normalized-mean heuristic is not equidistant: returns the mean's
/// inner product with the first input, 1/3 + 1/(3 sqrt 3), which differs
/// from its inner product with the third input by 1/(3 sqrt 3) (the gap
/// reported by mean_equidistance_gap on the same fixture).
double mean_counterexample_value();

} // namespace ose
