#include "ose/synthesis.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "ose/errors.hpp"

namespace ose {

namespace {

std::vector<Vec> normalize_all(const std::vector<Vec>& vectors) {
    if (vectors.empty()) throw Error(ErrorKind::kEmptyInput, "no input vectors");
    const std::size_t dim = vectors.front().size();
    std::vector<Vec> unit;
    unit.reserve(vectors.size());
    for (const Vec& v : vectors) {
        if (v.size() != dim) {
            throw Error(ErrorKind::kDimMismatch, "input vectors have mixed dimensions");
        }
        unit.push_back(normalized(v));
    }
    return unit;
}

std::vector<Vec> differences_to_last(const std::vector<Vec>& unit) {
    std::vector<Vec> diffs;
    diffs.reserve(unit.size() - 1);
    for (std::size_t j = 0; j + 1 < unit.size(); ++j) {
        Vec d = unit.back();
        axpy(d, -1.0, unit[j]);
        diffs.push_back(std::move(d));
    }
    return diffs;
}

void check_rank_tol(double rank_tol) {
    if (!(rank_tol > 0.0)) {
        throw Error(ErrorKind::kInvalidArgument, "rank tolerance must be positive");
    }
}

} // namespace

const char* to_string(SynthesisMethod m) noexcept {
    switch (m) {
        case SynthesisMethod::kProjection: return "projection";
        case SynthesisMethod::kGramAlternative: return "gram_alternative";
        case SynthesisMethod::kClosedFormN2: return "closed_form_n2";
        case SynthesisMethod::kDegenerateIdentical: return "degenerate_identical";
    }
    return "unknown";
}

SynthesisResult ose(const std::vector<Vec>& vectors, double rank_tol) {
    check_rank_tol(rank_tol);
    const std::vector<Vec> unit = normalize_all(vectors);
    const std::size_t n = unit.front().size();

    SynthesisResult result;
    result.ambient_dim = n;

    const std::vector<Vec> diffs = differences_to_last(unit);
    double max_diff = 0.0;
    for (const Vec& d : diffs) max_diff = std::max(max_diff, norm(d));
    if (max_diff <= rank_tol) {
        // All normalized inputs coincide; the input direction itself is at
        // distance 0 from everything.
        result.solution = unit.back();
        result.method = SynthesisMethod::kDegenerateIdentical;
        return result;
    }

    const OrthonormalBasis s1 = orthonormalize(diffs, rank_tol);
    result.difference_rank = s1.rank();
    if (s1.rank() == n) {
        throw Error(ErrorKind::kInfeasible,
                    "difference span fills the ambient space; no equidistant direction exists");
    }

    Vec p = project_onto_complement(unit.back(), s1);
    if (norm(p) <= rank_tol) {
        // The reference direction lies inside the difference span, so every
        // feasible direction is orthogonal to it and the common distance is
        // exactly 1; return a deterministic element of the complement.
        result.solution = complement_basis(s1, n, rank_tol).vectors.front();
    } else {
        result.solution = normalized(p);
    }
    result.method = SynthesisMethod::kProjection;

    double lo = 2.0, hi = 0.0, sum = 0.0;
    for (const Vec& v : unit) {
        const double d = cosine_distance(result.solution, v);
        lo = std::min(lo, d);
        hi = std::max(hi, d);
        sum += d;
    }
    result.common_distance = sum / static_cast<double>(unit.size());
    result.distance_spread = hi - lo;
    return result;
}

Vec ose_closed_form_pair(const Vec& v1, const Vec& v2, double rank_tol) {
    check_rank_tol(rank_tol);
    Vec s = normalized(v1);
    axpy(s, 1.0, normalized(v2));
    if (norm(s) <= rank_tol) {
        throw Error(ErrorKind::kAntipodalPair,
                    "normalized inputs are antipodal; their sum carries no direction");
    }
    return normalized(s);
}

Vec ose_gram_alternative(const std::vector<Vec>& vectors, double rank_tol) {
    check_rank_tol(rank_tol);
    const std::vector<Vec> unit = normalize_all(vectors);
    if (orthonormalize(unit, rank_tol).rank() != unit.size()) {
        throw Error(ErrorKind::kDependentRows,
                    "normalized inputs are linearly dependent; the Gram route needs full row rank");
    }
    const std::vector<double> z = solve_gram(unit, std::vector<double>(unit.size(), 1.0));
    Vec x(unit.front().size(), 0.0);
    for (std::size_t i = 0; i < unit.size(); ++i) axpy(x, z[i], unit[i]);
    return normalized(x);
}

Vec ose_via_complement_basis(const std::vector<Vec>& vectors, double rank_tol) {
    check_rank_tol(rank_tol);
    const std::vector<Vec> unit = normalize_all(vectors);
    const std::size_t n = unit.front().size();
    const OrthonormalBasis s1 = orthonormalize(differences_to_last(unit), rank_tol);
    if (s1.rank() == n) {
        throw Error(ErrorKind::kInfeasible,
                    "difference span fills the ambient space; no equidistant direction exists");
    }
    const OrthonormalBasis w = complement_basis(s1, n, rank_tol);
    Vec x(n, 0.0);
    for (const Vec& wj : w.vectors) axpy(x, inner(wj, unit.back()), wj);
    if (norm(x) <= rank_tol) return w.vectors.front();
    return normalized(x);
}

double kkt_cross_check(const std::vector<Vec>& vectors, double rank_tol) {
    const SynthesisResult r = ose(vectors, rank_tol);
    return cosine_distance(r.solution, ose_via_complement_basis(vectors, rank_tol));
}

double mean_equidistance_gap(const std::vector<Vec>& vectors) {
    const std::vector<Vec> unit = normalize_all(vectors);
    Vec mean(unit.front().size(), 0.0);
    for (const Vec& v : unit) axpy(mean, 1.0 / static_cast<double>(unit.size()), v);
    double gap = 0.0;
    const double ref = inner(mean, unit.back());
    for (const Vec& v : unit) gap = std::max(gap, std::abs(ref - inner(mean, v)));
    return gap;
}

double mean_counterexample_value() {
    const std::vector<Vec> fixture = {{1, 0, 0}, {0, 1, 0}, {1, 1, 1}};
    const std::vector<Vec> unit = normalize_all(fixture);
    Vec mean(3, 0.0);
    for (const Vec& v : unit) axpy(mean, 1.0 / 3.0, v);
    return inner(mean, unit.front());
}

} // namespace ose
