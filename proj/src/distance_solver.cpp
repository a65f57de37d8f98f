#include "ose/distance_solver.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "ose/errors.hpp"

namespace ose {

namespace {

void validate_spec(const DistanceSpec& spec) {
    if (spec.vectors.size() != spec.targets.size()) {
        throw Error(ErrorKind::kInvalidArgument,
                    "target count does not match vector count: " +
                        std::to_string(spec.targets.size()) + " vs " +
                        std::to_string(spec.vectors.size()));
    }
    for (double a : spec.targets) {
        if (!(a >= -kTargetTol && a <= 2.0 + kTargetTol)) {
            throw Error(ErrorKind::kInvalidArgument,
                        "target distance " + std::to_string(a) + " outside [0, 2]");
        }
    }
}

std::vector<Vec> normalize_rows(const std::vector<Vec>& vectors) {
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

// w_i = 1 - alpha_i with roundoff-dusted targets clamped into [0, 2].
std::vector<double> targets_to_rhs(const std::vector<double>& targets) {
    std::vector<double> w;
    w.reserve(targets.size());
    for (double a : targets) w.push_back(1.0 - std::clamp(a, 0.0, 2.0));
    return w;
}

Vec combine(const std::vector<Vec>& rows, const std::vector<double>& z) {
    Vec x(rows.front().size(), 0.0);
    for (std::size_t i = 0; i < rows.size(); ++i) axpy(x, z[i], rows[i]);
    return x;
}

} // namespace

DistanceSpec reduce_dependent_rows(const DistanceSpec& spec, double rank_tol) {
    validate_spec(spec);
    if (spec.vectors.empty()) return {};

    const std::vector<Vec> unit = normalize_rows(spec.vectors);
    const std::vector<double> w = targets_to_rhs(spec.targets);

    DistanceSpec out;
    OrthonormalBasis kept_basis;
    std::vector<Vec> kept_unit;
    std::vector<double> kept_w;
    for (std::size_t i = 0; i < unit.size(); ++i) {
        Vec residual = project_onto_complement(unit[i], kept_basis);
        if (norm(residual) > rank_tol) {
            kept_basis.vectors.push_back(normalized(residual));
            kept_unit.push_back(unit[i]);
            kept_w.push_back(w[i]);
            out.vectors.push_back(spec.vectors[i]);
            out.targets.push_back(spec.targets[i]);
            continue;
        }
        // Dependent row: its target is forced by the rows it depends on.
        std::vector<double> rhs(kept_unit.size());
        for (std::size_t j = 0; j < kept_unit.size(); ++j) rhs[j] = inner(kept_unit[j], unit[i]);
        const std::vector<double> c = solve_gram(kept_unit, rhs);
        double induced = 0.0;
        for (std::size_t j = 0; j < c.size(); ++j) induced += c[j] * kept_w[j];
        if (std::abs(induced - w[i]) > kConsistencyTol) {
            throw Error(ErrorKind::kInconsistentSystem,
                        "row " + std::to_string(i + 1) +
                            " depends on earlier rows but prescribes an incompatible distance");
        }
    }
    return out;
}

Vec solve_at_distances(const DistanceSpec& spec, double rank_tol) {
    validate_spec(spec);
    if (spec.vectors.empty()) {
        throw Error(ErrorKind::kEmptyInput, "no vectors to match distances against");
    }
    const DistanceSpec red = reduce_dependent_rows(spec, rank_tol);
    const std::vector<Vec> rows = normalize_rows(red.vectors);
    const std::vector<double> w = targets_to_rhs(red.targets);
    const std::size_t n = rows.front().size();

    const std::vector<double> z = solve_gram(rows, w);
    const Vec q = combine(rows, z);
    const double qn = norm(q);

    if (qn > 1.0 + kFeasibilityTol) {
        throw Error(ErrorKind::kInfeasible,
                    "no unit vector realizes the prescribed distances (certificate norm " +
                        std::to_string(qn) + " > 1)");
    }
    if (std::abs(qn - 1.0) <= kFeasibilityTol) {
        return scaled(q, 1.0 / qn);
    }

    const OrthonormalBasis row_basis = orthonormalize(rows, rank_tol);
    if (row_basis.rank() >= n) {
        throw Error(ErrorKind::kNullspaceEmpty,
                    "rows span the whole space; the unique candidate has norm " +
                        std::to_string(qn) + " != 1");
    }
    // The minimum-norm candidate q lies in the row space, so its null-space
    // component is zero; any unit null-space direction serves as x1.
    const Vec x1 = complement_basis(row_basis, n, rank_tol).vectors.front();
    const double t = std::sqrt(std::max(0.0, 1.0 - qn * qn));
    Vec x = q;
    axpy(x, t, x1);
    return normalized(x);
}

FeasibleInterval equal_distance_interval(const std::vector<Vec>& vectors, double rank_tol) {
    if (vectors.empty()) {
        throw Error(ErrorKind::kEmptyInput, "no vectors given");
    }
    const std::vector<Vec> rows = normalize_rows(vectors);
    if (orthonormalize(rows, rank_tol).rank() != rows.size()) {
        throw Error(ErrorKind::kDependentRows,
                    "normalized inputs are linearly dependent; reduce them first");
    }
    const std::vector<double> z = solve_gram(rows, std::vector<double>(rows.size(), 1.0));
    FeasibleInterval out;
    out.gram_norm = norm(combine(rows, z));
    out.lower = std::max(0.0, 1.0 - 1.0 / out.gram_norm);
    out.upper = std::min(2.0, 1.0 + 1.0 / out.gram_norm);
    return out;
}

std::pair<double, double> varying_distance_range(const std::vector<Vec>& vectors,
                                                 const std::vector<double>& u, double rank_tol) {
    if (u.size() != vectors.size()) {
        throw Error(ErrorKind::kInvalidArgument, "direction length does not match vector count");
    }
    for (std::size_t i = 0; i + 1 < u.size(); ++i) {
        if (!(u[i] < u[i + 1])) {
            throw Error(ErrorKind::kInvalidArgument, "direction must be strictly increasing");
        }
    }
    const FeasibleInterval interval = equal_distance_interval(vectors, rank_tol);
    if (1.0 - 1.0 / interval.gram_norm <= 1e-12) {
        throw Error(ErrorKind::kUnsupportedCase,
                    "smallest equal distance is zero; the varying-distance expansion needs it positive");
    }

    const std::vector<Vec> rows = normalize_rows(vectors);
    const std::vector<double> zu = solve_gram(rows, u);
    const Vec h = combine(rows, zu);
    double u_norm = 0.0;
    for (double v : u) u_norm += v * v;
    if (norm(h) <= rank_tol * std::max(1.0, std::sqrt(u_norm))) {
        throw Error(ErrorKind::kDegenerateDirection,
                    "direction synthesizes to the zero vector; distances cannot vary along it");
    }
    const double a = inner(h, h);
    const std::vector<double> ze = solve_gram(rows, std::vector<double>(rows.size(), 1.0));
    double b = 0.0;
    for (std::size_t i = 0; i < u.size(); ++i) b += u[i] * ze[i];
    b *= 2.0 / interval.gram_norm;

    if (b >= 0.0) return {0.0, b / a};
    return {b / a, 0.0};
}

double p_of_t_check(const Vec& q, const Vec& x1, double t) {
    return t * t * inner(x1, x1) + inner(q, q);
}

} // namespace ose
