#include "ose/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "ose/errors.hpp"

namespace ose {

namespace {

void check_same_dim(const Vec& x, const Vec& y) {
    if (x.size() != y.size()) {
        throw Error(ErrorKind::kDimMismatch,
                    "vector dimensions differ: " + std::to_string(x.size()) + " vs " +
                        std::to_string(y.size()));
    }
}

} // namespace

double inner(const Vec& x, const Vec& y) {
    check_same_dim(x, y);
    double s = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) s += x[i] * y[i];
    return s;
}

double norm(const Vec& x) { return std::sqrt(inner(x, x)); }

void axpy(Vec& y, double a, const Vec& x) {
    check_same_dim(y, x);
    for (std::size_t i = 0; i < x.size(); ++i) y[i] += a * x[i];
}

Vec scaled(const Vec& x, double a) {
    Vec out(x);
    for (double& v : out) v *= a;
    return out;
}

Vec normalized(const Vec& x) {
    const double n = norm(x);
    if (n == 0.0) throw Error(ErrorKind::kZeroVector, "cannot normalize the zero vector");
    return scaled(x, 1.0 / n);
}

double cosine_distance(const Vec& x, const Vec& y) {
    check_same_dim(x, y);
    const double nx = norm(x);
    const double ny = norm(y);
    if (nx == 0.0 || ny == 0.0) {
        throw Error(ErrorKind::kZeroVector, "cosine distance undefined for the zero vector");
    }
    const double d = 1.0 - inner(x, y) / (nx * ny);
    // Rounding can push the value a hair outside [0, 2]; clamp so callers
    // can rely on the mathematical range.
    return std::clamp(d, 0.0, 2.0);
}

double half_sq_norm_identity_check(const Vec& x, const Vec& y) {
    const Vec xn = normalized(x);
    const Vec yn = normalized(y);
    check_same_dim(xn, yn);
    double s = 0.0;
    for (std::size_t i = 0; i < xn.size(); ++i) {
        const double d = xn[i] - yn[i];
        s += d * d;
    }
    return 0.5 * s;
}

OrthonormalBasis orthonormalize(const std::vector<Vec>& vectors, double rank_tol) {
    OrthonormalBasis basis;
    if (vectors.empty()) return basis;

    const std::size_t dim = vectors.front().size();
    double max_norm = 0.0;
    for (const Vec& v : vectors) {
        if (v.size() != dim) {
            throw Error(ErrorKind::kDimMismatch, "inconsistent dimensions in basis input");
        }
        max_norm = std::max(max_norm, norm(v));
    }
    const double drop = rank_tol * max_norm;

    for (const Vec& v : vectors) {
        Vec w = v;
        // Two projection passes: plain MGS loses orthogonality when a
        // candidate is nearly dependent on the accepted set.
        for (int pass = 0; pass < 2; ++pass) {
            for (const Vec& b : basis.vectors) axpy(w, -inner(w, b), b);
        }
        const double r = norm(w);
        if (r <= drop) continue;
        basis.vectors.push_back(scaled(w, 1.0 / r));
    }
    return basis;
}

Vec project_onto_complement(const Vec& x, const OrthonormalBasis& basis) {
    Vec w = x;
    for (int pass = 0; pass < 2; ++pass) {
        for (const Vec& b : basis.vectors) axpy(w, -inner(w, b), b);
    }
    return w;
}

OrthonormalBasis complement_basis(const OrthonormalBasis& basis, std::size_t dim,
                                  double rank_tol) {
    if (basis.rank() > dim) {
        throw Error(ErrorKind::kInvalidArgument, "basis rank exceeds ambient dimension");
    }
    OrthonormalBasis out;
    const std::size_t want = dim - basis.rank();
    for (std::size_t i = 0; i < dim && out.rank() < want; ++i) {
        Vec e(dim, 0.0);
        e[i] = 1.0;
        Vec w = project_onto_complement(e, basis);
        for (int pass = 0; pass < 2; ++pass) {
            for (const Vec& b : out.vectors) axpy(w, -inner(w, b), b);
        }
        const double r = norm(w);
        if (r <= rank_tol) continue;
        out.vectors.push_back(scaled(w, 1.0 / r));
    }
    return out;
}

std::vector<double> solve_gram(const std::vector<Vec>& rows, const std::vector<double>& rhs) {
    const std::size_t n = rows.size();
    if (rhs.size() != n) {
        throw Error(ErrorKind::kDimMismatch, "right-hand side size does not match row count");
    }
    if (n == 0) return {};

    std::vector<double> g(n * n);
    double max_diag = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j <= i; ++j) {
            const double v = inner(rows[i], rows[j]);
            g[i * n + j] = v;
            g[j * n + i] = v;
        }
        max_diag = std::max(max_diag, g[i * n + i]);
    }

    // In-place Cholesky: G = L L^t. The Gram matrix is PSD, so a pivot at
    // or below roundoff scale means the rows are linearly dependent.
    const double pivot_floor = max_diag * 64.0 * std::numeric_limits<double>::epsilon();
    for (std::size_t j = 0; j < n; ++j) {
        double d = g[j * n + j];
        for (std::size_t k = 0; k < j; ++k) d -= g[j * n + k] * g[j * n + k];
        if (d <= pivot_floor) {
            throw Error(ErrorKind::kSingularGram, "Gram matrix is singular to working precision");
        }
        const double ljj = std::sqrt(d);
        g[j * n + j] = ljj;
        for (std::size_t i = j + 1; i < n; ++i) {
            double s = g[i * n + j];
            for (std::size_t k = 0; k < j; ++k) s -= g[i * n + k] * g[j * n + k];
            g[i * n + j] = s / ljj;
        }
    }

    // L y = rhs, then L^t z = y.
    std::vector<double> z(rhs);
    for (std::size_t i = 0; i < n; ++i) {
        double s = z[i];
        for (std::size_t k = 0; k < i; ++k) s -= g[i * n + k] * z[k];
        z[i] = s / g[i * n + i];
    }
    for (std::size_t ii = n; ii-- > 0;) {
        double s = z[ii];
        for (std::size_t k = ii + 1; k < n; ++k) s -= g[k * n + ii] * z[k];
        z[ii] = s / g[ii * n + ii];
    }
    return z;
}

} // namespace ose
