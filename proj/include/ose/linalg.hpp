#pragma once

#include <cstddef>
#include <vector>

namespace ose {

/// Dense real coordinate vector. Embedding files carry ~6 significant
/// digits; double precision keeps solver error below test tolerances.
using Vec = std::vector<double>;

/// Relative tolerance used for rank decisions throughout the library.
inline constexpr double kDefaultRankTol = 1e-10;

double inner(const Vec& x, const Vec& y);
double norm(const Vec& x);

/// y += a * x
void axpy(Vec& y, double a, const Vec& x);
Vec scaled(const Vec& x, double a);

/// x / ||x||. Throws ZeroVector when ||x|| = 0.
Vec normalized(const Vec& x);

/// 1 - <x,y> / (||x|| ||y||), in [0, 2]. Throws ZeroVector, DimMismatch.
double cosine_distance(const Vec& x, const Vec& y);

/// (1/2) ||x/||x|| - y/||y||||^2. Equals cosine_distance(x, y) exactly in
/// real arithmetic; kept as an independent route for verification.
double half_sq_norm_identity_check(const Vec& x, const Vec& y);

struct OrthonormalBasis {
    std::vector<Vec> vectors;

    std::size_t rank() const noexcept { return vectors.size(); }
    std::size_t dim() const noexcept { return vectors.empty() ? 0 : vectors.front().size(); }
};

/// Orthonormal basis of the span of the inputs via modified Gram-Schmidt
/// with one re-orthogonalization pass. A candidate whose residual norm
/// after projecting out the accepted vectors is <= rank_tol * (max input
/// norm) is dropped as dependent. Empty input yields a rank-0 basis.
OrthonormalBasis orthonormalize(const std::vector<Vec>& vectors, double rank_tol = kDefaultRankTol);

/// x - sum_i <x, b_i> b_i, the projection of x onto the orthogonal
/// complement of span(basis).
Vec project_onto_complement(const Vec& x, const OrthonormalBasis& basis);

/// Orthonormal basis of the orthogonal complement of span(basis) in
/// R^dim, built deterministically by projecting the standard basis
/// vectors e_1, e_2, ... and keeping the first dim - rank survivors.
OrthonormalBasis complement_basis(const OrthonormalBasis& basis, std::size_t dim,
                                  double rank_tol = kDefaultRankTol);

/// Solves (V V^t) z = rhs by Cholesky factorization, where the rows of V
/// are `rows`. The Gram matrix is symmetric PSD, so a failed factorization
/// doubles as the singularity detector (SingularGram).
std::vector<double> solve_gram(const std::vector<Vec>& rows, const std::vector<double>& rhs);

} // namespace ose
