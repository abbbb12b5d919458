#pragma once

#include <vector>

#include "woven/matrix.hpp"

// Symmetric eigensolver and the handful of spectral operations built on it.
//
// The solver is a cyclic Jacobi iteration.  At the dimensions this library
// targets, Jacobi is plenty fast, needs no pivoting heuristics, and -- being
// a fixed sequence of Givens rotations -- produces bit-identical results for
// identical inputs on every run and every thread.  That determinism is relied
// on by the weaving scan (identical verdicts for any worker count) and by the
// frozen values in the test suite.
//
// Conventions, pinned here and asserted in tests:
//   * eigenvalues are returned in ascending order;
//   * eigenvectors are the columns of `vectors`, orthonormal, paired with
//     `values` by index;
//   * each eigenvector is sign-normalized so its first component of
//     non-negligible magnitude is positive.

namespace woven {

// Relative tolerance separating "numerically zero" singular/eigenvalues from
// real ones.  Used by rank decisions and positive-definiteness checks.
inline constexpr double kRankTolerance = 1e-10;

// Jacobi convergence: off-diagonal Frobenius mass below this fraction of the
// input's Frobenius norm counts as diagonal.
inline constexpr double kJacobiTolerance = 1e-14;

// Hard cap on Jacobi sweeps before NoConvergence is thrown.  Well-conditioned
// symmetric matrices of desk-scale dimension converge in under fifteen.
inline constexpr int kJacobiMaxSweeps = 100;

// Inputs are accepted as symmetric if max |M_ij - M_ji| is within this
// fraction of the largest entry; the iteration then runs on (M + M^T)/2.
inline constexpr double kSymmetryTolerance = 1e-12;

struct SpectralDecomposition {
    std::vector<double> values;  // ascending
    Matrix vectors;              // orthonormal columns, vectors.col(k) <-> values[k]
};

// Full eigendecomposition of a symmetric matrix.
// Throws NonSymmetric, NoConvergence.
SpectralDecomposition sym_eig(const Matrix& m);

// Eigenvalues only (ascending).  Same iteration without accumulating the
// rotations; the exhaustive weaving scan calls this in its inner loop.
std::vector<double> sym_eigenvalues(const Matrix& m);

// Spectral operator norm, sqrt(lambda_max(M^T M)).  Zero for empty matrices.
double operator_norm(const Matrix& m);

// V diag(lambda^p) V^T for symmetric positive definite M.  Supports any real
// exponent; the library uses p in {-1, 1/2, -1/2}.
// Throws NotPositiveDefinite if lambda_min <= kRankTolerance * lambda_max.
Matrix spd_power(const Matrix& m, double p);

struct RankNullspace {
    std::size_t rank = 0;
    Matrix null_basis;  // cols x nullity, orthonormal columns spanning ker(M)
};

// Numerical rank and an orthonormal kernel basis, via the eigendecomposition
// of M^T M.  A singular value counts as nonzero when it exceeds
// tau_rel * sigma_max.
RankNullspace rank_nullspace(const Matrix& m, double tau_rel = kRankTolerance);

}  // namespace woven
