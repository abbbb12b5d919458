#include "woven/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "woven/errors.hpp"

namespace woven {

namespace {

// Sum of squares of strictly off-diagonal entries.
double off_diagonal_mass(const Matrix& a) {
    double sum = 0.0;
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j)
            if (i != j) sum += a(i, j) * a(i, j);
    return sum;
}

Matrix symmetrized_or_throw(const Matrix& m) {
    if (m.rows() != m.cols())
        throw NonSymmetric("sym_eig requires a square matrix");
    double asym = 0.0;
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = i + 1; j < m.cols(); ++j)
            asym = std::max(asym, std::abs(m(i, j) - m(j, i)));
    if (asym > kSymmetryTolerance * std::max(m.max_abs(), 1e-300))
        throw NonSymmetric("matrix is not symmetric within tolerance");
    Matrix a = m;
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j)
            a(i, j) = 0.5 * (m(i, j) + m(j, i));
    return a;
}

// Core cyclic Jacobi.  Rotates (p, q) pairs in fixed row-major order until
// the off-diagonal mass falls under kJacobiTolerance * ||input||_F.  When
// `accumulate` is non-null the rotations are collected into it, yielding the
// eigenvector matrix.
std::vector<double> jacobi(Matrix a, Matrix* accumulate) {
    const std::size_t n = a.rows();
    if (accumulate) *accumulate = Matrix::identity(n);
    if (n <= 1) return n == 1 ? std::vector<double>{a(0, 0)} : std::vector<double>{};

    const double target = kJacobiTolerance * a.frobenius_norm();

    for (int sweep = 0; sweep < kJacobiMaxSweeps; ++sweep) {
        if (std::sqrt(off_diagonal_mass(a)) <= target) {
            std::vector<double> values(n);
            for (std::size_t i = 0; i < n; ++i) values[i] = a(i, i);
            return values;
        }
        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                const double apq = a(p, q);
                if (apq == 0.0) continue;
                const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
                // tan of the rotation angle; the |theta| guard avoids
                // overflow in theta^2 for nearly-diagonal pairs.
                double t;
                if (std::abs(theta) > 1e150) {
                    t = 1.0 / (2.0 * theta);
                } else {
                    t = 1.0 / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                    if (theta < 0.0) t = -t;
                }
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;
                const double tau = s / (1.0 + c);

                const double app = a(p, p), aqq = a(q, q);
                a(p, p) = app - t * apq;
                a(q, q) = aqq + t * apq;
                a(p, q) = 0.0;
                a(q, p) = 0.0;
                for (std::size_t k = 0; k < n; ++k) {
                    if (k == p || k == q) continue;
                    const double akp = a(k, p), akq = a(k, q);
                    a(k, p) = akp - s * (akq + tau * akp);
                    a(p, k) = a(k, p);
                    a(k, q) = akq + s * (akp - tau * akq);
                    a(q, k) = a(k, q);
                }
                if (accumulate) {
                    for (std::size_t k = 0; k < n; ++k) {
                        const double vkp = (*accumulate)(k, p);
                        const double vkq = (*accumulate)(k, q);
                        (*accumulate)(k, p) = vkp - s * (vkq + tau * vkp);
                        (*accumulate)(k, q) = vkq + s * (vkp - tau * vkq);
                    }
                }
            }
        }
    }
    if (std::sqrt(off_diagonal_mass(a)) <= target) {
        std::vector<double> values(n);
        for (std::size_t i = 0; i < n; ++i) values[i] = a(i, i);
        return values;
    }
    throw NoConvergence("Jacobi iteration did not converge within the sweep limit");
}

// Ascending by eigenvalue; stable so equal eigenvalues keep their
// post-iteration order, which keeps the output deterministic.
std::vector<std::size_t> ascending_order(const std::vector<double>& values) {
    std::vector<std::size_t> idx(values.size());
    std::iota(idx.begin(), idx.end(), 0);
    std::stable_sort(idx.begin(), idx.end(),
                     [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
    return idx;
}

void fix_column_sign(Matrix& v, std::size_t col) {
    // First component of non-negligible magnitude decides the sign.  The
    // columns are unit vectors, so 1e-12 cleanly separates "structurally
    // zero" from real components.
    for (std::size_t i = 0; i < v.rows(); ++i) {
        const double x = v(i, col);
        if (std::abs(x) > 1e-12) {
            if (x < 0.0)
                for (std::size_t k = 0; k < v.rows(); ++k) v(k, col) = -v(k, col);
            return;
        }
    }
}

}  // namespace

SpectralDecomposition sym_eig(const Matrix& m) {
    Matrix a = symmetrized_or_throw(m);
    Matrix v;
    std::vector<double> raw = jacobi(std::move(a), &v);

    const auto order = ascending_order(raw);
    SpectralDecomposition out;
    out.values.resize(raw.size());
    out.vectors = Matrix(m.rows(), m.cols());
    for (std::size_t k = 0; k < order.size(); ++k) {
        out.values[k] = raw[order[k]];
        for (std::size_t i = 0; i < m.rows(); ++i) out.vectors(i, k) = v(i, order[k]);
        fix_column_sign(out.vectors, k);
    }
    return out;
}

std::vector<double> sym_eigenvalues(const Matrix& m) {
    std::vector<double> values = jacobi(symmetrized_or_throw(m), nullptr);
    std::sort(values.begin(), values.end());
    return values;
}

double operator_norm(const Matrix& m) {
    if (m.rows() == 0 || m.cols() == 0) return 0.0;
    // Gram form keeps the eigenproblem symmetric regardless of m's shape;
    // work with the smaller of the two Gram matrices.
    const Matrix g = m.rows() < m.cols() ? m * m.transpose() : m.transpose() * m;
    const std::vector<double> values = sym_eigenvalues(g);
    return std::sqrt(std::max(values.back(), 0.0));
}

Matrix spd_power(const Matrix& m, double p) {
    const SpectralDecomposition eig = sym_eig(m);
    const double lambda_min = eig.values.front();
    const double lambda_max = eig.values.back();
    if (lambda_max <= 0.0 || lambda_min <= kRankTolerance * lambda_max)
        throw NotPositiveDefinite("spd_power requires a positive definite matrix");

    const std::size_t n = m.rows();
    Matrix scaled(n, n);  // V diag(lambda^p)
    for (std::size_t j = 0; j < n; ++j) {
        const double lp = std::pow(eig.values[j], p);
        for (std::size_t i = 0; i < n; ++i) scaled(i, j) = eig.vectors(i, j) * lp;
    }
    Matrix out = scaled * eig.vectors.transpose();
    // The product is symmetric up to rounding; make it exactly so.
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            const double avg = 0.5 * (out(i, j) + out(j, i));
            out(i, j) = avg;
            out(j, i) = avg;
        }
    return out;
}

RankNullspace rank_nullspace(const Matrix& m, double tau_rel) {
    RankNullspace out;
    const std::size_t n = m.cols();
    if (n == 0) {
        out.null_basis = Matrix(0, 0);
        return out;
    }

    // ker(M) = ker(M^T M), and the eigenvectors of the Gram matrix paired
    // with negligible eigenvalues are an orthonormal basis of it.
    const SpectralDecomposition eig = sym_eig(m.transpose() * m);
    const double sigma_max = std::sqrt(std::max(eig.values.back(), 0.0));
    const double cutoff = tau_rel * sigma_max;

    std::vector<std::size_t> null_cols;
    for (std::size_t k = 0; k < n; ++k) {
        const double sigma = std::sqrt(std::max(eig.values[k], 0.0));
        if (sigma > cutoff) {
            ++out.rank;
        } else {
            null_cols.push_back(k);
        }
    }

    out.null_basis = Matrix(n, null_cols.size());
    for (std::size_t j = 0; j < null_cols.size(); ++j)
        for (std::size_t i = 0; i < n; ++i)
            out.null_basis(i, j) = eig.vectors(i, null_cols[j]);
    return out;
}

}  // namespace woven
