#include "woven/frame.hpp"

#include <cmath>

#include "woven/errors.hpp"
#include "woven/numerics.hpp"

namespace woven {

Frame::Frame(std::size_t dim, std::vector<std::vector<double>> vectors)
    : dim_(dim), vectors_(std::move(vectors)) {
    if (dim_ == 0) throw ShapeError("frame dimension must be at least 1");
    if (vectors_.empty()) throw ShapeError("a frame needs at least one vector");
    for (const auto& v : vectors_) {
        if (v.size() != dim_)
            throw ShapeError("every frame vector must have length equal to dim");
        for (double x : v)
            if (!std::isfinite(x)) throw ValueError("frame entries must be finite");
    }
}

Frame Frame::from_synthesis(const Matrix& t) {
    std::vector<std::vector<double>> vectors(t.cols());
    for (std::size_t j = 0; j < t.cols(); ++j) vectors[j] = t.column(j);
    return Frame(t.rows(), std::move(vectors));
}

Matrix synthesis(const Frame& f) {
    Matrix t(f.dim(), f.size());
    for (std::size_t j = 0; j < f.size(); ++j) t.set_column(j, f.vector(j));
    return t;
}

Matrix frame_operator(const Frame& f) {
    // Sum of outer products; cheaper and clearer than forming T explicitly.
    Matrix s(f.dim(), f.dim());
    for (std::size_t k = 0; k < f.size(); ++k) {
        const auto& v = f.vector(k);
        for (std::size_t i = 0; i < f.dim(); ++i)
            for (std::size_t j = 0; j < f.dim(); ++j) s(i, j) += v[i] * v[j];
    }
    return s;
}

Matrix gram(const Frame& f) {
    Matrix g(f.size(), f.size());
    for (std::size_t i = 0; i < f.size(); ++i)
        for (std::size_t j = 0; j < f.size(); ++j)
            g(i, j) = dot(f.vector(i), f.vector(j));
    return g;
}

namespace {

BoundsReport extreme_eigenvalues(const Matrix& m) {
    const std::vector<double> values = sym_eigenvalues(m);
    BoundsReport b;
    b.lower = std::max(values.front(), 0.0);  // PSD up to rounding
    b.upper = std::max(values.back(), 0.0);
    return b;
}

}  // namespace

BoundsReport frame_bounds(const Frame& f) {
    return extreme_eigenvalues(frame_operator(f));
}

bool is_frame(const Frame& f) {
    const BoundsReport b = frame_bounds(f);
    return b.lower > frame_threshold(b.upper);
}

BoundsReport riesz_bounds(const Frame& f) {
    return extreme_eigenvalues(gram(f));
}

bool is_riesz_basis(const Frame& f) {
    if (f.size() != f.dim()) return false;
    const BoundsReport b = riesz_bounds(f);
    return b.lower > frame_threshold(b.upper);
}

ExcessReport excess(const Frame& f) {
    // Modified Gram-Schmidt over the vectors in order, with a second
    // orthogonalization pass for numerical safety.  A vector whose residual
    // after projection is negligible relative to the frame's overall scale
    // is dependent on its kept predecessors.
    const double scale = synthesis(f).frobenius_norm();
    const double cutoff = kRankTolerance * scale;

    ExcessReport report;
    std::vector<std::vector<double>> basis;  // orthonormal, spans kept vectors
    for (std::size_t k = 0; k < f.size(); ++k) {
        std::vector<double> r = f.vector(k);
        for (int pass = 0; pass < 2; ++pass)
            for (const auto& b : basis) {
                const double c = dot(r, b);
                for (std::size_t i = 0; i < r.size(); ++i) r[i] -= c * b[i];
            }
        const double rn = norm2(r);
        if (rn > cutoff) {
            for (double& x : r) x /= rn;
            basis.push_back(std::move(r));
            report.riesz_indices.push_back(k + 1);
        } else {
            report.redundant_indices.push_back(k + 1);
        }
    }
    report.excess = f.size() - report.riesz_indices.size();
    return report;
}

bool verify_duality(const Frame& phi, const Frame& psi, double tol) {
    if (phi.dim() != psi.dim())
        throw DimensionMismatch("duality check requires frames of equal dimension");
    if (phi.size() != psi.size())
        throw DimensionMismatch("duality check requires frames of equal length");
    // T_phi T_psi^T = sum_i phi_i psi_i^T must be the identity.
    Matrix cross(phi.dim(), phi.dim());
    for (std::size_t k = 0; k < phi.size(); ++k) {
        const auto& u = phi.vector(k);
        const auto& v = psi.vector(k);
        for (std::size_t i = 0; i < phi.dim(); ++i)
            for (std::size_t j = 0; j < phi.dim(); ++j) cross(i, j) += u[i] * v[j];
    }
    for (std::size_t i = 0; i < phi.dim(); ++i)
        for (std::size_t j = 0; j < phi.dim(); ++j) {
            const double want = i == j ? 1.0 : 0.0;
            if (std::abs(cross(i, j) - want) > tol) return false;
        }
    return true;
}

Frame apply_operator(const Matrix& op, const Frame& f) {
    if (op.rows() != f.dim() || op.cols() != f.dim())
        throw DimensionMismatch("operator shape must match the frame dimension");
    std::vector<std::vector<double>> out(f.size(), std::vector<double>(f.dim(), 0.0));
    for (std::size_t k = 0; k < f.size(); ++k) {
        const auto& v = f.vector(k);
        for (std::size_t i = 0; i < f.dim(); ++i) {
            double s = 0.0;
            for (std::size_t j = 0; j < f.dim(); ++j) s += op(i, j) * v[j];
            out[k][i] = s;
        }
    }
    return Frame(f.dim(), std::move(out));
}

Frame scale_elementwise(const Frame& f, const std::vector<double>& weights) {
    if (weights.size() != f.size())
        throw DimensionMismatch("need exactly one scalar per frame vector");
    std::vector<std::vector<double>> out = f.vectors();
    for (std::size_t k = 0; k < out.size(); ++k)
        for (double& x : out[k]) x *= weights[k];
    return Frame(f.dim(), std::move(out));
}

}  // namespace woven
