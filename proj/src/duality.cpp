#include "woven/duality.hpp"

#include <utility>

#include "woven/errors.hpp"
#include "woven/numerics.hpp"
#include "woven/splitmix.hpp"

namespace woven {

PerturbationSequence PerturbationSequence::zero(std::size_t dim, std::size_t n) {
    return PerturbationSequence{Matrix(dim, n), 0.0};
}

PerturbationSequence PerturbationSequence::from_vectors(const Matrix& u) {
    return PerturbationSequence{u, operator_norm(u * u.transpose())};
}

namespace {

Frame require_frame(const Frame& phi, const char* op) {
    if (!is_frame(phi)) throw NotAFrame(std::string(op) + " requires a frame");
    return phi;
}

}  // namespace

Frame canonical_dual(const Frame& phi) {
    require_frame(phi, "canonical_dual");
    const Matrix s_inv = spd_power(frame_operator(phi), -1.0);
    return apply_operator(s_inv, phi);
}

Frame canonical_parseval(const Frame& phi) {
    require_frame(phi, "canonical_parseval");
    const Matrix s_inv_half = spd_power(frame_operator(phi), -0.5);
    return apply_operator(s_inv_half, phi);
}

DualFamily perturbation_space(const Frame& phi) {
    require_frame(phi, "perturbation_space");
    // For a frame the synthesis matrix has rank d, so the kernel dimension
    // equals the excess n - d.
    const RankNullspace kernel = rank_nullspace(synthesis(phi));
    return DualFamily{phi, canonical_dual(phi), kernel.null_basis};
}

DualResult make_dual(const DualFamily& family, const Matrix& coeffs) {
    const std::size_t d = family.parent.dim();
    if (coeffs.rows() != d || coeffs.cols() != family.excess())
        throw ShapeMismatch("coefficient matrix must be dim x excess");

    // T_u = M W^T: every row is a combination of kernel basis vectors, so
    // T_u T_phi^T = 0 holds by construction rather than by rounding luck.
    const Matrix u_syn = coeffs * family.basis.transpose();
    PerturbationSequence u = PerturbationSequence::from_vectors(u_syn);
    Frame dual = apply_perturbation(family.canonical, u, 1.0);
    return DualResult{std::move(dual), std::move(u)};
}

PerturbationSequence scale_perturbation(const PerturbationSequence& u, double eps) {
    return PerturbationSequence{u.vectors * eps, u.bessel_bound * eps * eps};
}

Frame apply_perturbation(const Frame& base, const PerturbationSequence& u, double eps) {
    if (u.dim() != base.dim() || u.size() != base.size())
        throw DimensionMismatch("perturbation shape must match the frame");
    std::vector<std::vector<double>> out = base.vectors();
    for (std::size_t k = 0; k < out.size(); ++k)
        for (std::size_t i = 0; i < base.dim(); ++i)
            out[k][i] += eps * u.vectors(i, k);
    return Frame(base.dim(), std::move(out));
}

DualResult random_dual(const Frame& phi, std::uint64_t seed, double scale) {
    const DualFamily family = perturbation_space(phi);
    SplitMix64 rng(seed);
    Matrix coeffs(phi.dim(), family.excess());
    for (std::size_t i = 0; i < coeffs.rows(); ++i)
        for (std::size_t j = 0; j < coeffs.cols(); ++j)
            coeffs(i, j) = rng.symmetric(scale);
    return make_dual(family, coeffs);
}

}  // namespace woven
