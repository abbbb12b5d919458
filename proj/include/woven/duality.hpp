#pragma once

#include <cstdint>

#include "woven/frame.hpp"
#include "woven/matrix.hpp"

// Dual frames.  For a frame phi with frame operator S, every dual of phi is
//
//     psi_i = S^{-1} phi_i + u_i,
//
// where the perturbation sequence u has synthesis matrix T_u satisfying
// T_u T_phi^T = 0, i.e. the rows of T_u lie in the kernel of the analysis
// map.  We parameterize that kernel once per frame: perturbation_space
// computes an orthonormal basis W (n x excess) of ker(T_phi), and any
// coefficient matrix M (d x excess) yields an admissible T_u = M W^T.  The
// constraint then holds by construction, not by luck of rounding.

namespace woven {

// A Bessel perturbation sequence: n vectors in R^d stored as the columns of
// `vectors`, plus its Bessel bound lambda_max(T_u T_u^T).
struct PerturbationSequence {
    Matrix vectors;       // d x n synthesis matrix of the u_i
    double bessel_bound;  // lambda_max(T_u T_u^T)

    std::size_t dim() const { return vectors.rows(); }
    std::size_t size() const { return vectors.cols(); }

    static PerturbationSequence zero(std::size_t dim, std::size_t n);
    static PerturbationSequence from_vectors(const Matrix& u);
};

// The data needed to enumerate duals of one frame.
struct DualFamily {
    Frame parent;
    Frame canonical;  // S^{-1} phi
    Matrix basis;     // n x excess, orthonormal columns spanning ker(T_phi)

    std::size_t excess() const { return basis.cols(); }
};

struct DualResult {
    Frame dual;                // canonical + u, a verified dual of the parent
    PerturbationSequence u;
};

// S^{-1} phi.  Throws NotAFrame when phi is not a frame.
Frame canonical_dual(const Frame& phi);

// S^{-1/2} phi, the closest Parseval frame.  Throws NotAFrame.
Frame canonical_parseval(const Frame& phi);

// Canonical dual plus an orthonormal kernel basis of the synthesis matrix.
// Throws NotAFrame.
DualFamily perturbation_space(const Frame& phi);

// Dual for a concrete coefficient matrix (dim x excess).
// Throws ShapeMismatch when coeffs has the wrong shape.
DualResult make_dual(const DualFamily& family, const Matrix& coeffs);

// Same dual family member with the perturbation scaled by eps; the Bessel
// bound scales by eps^2 exactly.
PerturbationSequence scale_perturbation(const PerturbationSequence& u, double eps);

// { base_i + eps * u_i }.  Used to realize duals at a chosen perturbation
// level.  Throws DimensionMismatch on shape disagreement.
Frame apply_perturbation(const Frame& base, const PerturbationSequence& u, double eps);

// Dual with coefficients drawn i.i.d. uniform on [-scale, scale] from a
// SplitMix64 stream seeded with `seed` (row-major fill order).  Reproducible
// across platforms.
DualResult random_dual(const Frame& phi, std::uint64_t seed, double scale);

}  // namespace woven
