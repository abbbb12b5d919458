#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "woven/matrix.hpp"

// Finite frames for R^d.  A frame is an ordered, finite list of vectors
// whose synthesis matrix (vectors as columns) has full row rank; the frame
// operator S = T T^T is then positive definite and its extreme eigenvalues
// are the optimal frame bounds.  Order matters everywhere in this library --
// weaving interleaves frames position by position -- so Frame is a sequence,
// not a set, and duplicates are perfectly legal.

namespace woven {

class Frame {
public:
    // Validates: dim >= 1, at least one vector, every vector of length dim,
    // all entries finite.  Throws ShapeError / ValueError.
    Frame(std::size_t dim, std::vector<std::vector<double>> vectors);

    static Frame from_synthesis(const Matrix& t);

    std::size_t dim() const { return dim_; }
    std::size_t size() const { return vectors_.size(); }
    const std::vector<double>& vector(std::size_t i) const { return vectors_[i]; }
    const std::vector<std::vector<double>>& vectors() const { return vectors_; }

    bool operator==(const Frame& rhs) const = default;

private:
    std::size_t dim_;
    std::vector<std::vector<double>> vectors_;
};

// -- frame-decision threshold -------------------------------------------------
//
// A computed lower spectral bound counts as "positive" when it clears
// kFrameTauAbs + kFrameTauRel * lambda_max.  The relative term tracks the
// scale of the frame; the absolute term keeps the zero frame out.  Every
// is-this-a-frame decision in the library (frame_bounds consumers, Riesz
// checks, the weaving verdict) goes through this one definition.

inline constexpr double kFrameTauAbs = 1e-12;
inline constexpr double kFrameTauRel = 1e-10;

inline double frame_threshold(double lambda_max) {
    return kFrameTauAbs + kFrameTauRel * lambda_max;
}

// -- operators and bounds ------------------------------------------------------

// d x n matrix whose i-th column is the i-th frame vector.
Matrix synthesis(const Frame& f);

// S = T T^T, the d x d frame operator.
Matrix frame_operator(const Frame& f);

// n x n Gram matrix T^T T.
Matrix gram(const Frame& f);

struct BoundsReport {
    double lower = 0.0;  // lambda_min(S), clamped at zero
    double upper = 0.0;  // lambda_max(S)
};

// Optimal frame bounds (extreme eigenvalues of the frame operator).
BoundsReport frame_bounds(const Frame& f);

// True when the lower frame bound clears the frame-decision threshold.
bool is_frame(const Frame& f);

// Extreme eigenvalues of the Gram matrix: the optimal Riesz-sequence bounds.
BoundsReport riesz_bounds(const Frame& f);

// A Riesz basis here means: exactly d vectors with Gram lambda_min above the
// threshold.
bool is_riesz_basis(const Frame& f);

// -- excess ---------------------------------------------------------------------

struct ExcessReport {
    std::size_t excess = 0;               // n - rank(synthesis)
    std::vector<std::size_t> riesz_indices;      // 1-based, kept by the greedy scan
    std::vector<std::size_t> redundant_indices;  // 1-based complement
};

// Greedy left-to-right split of the index set: an index is kept when its
// vector is linearly independent of the kept vectors before it.  The kept
// part spans the same space as the whole frame; excess = n - |kept|.
ExcessReport excess(const Frame& f);

// -- duality check ----------------------------------------------------------------

// True when T_phi T_psi^T = I entrywise within `tol`.
// Throws DimensionMismatch when dims or lengths differ.
bool verify_duality(const Frame& phi, const Frame& psi, double tol = 1e-9);

// -- pointwise helpers used by duals, certificates, and tests --------------------

// { op * f_i }: apply a d x d operator to every vector.
Frame apply_operator(const Matrix& op, const Frame& f);

// { weights_i * f_i }: elementwise scalar multiples.
// Throws DimensionMismatch when the weight count differs from the frame size.
Frame scale_elementwise(const Frame& f, const std::vector<double>& weights);

}  // namespace woven
