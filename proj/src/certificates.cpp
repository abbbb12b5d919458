#include "woven/certificates.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>

#include "woven/errors.hpp"
#include "woven/numerics.hpp"

namespace woven {
namespace {

// Safety margin baked into every bisected strict inequality: the returned
// level satisfies its condition with at least this much room.
constexpr double kConditionMargin = 1e-12;

// Tolerance for "this perturbation annihilates the analysis range" and for
// dual verification inside certificate preconditions.
constexpr double kAdmissibilityTolerance = 1e-9;

// Largest x in (0, cap] satisfying a monotone predicate that holds near 0.
// cap may be +infinity, in which case the bracket is grown by doubling.
// Returns 0 when even a tiny probe fails and cap when the predicate holds
// there.  The bisection tightens until the bracket is narrow relative to the
// answer, so the returned level is feasible while slightly larger levels are
// not.
double largest_feasible(const std::function<bool(double)>& ok, double cap) {
    constexpr double kProbe = 1e-12;
    if (!ok(kProbe)) return 0.0;
    double lo = kProbe;
    double hi;
    if (std::isfinite(cap)) {
        if (ok(cap)) return cap;
        hi = cap;
    } else {
        hi = 1.0;
        while (ok(hi)) {
            lo = hi;
            hi *= 2.0;
            if (hi > 1e300) return lo;
        }
    }
    for (int iter = 0; iter < 500 && hi - lo > 1e-12 * std::max(1.0, lo); ++iter) {
        const double mid = 0.5 * (lo + hi);
        (ok(mid) ? lo : hi) = mid;
    }
    return lo;
}

void require_frame(const Frame& f, const char* label) {
    if (!is_frame(f)) {
        throw NotAFrame(std::string(label) + " does not satisfy a positive lower frame bound");
    }
}

void require_same_shape(const Frame& a, const Frame& b) {
    if (a.dim() != b.dim() || a.size() != b.size()) {
        throw DimensionMismatch("frames must share dimension and length");
    }
}

// The admissible perturbations of a frame are exactly the sequences whose
// synthesis operator annihilates the range of the frame's analysis operator;
// anything else does not produce duals.
void require_admissible(const Frame& phi, const PerturbationSequence& u, const char* label) {
    if (u.dim() != phi.dim() || u.size() != phi.size()) {
        throw DimensionMismatch(std::string(label) + ": perturbation shape does not match the frame");
    }
    const Matrix t = synthesis(phi);
    const Matrix cross = u.vectors * t.transpose();
    const double scale = std::max(1.0, u.vectors.frobenius_norm() * t.frobenius_norm());
    if (cross.max_abs() > kAdmissibilityTolerance * scale) {
        throw NotDual(std::string(label) +
                      ": perturbation does not annihilate the analysis range, so it cannot "
                      "parameterize duals");
    }
}

Matrix identity_like(std::size_t dim) { return Matrix::identity(dim); }

double checked_positive(double value, const char* label) {
    if (!std::isfinite(value) || value <= 0.0) {
        throw ValueError(std::string(label) + " must be finite and positive");
    }
    return value;
}

Frame shifted_frame(const Frame& base, const PerturbationSequence& u, double scale) {
    return apply_perturbation(base, u, scale);
}

WeavingVerdict woven_or_throw(const Frame& a, const Frame& b, const ExhaustiveOptions& opts,
                              const char* what) {
    WeavingVerdict v = exhaustive_pair(a, b, opts);
    if (!v.woven) {
        throw NotWoven(std::string(what) + " is not woven, so the hypothesis has no base bound");
    }
    return v;
}

}  // namespace

CertificateResult cert_synthesis_proximity(const Frame& phi, const Frame& psi) {
    require_same_shape(phi, psi);
    require_frame(phi, "first frame");
    require_frame(psi, "second frame");

    CertificateResult r;
    r.name = "synthesis_proximity";

    const BoundsReport phi_bounds = frame_bounds(phi);
    const BoundsReport psi_bounds = frame_bounds(psi);
    const double distance = operator_norm(synthesis(phi) - synthesis(psi));
    const double budget =
        distance * (std::sqrt(phi_bounds.upper) + std::sqrt(psi_bounds.upper));

    r.quantities["synthesis_distance"] = distance;
    r.quantities["lower_phi"] = phi_bounds.lower;
    r.quantities["upper_phi"] = phi_bounds.upper;
    r.quantities["upper_psi"] = psi_bounds.upper;
    r.quantities["condition_lhs"] = budget;
    r.quantities["condition_rhs"] = phi_bounds.lower / 2.0;

    if (distance >= 1.0) {
        r.failed_condition = "synthesis distance must be below 1";
        return r;
    }
    if (budget > phi_bounds.lower / 2.0) {
        r.failed_condition =
            "distance * (sqrt(upper_phi) + sqrt(upper_psi)) exceeds lower_phi / 2";
        return r;
    }
    r.applicable = true;
    r.guaranteed_lower = phi_bounds.lower / 2.0;
    r.guaranteed_upper = phi_bounds.upper + psi_bounds.upper;
    return r;
}

CertificateResult cert_operator_multiplier(const Frame& phi, const Matrix& u) {
    require_frame(phi, "frame");
    if (u.rows() != phi.dim() || u.cols() != phi.dim()) {
        throw DimensionMismatch("multiplier must be a square matrix acting on the frame's space");
    }

    CertificateResult r;
    r.name = "operator_multiplier";

    const BoundsReport bounds = frame_bounds(phi);
    const double deviation = operator_norm(identity_like(phi.dim()) - u);
    const Frame mapped = apply_operator(u, phi);
    const BoundsReport mapped_bounds = frame_bounds(mapped);

    r.quantities["deviation"] = deviation;
    r.quantities["lower_phi"] = bounds.lower;
    r.quantities["upper_phi"] = bounds.upper;
    r.quantities["upper_mapped"] = mapped_bounds.upper;
    r.quantities["condition_lhs"] = deviation * deviation;
    r.quantities["condition_rhs"] = bounds.lower / bounds.upper;

    if (deviation * deviation >= bounds.lower / bounds.upper) {
        r.failed_condition = "||I - U||^2 must stay below lower_phi / upper_phi";
        return r;
    }
    const double root = std::sqrt(bounds.lower) - std::sqrt(bounds.upper) * deviation;
    r.applicable = true;
    r.guaranteed_lower = root * root;
    r.guaranteed_upper = bounds.upper + mapped_bounds.upper;
    return r;
}

CertificateResult cert_transitive_bridge(double a1, double a2, double b_psi, double b1,
                                         double b2) {
    checked_positive(a1, "a1");
    checked_positive(a2, "a2");
    checked_positive(b_psi, "b_psi");
    checked_positive(b1, "b1");
    checked_positive(b2, "b2");

    CertificateResult r;
    r.name = "transitive_bridge";
    r.quantities["lower_first"] = a1;
    r.quantities["lower_second"] = a2;
    r.quantities["upper_middle"] = b_psi;
    r.quantities["upper_first"] = b1;
    r.quantities["upper_second"] = b2;
    r.quantities["condition_lhs"] = a1 + a2;
    r.quantities["condition_rhs"] = b_psi;

    if (a1 + a2 <= b_psi) {
        r.failed_condition = "lower bounds through the middle frame must sum above its upper bound";
        return r;
    }
    r.applicable = true;
    r.guaranteed_lower = a1 + a2 - b_psi;
    r.guaranteed_upper = b1 + b2;
    return r;
}

CertificateResult cert_bessel_union(const std::vector<Frame>& frames) {
    if (frames.empty()) throw ShapeError("union certificate needs at least one family");
    for (std::size_t i = 1; i < frames.size(); ++i) {
        if (frames[i].dim() != frames[0].dim() || frames[i].size() != frames[0].size()) {
            throw DimensionMismatch("all families must share dimension and length");
        }
    }

    CertificateResult r;
    r.name = "bessel_union";
    r.kind = CertificateKind::UpperOnly;

    double total = 0.0;
    for (std::size_t i = 0; i < frames.size(); ++i) {
        const double upper = frame_bounds(frames[i]).upper;
        r.quantities["upper_" + std::to_string(i + 1)] = upper;
        total += upper;
    }
    r.quantities["upper_sum"] = total;
    r.applicable = true;
    r.guaranteed_upper = total;
    return r;
}

CertificateResult cert_redundant_small_norm(const Frame& phi, const PerturbationSequence& u,
                                            double eps, const ExhaustiveOptions& opts) {
    require_frame(phi, "frame");
    require_admissible(phi, u, "redundant_small_norm");
    if (!std::isfinite(eps) || eps < 0.0) {
        throw ValueError("perturbation level must be finite and nonnegative");
    }

    const ExcessReport ex = excess(phi);
    if (ex.excess == 0) {
        throw NoRedundancy("frame has no redundant vectors to carry the perturbation");
    }

    CertificateResult r;
    r.name = "redundant_small_norm";

    // Split off the spanning part found by the greedy scan and measure the
    // mass left on the redundant vectors.
    std::vector<std::vector<double>> riesz_vectors;
    riesz_vectors.reserve(ex.riesz_indices.size());
    for (std::size_t idx : ex.riesz_indices) riesz_vectors.push_back(phi.vector(idx - 1));
    const Frame riesz_part(phi.dim(), riesz_vectors);

    double redundant_mass = 0.0;
    for (std::size_t idx : ex.redundant_indices) {
        const std::vector<double>& v = phi.vector(idx - 1);
        for (double x : v) redundant_mass += x * x;
    }

    const Matrix s_riesz = frame_operator(riesz_part);
    const Frame riesz_mapped = apply_operator(s_riesz, riesz_part);
    const WeavingVerdict base = woven_or_throw(riesz_part, riesz_mapped, opts,
                                               "the spanning part against its operator image");

    const BoundsReport phi_bounds = frame_bounds(phi);
    const double b_phi = phi_bounds.upper;
    const double b_u = u.bessel_bound;
    const double lhs = redundant_mass + 2.0 * std::sqrt(eps * b_u * b_phi);
    const double rhs = std::sqrt(base.universal_lower / b_phi);

    // For levels above 1 the sqrt switch keeps the cost term an upper bound
    // on the true perturbation mass.
    const double level_factor = std::max(std::sqrt(eps), eps);
    const double cost = std::sqrt(b_phi) * redundant_mass + 2.0 * level_factor * std::sqrt(b_u) * b_phi;
    const double root = std::sqrt(base.universal_lower) - cost;

    r.quantities["redundant_norm_sum"] = redundant_mass;
    r.quantities["bessel_u"] = b_u;
    r.quantities["upper_phi"] = b_phi;
    r.quantities["spanning_pair_lower"] = base.universal_lower;
    r.quantities["eps"] = eps;
    r.quantities["condition_lhs"] = lhs;
    r.quantities["condition_rhs"] = rhs;
    // The hypothesis and the bound weight the perturbation budget
    // differently; both scalars are recorded so the gap is visible.
    r.quantities["hypothesis_cross_term"] = 2.0 * std::sqrt(eps * b_u * b_phi);
    r.quantities["bound_cross_term"] = 2.0 * level_factor * std::sqrt(b_u) * b_phi;

    if (lhs >= rhs) {
        r.failed_condition =
            "redundant mass plus perturbation budget must stay below "
            "sqrt(spanning_pair_lower / upper_phi)";
        return r;
    }
    if (root <= 0.0) {
        r.failed_condition = "perturbation level too large for the spanning pair's stability";
        return r;
    }

    const Frame dual_eps = shifted_frame(canonical_dual(phi), u, eps);
    const BoundsReport dual_bounds = frame_bounds(dual_eps);

    r.applicable = true;
    r.quantities["mapped_pair_lower"] = root * root;
    // The concluded pair is (phi, canonical dual + eps u); pulling the bound
    // back through the frame operator divides by its norm squared.
    r.guaranteed_lower = (root * root) / (b_phi * b_phi);
    r.guaranteed_upper = b_phi + dual_bounds.upper;
    r.quantities["upper_dual"] = dual_bounds.upper;
    return r;
}

CertificateResult cert_dual_transfer(const Frame& phi, const Frame& psi,
                                     const PerturbationSequence& u,
                                     const ExhaustiveOptions& opts) {
    require_same_shape(phi, psi);
    require_frame(phi, "first frame");
    require_frame(psi, "second frame");
    require_admissible(phi, u, "dual_transfer");

    CertificateResult r;
    r.name = "dual_transfer";

    const WeavingVerdict base = woven_or_throw(phi, psi, opts, "the input pair");
    const double pair_lower = base.universal_lower;
    const double b_phi = frame_bounds(phi).upper;
    const double b_u = u.bessel_bound;
    // The perturbation is transported through the frame operator, so its
    // quadratic term scales with ||S||^2 and the cross term with ||S||.
    const auto cost = [&](double alpha) {
        return alpha * alpha * b_u * b_phi * b_phi +
               2.0 * alpha * std::sqrt(b_u * b_phi) * b_phi;
    };

    r.quantities["pair_lower"] = pair_lower;
    r.quantities["bessel_u"] = b_u;
    r.quantities["upper_phi"] = b_phi;

    double eps_used;
    if (b_u == 0.0) {
        // A zero perturbation never costs anything; every level works.
        r.quantities["alpha_is_unbounded"] = 1.0;
        eps_used = 1.0;
    } else {
        const double alpha_max = largest_feasible(
            [&](double a) { return cost(a) < pair_lower - kConditionMargin; },
            std::numeric_limits<double>::infinity());
        r.quantities["alpha_max"] = alpha_max;
        if (alpha_max <= 0.0) {
            r.failed_condition = "no perturbation level keeps the spectral cost below pair_lower";
            return r;
        }
        eps_used = alpha_max / 2.0;
    }

    const Frame dual_eps = shifted_frame(canonical_dual(phi), u, eps_used);
    const Frame mapped = apply_operator(frame_operator(phi), dual_eps);
    const BoundsReport psi_bounds = frame_bounds(psi);
    const BoundsReport mapped_bounds = frame_bounds(mapped);

    r.applicable = true;
    r.quantities["eps_used"] = eps_used;
    r.quantities["cost_at_eps"] = cost(eps_used);
    r.guaranteed_lower = pair_lower - cost(eps_used);
    r.guaranteed_upper = psi_bounds.upper + mapped_bounds.upper;
    r.quantities["upper_psi"] = psi_bounds.upper;
    r.quantities["upper_mapped"] = mapped_bounds.upper;
    return r;
}

CertificateResult cert_canonical_dual_self(const Frame& phi) {
    require_frame(phi, "frame");

    CertificateResult r;
    r.name = "canonical_dual_self";

    const BoundsReport bounds = frame_bounds(phi);
    const Matrix s_inv = spd_power(frame_operator(phi), -1.0);
    const double deviation = operator_norm(identity_like(phi.dim()) - s_inv);
    const double limit =
        bounds.lower /
        (2.0 * (bounds.upper + std::sqrt(bounds.upper / bounds.lower)));

    r.quantities["deviation"] = deviation;
    r.quantities["condition_rhs"] = limit;
    r.quantities["lower_phi"] = bounds.lower;
    r.quantities["upper_phi"] = bounds.upper;
    r.quantities["upper_dual"] = 1.0 / bounds.lower;

    if (deviation > limit) {
        r.failed_condition = "||I - S^{-1}|| exceeds the synthesis-proximity budget";
        return r;
    }
    r.applicable = true;
    r.guaranteed_lower = bounds.lower / 2.0;
    r.guaranteed_upper = bounds.upper + 1.0 / bounds.lower;
    return r;
}

CertificateResult cert_dual_family(const Frame& phi, const PerturbationSequence& u) {
    require_frame(phi, "frame");
    require_admissible(phi, u, "dual_family");

    CertificateResult r;
    r.name = "dual_family";

    const BoundsReport bounds = frame_bounds(phi);
    const Matrix s_inv = spd_power(frame_operator(phi), -1.0);
    const double deviation = operator_norm(identity_like(phi.dim()) - s_inv);
    const double inv_norm = operator_norm(s_inv);
    const double b_u = u.bessel_bound;
    const double b = bounds.upper;
    const double screen =
        bounds.lower /
        (2.0 * b * (1.0 + std::sqrt(inv_norm)) + 2.0 * std::sqrt(b_u * b));

    // Proximity cost of the level-alpha dual: synthesis distance times the
    // sum of the two upper-bound roots, with the dual's upper bound replaced
    // by its triangle-inequality estimate.
    const auto proximity = [&](double alpha) {
        const double distance = deviation * std::sqrt(b) + alpha * std::sqrt(b_u);
        const double dual_root = std::sqrt(inv_norm) + alpha * std::sqrt(b_u);
        return distance * (std::sqrt(b) + dual_root);
    };

    r.quantities["deviation"] = deviation;
    r.quantities["inverse_norm"] = inv_norm;
    r.quantities["bessel_u"] = b_u;
    r.quantities["lower_phi"] = bounds.lower;
    r.quantities["upper_phi"] = b;
    r.quantities["screen_rhs"] = screen;

    if (deviation >= screen) {
        r.failed_condition = "||I - S^{-1}|| exceeds the dual-family budget";
        return r;
    }
    const double alpha =
        b_u == 0.0 ? 1.0
                   : largest_feasible(
                         [&](double a) {
                             return proximity(a) <= bounds.lower / 2.0 - kConditionMargin;
                         },
                         1.0);
    r.quantities["alpha"] = alpha;
    if (alpha <= 0.0) {
        r.failed_condition = "no level in (0, 1] keeps the dual within proximity reach";
        return r;
    }

    const Frame dual_alpha = shifted_frame(canonical_dual(phi), u, alpha);
    const BoundsReport dual_bounds = frame_bounds(dual_alpha);
    r.applicable = true;
    r.quantities["proximity_at_alpha"] = proximity(alpha);
    r.quantities["upper_dual"] = dual_bounds.upper;
    r.guaranteed_lower = bounds.lower / 2.0;
    r.guaranteed_upper = b + dual_bounds.upper;
    return r;
}

CertificateResult cert_parseval_dual_pair(const Frame& phi, const Frame& psi,
                                          const PerturbationSequence& u,
                                          const PerturbationSequence& v,
                                          const ExhaustiveOptions& opts) {
    require_same_shape(phi, psi);
    const BoundsReport phi_bounds = frame_bounds(phi);
    const BoundsReport psi_bounds = frame_bounds(psi);
    constexpr double kParsevalTolerance = 1e-8;
    if (std::abs(phi_bounds.lower - 1.0) > kParsevalTolerance ||
        std::abs(phi_bounds.upper - 1.0) > kParsevalTolerance) {
        throw NotParseval("first frame is not Parseval within 1e-8");
    }
    if (std::abs(psi_bounds.lower - 1.0) > kParsevalTolerance ||
        std::abs(psi_bounds.upper - 1.0) > kParsevalTolerance) {
        throw NotParseval("second frame is not Parseval within 1e-8");
    }
    require_admissible(phi, u, "parseval_dual_pair (first)");
    require_admissible(psi, v, "parseval_dual_pair (second)");

    CertificateResult r;
    r.name = "parseval_dual_pair";

    const WeavingVerdict base = woven_or_throw(phi, psi, opts, "the input pair");
    const double pair_lower = base.universal_lower;
    const double b_u = u.bessel_bound;
    const double b_v = v.bessel_bound;
    const auto lhs = [&](double a) {
        return a * b_u + a * b_v + 2.0 * std::sqrt(a * b_u * phi_bounds.upper) +
               2.0 * std::sqrt(a * b_v * psi_bounds.upper);
    };

    r.quantities["pair_lower"] = pair_lower;
    r.quantities["bessel_u"] = b_u;
    r.quantities["bessel_v"] = b_v;

    double alpha_zero;
    if (b_u == 0.0 && b_v == 0.0) {
        r.quantities["alpha_is_unbounded"] = 1.0;
        alpha_zero = 1.0;
    } else {
        // The per-level cost model is only an upper estimate for levels in
        // [0, 1], so the search is capped there.
        alpha_zero = largest_feasible(
            [&](double a) { return lhs(a) < pair_lower - kConditionMargin; }, 1.0);
        r.quantities["alpha_zero"] = alpha_zero;
        if (alpha_zero <= 0.0) {
            r.failed_condition = "no perturbation level keeps the cost below pair_lower";
            return r;
        }
    }

    const double alpha_used = alpha_zero / 2.0;
    const Frame phi_dual = shifted_frame(phi, u, alpha_used);
    const Frame psi_dual = shifted_frame(psi, v, alpha_used);
    const BoundsReport phi_dual_bounds = frame_bounds(phi_dual);
    const BoundsReport psi_dual_bounds = frame_bounds(psi_dual);

    r.applicable = true;
    r.quantities["alpha_used"] = alpha_used;
    r.quantities["cost_at_used"] = lhs(alpha_used);
    r.guaranteed_lower = pair_lower - lhs(alpha_used);
    r.guaranteed_upper = phi_dual_bounds.upper + psi_dual_bounds.upper;
    r.quantities["upper_phi_dual"] = phi_dual_bounds.upper;
    r.quantities["upper_psi_dual"] = psi_dual_bounds.upper;
    return r;
}

CertificateResult cert_perturbed_duals(const Frame& phi, const Frame& psi,
                                       const PerturbationSequence& u,
                                       const PerturbationSequence& v, bool variant,
                                       const ExhaustiveOptions& opts) {
    require_same_shape(phi, psi);
    require_frame(phi, "first frame");
    require_frame(psi, "second frame");
    require_admissible(phi, u, "perturbed_duals (first)");
    require_admissible(psi, v, "perturbed_duals (second)");

    CertificateResult r;
    r.name = "perturbed_duals";

    const Matrix s_phi_inv = spd_power(frame_operator(phi), -1.0);
    const Matrix s_psi_inv = spd_power(frame_operator(psi), -1.0);
    const Frame base_first = apply_operator(s_phi_inv, phi);
    const Frame base_second =
        variant ? apply_operator(s_psi_inv, psi) : apply_operator(s_phi_inv, psi);
    const WeavingVerdict base =
        woven_or_throw(base_first, base_second, opts, "the transformed pair");
    const double pair_lower = base.universal_lower;

    const double b_phi = frame_bounds(phi).upper;
    const double b_psi = frame_bounds(psi).upper;
    const double inv_phi_norm = operator_norm(s_phi_inv);
    const double inv_psi_norm = operator_norm(s_psi_inv);
    const double distance = operator_norm(synthesis(phi) - synthesis(psi));
    const double distance_limit =
        std::sqrt(pair_lower) / (std::sqrt(b_psi) * inv_phi_norm * inv_psi_norm *
                                 (std::sqrt(b_psi) + std::sqrt(b_phi)));
    const double inverse_gap = operator_norm(s_phi_inv - s_psi_inv);
    const double b_u = u.bessel_bound;
    const double b_v = v.bessel_bound;
    const double target = std::sqrt(pair_lower / b_psi);
    const auto level_cost = [&](double a) {
        return inverse_gap + a * (std::sqrt(b_u) + std::sqrt(b_v)) / std::sqrt(b_psi);
    };

    r.quantities["pair_lower"] = pair_lower;
    r.quantities["variant"] = variant ? 1.0 : 0.0;
    r.quantities["synthesis_distance"] = distance;
    r.quantities["distance_limit"] = distance_limit;
    r.quantities["inverse_gap"] = inverse_gap;
    r.quantities["bessel_u"] = b_u;
    r.quantities["bessel_v"] = b_v;

    if (distance >= distance_limit) {
        r.failed_condition = "synthesis distance exceeds the transformed pair's budget";
        return r;
    }
    double alpha_max;
    if (b_u == 0.0 && b_v == 0.0) {
        alpha_max = inverse_gap < target - kConditionMargin ? 1.0 : 0.0;
    } else {
        alpha_max = largest_feasible(
            [&](double a) { return level_cost(a) < target - kConditionMargin; }, 1.0);
    }
    r.quantities["alpha_max"] = alpha_max;
    if (alpha_max <= 0.0) {
        r.failed_condition =
            "inverse-operator gap plus perturbation budget exceeds sqrt(pair_lower / upper_psi)";
        return r;
    }
    const double alpha_used = alpha_max / 2.0;
    const double root = std::sqrt(pair_lower) -
                        alpha_used * (std::sqrt(b_u) + std::sqrt(b_v)) -
                        std::sqrt(b_psi) * inverse_gap;

    const Frame phi_dual = shifted_frame(apply_operator(s_phi_inv, phi), u, alpha_used);
    const Frame psi_dual = shifted_frame(apply_operator(s_psi_inv, psi), v, alpha_used);
    const BoundsReport phi_dual_bounds = frame_bounds(phi_dual);
    const BoundsReport psi_dual_bounds = frame_bounds(psi_dual);

    r.applicable = true;
    r.quantities["alpha_used"] = alpha_used;
    r.guaranteed_lower = root * root;
    r.guaranteed_upper = phi_dual_bounds.upper + psi_dual_bounds.upper;
    r.quantities["upper_phi_dual"] = phi_dual_bounds.upper;
    r.quantities["upper_psi_dual"] = psi_dual_bounds.upper;
    return r;
}

CertificateResult cert_duals_to_frames(const Frame& phi, const Frame& psi, const Frame& phid,
                                       const Frame& psid, const PerturbationSequence& u,
                                       const ExhaustiveOptions& opts) {
    require_same_shape(phi, psi);
    require_same_shape(phi, phid);
    require_same_shape(psi, psid);
    require_frame(phi, "first frame");
    require_frame(psi, "second frame");
    if (!verify_duality(phi, phid, kAdmissibilityTolerance)) {
        throw NotDual("first dual does not reconstruct against its frame");
    }
    if (!verify_duality(psi, psid, kAdmissibilityTolerance)) {
        throw NotDual("second dual does not reconstruct against its frame");
    }

    // The supplied perturbation must be the dual's offset from the canonical
    // dual, since its Bessel bound enters the hypothesis.
    const Matrix canonical_part = spd_power(frame_operator(phi), -1.0) * synthesis(phi);
    const Matrix offset = synthesis(phid) - canonical_part;
    if ((offset - u.vectors).max_abs() >
        kAdmissibilityTolerance * std::max(1.0, offset.frobenius_norm())) {
        throw NotDual("perturbation is not the first dual's offset from the canonical dual");
    }

    CertificateResult r;
    r.name = "duals_to_frames";

    const WeavingVerdict base = woven_or_throw(phid, psid, opts, "the dual pair");
    const double pair_lower = base.universal_lower;
    const double b_u = u.bessel_bound;
    const double b_psi = frame_bounds(psi).upper;
    const double dual_operator_gap =
        operator_norm(frame_operator(phid) - frame_operator(psid));
    const double screen_lhs = std::sqrt(b_u) + std::sqrt(b_psi) * dual_operator_gap;

    // Constants for pulling the dual pair's bound back to the originals: the
    // originals differ from the duals' canonical duals by measurable Bessel
    // offsets, and the canonical duals differ by the inverse-operator gap.
    const double s_phid_norm = frame_bounds(phid).upper;
    const double b_psid = frame_bounds(psid).upper;
    const Matrix w_offset =
        synthesis(phi) - spd_power(frame_operator(phid), -1.0) * synthesis(phid);
    const Matrix x_offset =
        synthesis(psi) - spd_power(frame_operator(psid), -1.0) * synthesis(psid);
    const double w_norm = operator_norm(w_offset);
    const double x_norm = operator_norm(x_offset);
    const double b_w = w_norm * w_norm;
    const double b_x = x_norm * x_norm;
    const double inverse_gap = operator_norm(spd_power(frame_operator(phid), -1.0) -
                                             spd_power(frame_operator(psid), -1.0));
    const double root = std::sqrt(pair_lower) / s_phid_norm - std::sqrt(b_w) -
                        std::sqrt(b_x) - std::sqrt(b_psid) * inverse_gap;

    r.quantities["dual_pair_lower"] = pair_lower;
    r.quantities["bessel_u"] = b_u;
    r.quantities["upper_psi"] = b_psi;
    r.quantities["dual_operator_gap"] = dual_operator_gap;
    r.quantities["screen_lhs"] = screen_lhs;
    r.quantities["screen_rhs"] = std::sqrt(pair_lower);
    r.quantities["upper_phid"] = s_phid_norm;
    r.quantities["upper_psid"] = b_psid;
    r.quantities["bessel_w"] = b_w;
    r.quantities["bessel_x"] = b_x;
    r.quantities["inverse_gap"] = inverse_gap;

    if (screen_lhs >= std::sqrt(pair_lower)) {
        r.failed_condition =
            "sqrt(bessel_u) + sqrt(upper_psi) * dual_operator_gap must stay below "
            "sqrt(dual_pair_lower)";
        return r;
    }
    if (root <= 0.0) {
        r.failed_condition = "offsets from the canonical duals absorb the dual pair's bound";
        return r;
    }
    r.applicable = true;
    r.guaranteed_lower = root * root;
    r.guaranteed_upper = frame_bounds(phi).upper + b_psi;
    return r;
}

CertificateResult cert_canonical_pair(const Frame& phi, const Frame& psi,
                                      DualDirection direction, const ExhaustiveOptions& opts) {
    require_same_shape(phi, psi);
    require_frame(phi, "first frame");
    require_frame(psi, "second frame");

    CertificateResult r;
    r.name = "canonical_pair";
    r.quantities["direction"] = direction == DualDirection::OriginalsToDuals ? 0.0 : 1.0;

    if (direction == DualDirection::OriginalsToDuals) {
        const WeavingVerdict base = woven_or_throw(phi, psi, opts, "the input pair");
        const double pair_lower = base.universal_lower;
        const double b_psi = frame_bounds(psi).upper;
        const double gap = operator_norm(spd_power(frame_operator(phi), -1.0) -
                                         spd_power(frame_operator(psi), -1.0));
        const double limit = std::sqrt(pair_lower / b_psi);
        const double scale = frame_bounds(phi).upper;  // = ||S_phi||
        const double root = std::sqrt(pair_lower) / scale - std::sqrt(b_psi) * gap;

        r.quantities["pair_lower"] = pair_lower;
        r.quantities["inverse_gap"] = gap;
        r.quantities["gap_limit"] = limit;
        r.quantities["scale"] = scale;

        if (gap >= limit) {
            r.failed_condition = "inverse-operator gap must stay below sqrt(pair_lower / upper_psi)";
            return r;
        }
        if (root <= 0.0) {
            r.failed_condition = "inverse-operator gap absorbs the pair's bound after rescaling";
            return r;
        }
        r.applicable = true;
        r.guaranteed_lower = root * root;
        r.guaranteed_upper =
            1.0 / frame_bounds(phi).lower + 1.0 / frame_bounds(psi).lower;
        return r;
    }

    const Frame phi_dual = canonical_dual(phi);
    const Frame psi_dual = canonical_dual(psi);
    const WeavingVerdict base = woven_or_throw(phi_dual, psi_dual, opts, "the dual pair");
    const double pair_lower = base.universal_lower;
    const double b_psi_dual = frame_bounds(psi_dual).upper;
    const double gap = operator_norm(frame_operator(phi) - frame_operator(psi));
    const double limit = std::sqrt(pair_lower / b_psi_dual);
    const double scale = frame_bounds(phi_dual).upper;  // = ||S_phi^{-1}||
    const double root = std::sqrt(pair_lower) / scale - std::sqrt(b_psi_dual) * gap;

    r.quantities["pair_lower"] = pair_lower;
    r.quantities["operator_gap"] = gap;
    r.quantities["gap_limit"] = limit;
    r.quantities["scale"] = scale;

    if (gap >= limit) {
        r.failed_condition =
            "frame-operator gap must stay below sqrt(pair_lower / upper_psi_dual)";
        return r;
    }
    if (root <= 0.0) {
        r.failed_condition = "frame-operator gap absorbs the dual pair's bound after rescaling";
        return r;
    }
    r.applicable = true;
    r.guaranteed_lower = root * root;
    r.guaranteed_upper = frame_bounds(phi).upper + frame_bounds(psi).upper;
    return r;
}

CertificateResult cert_canonical_parseval(const Frame& phi, const Frame& psi,
                                          const ExhaustiveOptions& opts) {
    require_same_shape(phi, psi);
    require_frame(phi, "first frame");
    require_frame(psi, "second frame");

    CertificateResult r;
    r.name = "canonical_parseval";

    const WeavingVerdict base = woven_or_throw(phi, psi, opts, "the input pair");
    const double pair_lower = base.universal_lower;
    const double b_phi = frame_bounds(phi).upper;
    const double b_psi = frame_bounds(psi).upper;

    const Matrix s_phi = frame_operator(phi);
    const Matrix s_psi = frame_operator(psi);
    const double half_gap = operator_norm(spd_power(s_phi, 0.5) - spd_power(s_psi, 0.5));
    const Matrix inv_root_phi = spd_power(s_phi, -0.5);
    const Matrix inv_root_psi = spd_power(s_psi, -0.5);
    const double n_phi = operator_norm(inv_root_phi);
    const double n_psi = operator_norm(inv_root_psi);
    const double inv_half_gap = operator_norm(inv_root_phi - inv_root_psi);

    // Positive root of gap^2 + 2 n_psi gap = pair_lower / (b_phi b_psi):
    // any inverse-root gap below it keeps the pulled-back bound positive.
    const double x_star =
        -n_psi + std::sqrt(n_psi * n_psi + pair_lower / (b_phi * b_psi));
    const double limit = x_star / (n_phi * n_psi);
    const double lower = pair_lower / b_psi - b_phi * inv_half_gap * inv_half_gap -
                         2.0 * b_phi * inv_half_gap * n_psi;

    r.quantities["pair_lower"] = pair_lower;
    r.quantities["half_power_gap"] = half_gap;
    r.quantities["inverse_half_gap"] = inv_half_gap;
    r.quantities["inverse_root_norm_phi"] = n_phi;
    r.quantities["inverse_root_norm_psi"] = n_psi;
    r.quantities["gap_limit"] = limit;

    if (half_gap >= limit) {
        r.failed_condition =
            "square-root operator gap must stay below the pulled-back positivity limit";
        return r;
    }
    if (lower <= 0.0) {
        r.failed_condition = "inverse-root gap absorbs the pulled-back bound";
        return r;
    }
    r.applicable = true;
    r.guaranteed_lower = lower;
    r.guaranteed_upper = 2.0;
    return r;
}

CertificateResult cert_scalar_weaving(const Frame& phi, const Frame& psi,
                                      const std::vector<double>& alpha,
                                      const std::vector<double>& beta,
                                      const ExhaustiveOptions& opts) {
    require_same_shape(phi, psi);
    if (alpha.size() != phi.size() || beta.size() != psi.size()) {
        throw DimensionMismatch("scalar lists must match the frame length");
    }
    for (double x : alpha) {
        if (!std::isfinite(x)) throw ValueError("scalars must be finite");
        if (x == 0.0) throw ZeroScalar("scalars must be nonzero");
    }
    for (double x : beta) {
        if (!std::isfinite(x)) throw ValueError("scalars must be finite");
        if (x == 0.0) throw ZeroScalar("scalars must be nonzero");
    }

    CertificateResult r;
    r.name = "scalar_weaving";

    const WeavingVerdict base = woven_or_throw(phi, psi, opts, "the input pair");
    double lo = std::abs(alpha[0]);
    double hi = std::abs(alpha[0]);
    for (double x : alpha) {
        lo = std::min(lo, std::abs(x));
        hi = std::max(hi, std::abs(x));
    }
    for (double x : beta) {
        lo = std::min(lo, std::abs(x));
        hi = std::max(hi, std::abs(x));
    }

    r.quantities["pair_lower"] = base.universal_lower;
    r.quantities["pair_upper"] = base.universal_upper;
    r.quantities["scalar_min"] = lo;
    r.quantities["scalar_max"] = hi;
    r.applicable = true;
    r.guaranteed_lower = lo * lo * base.universal_lower;
    r.guaranteed_upper = hi * hi * base.universal_upper;
    return r;
}

}  // namespace woven
