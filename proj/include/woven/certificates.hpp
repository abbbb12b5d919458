#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "woven/duality.hpp"
#include "woven/frame.hpp"
#include "woven/weaving.hpp"

// Sufficient-condition certificates for wovenness.
//
// Each certificate evaluates a checkable hypothesis on concrete frames and,
// when the hypothesis holds, reports guaranteed universal weaving bounds for
// a concluded pair -- bounds that hold by an inequality chain, not by
// enumeration.  The exhaustive scan stays the judge: the test suite vets
// every certificate against it (applicable must imply woven, and the
// guaranteed bounds must bracket the exhaustively computed ones).
//
// A certificate never fabricates applicability: when a hypothesis fails the
// result says so and carries the measured quantities, so callers can see how
// far off the input was.  Preconditions (wrong shapes, non-frames, missing
// redundancy, a hypothesis pair that is not woven at all) throw instead.

namespace woven {

enum class CertificateKind {
    TwoSided,   // guarantees a lower and an upper universal bound
    UpperOnly,  // guarantees only an upper bound (union-type results)
};

struct CertificateResult {
    std::string name;
    CertificateKind kind = CertificateKind::TwoSided;
    bool applicable = false;
    std::map<std::string, double> quantities;  // every value finite
    std::optional<double> guaranteed_lower;
    std::optional<double> guaranteed_upper;
    std::optional<std::string> failed_condition;
};

// Closeness of synthesis operators.  Applicable when
// d = ||T_phi - T_psi|| < 1 and d (sqrt(B_phi) + sqrt(B_psi)) <= A_phi / 2;
// then the pair (phi, psi) is woven with bounds (A_phi / 2, B_phi + B_psi).
CertificateResult cert_synthesis_proximity(const Frame& phi, const Frame& psi);

// Frame mapped by an operator close to the identity.  Applicable when
// ||I - U||^2 < A / B; then (phi, U phi) is woven with lower bound
// (sqrt(A) - sqrt(B) ||I - U||)^2 and upper bound B + B_{U phi}.
CertificateResult cert_operator_multiplier(const Frame& phi, const Matrix& u);

// Bounds arithmetic linking two woven pairs through a middle frame: if
// (phi, psi) is woven with lower bounds summing above psi's upper bound,
// (phi, eta) is woven with bounds (a1 + a2 - b_psi, b1 + b2).
CertificateResult cert_transitive_bridge(double a1, double a2, double b_psi,
                                         double b1, double b2);

// Upper-only: any interleaving of Bessel families is Bessel with bound equal
// to the sum of the individual bounds.  Always applicable.
CertificateResult cert_bessel_union(const std::vector<Frame>& frames);

// Duals whose perturbation lives on low-norm redundant vectors.  phi is
// split by the greedy excess scan into a Riesz part and redundant part; the
// hypothesis compares the redundant mass plus the perturbation budget
// against the stability of the Riesz part.  Concluded pair:
// (phi, canonical dual + eps * u).
CertificateResult cert_redundant_small_norm(const Frame& phi,
                                            const PerturbationSequence& u, double eps,
                                            const ExhaustiveOptions& opts = {});

// Transfers wovenness of (phi, psi) to (psi, S_phi * dual_eps): finds the
// largest perturbation level alpha whose spectral cost stays below the
// exhaustive lower bound of (phi, psi), then reports at eps = alpha / 2.
CertificateResult cert_dual_transfer(const Frame& phi, const Frame& psi,
                                     const PerturbationSequence& u,
                                     const ExhaustiveOptions& opts = {});

// A frame woven with its own canonical dual, decided from ||I - S^{-1}||.
CertificateResult cert_canonical_dual_self(const Frame& phi);

// A frame woven with a member of its dual family: searches the largest
// alpha in (0, 1] whose dual stays within synthesis-proximity reach of phi.
CertificateResult cert_dual_family(const Frame& phi, const PerturbationSequence& u);

// Two woven near-Parseval frames and their perturbed duals
// (phi + alpha u, psi + alpha v).  Requires both frames Parseval within
// 1e-8.
CertificateResult cert_parseval_dual_pair(const Frame& phi, const Frame& psi,
                                          const PerturbationSequence& u,
                                          const PerturbationSequence& v,
                                          const ExhaustiveOptions& opts = {});

// Perturbed dual families of two frames.  The hypothesis pair is
// (S_phi^{-1} phi, S_phi^{-1} psi); `variant` switches the second member to
// S_psi^{-1} psi instead.  Concluded pair: (canonical(phi) + alpha u,
// canonical(psi) + alpha v) at the reported alpha.
CertificateResult cert_perturbed_duals(const Frame& phi, const Frame& psi,
                                       const PerturbationSequence& u,
                                       const PerturbationSequence& v,
                                       bool variant = false,
                                       const ExhaustiveOptions& opts = {});

// From woven duals back to the original frames.  phid / psid must verify as
// duals of phi / psi; u is the perturbation part of phid relative to the
// canonical dual of phi.
CertificateResult cert_duals_to_frames(const Frame& phi, const Frame& psi,
                                       const Frame& phid, const Frame& psid,
                                       const PerturbationSequence& u,
                                       const ExhaustiveOptions& opts = {});

enum class DualDirection {
    OriginalsToDuals,  // hypothesis pair (phi, psi), conclusion for canonical duals
    DualsToOriginals,  // hypothesis pair (canonical duals), conclusion for (phi, psi)
};

// Wovenness transported between a pair and its canonical duals, decided by
// the gap between the (inverse) frame operators.
CertificateResult cert_canonical_pair(const Frame& phi, const Frame& psi,
                                      DualDirection direction,
                                      const ExhaustiveOptions& opts = {});

// Wovenness transported to the canonical Parseval frames, decided by the
// gap between the square roots of the frame operators.
CertificateResult cert_canonical_parseval(const Frame& phi, const Frame& psi,
                                          const ExhaustiveOptions& opts = {});

// Nonzero scalar reweighting of a woven pair: bounds scale by the extreme
// squared scalars.
CertificateResult cert_scalar_weaving(const Frame& phi, const Frame& psi,
                                      const std::vector<double>& alpha,
                                      const std::vector<double>& beta,
                                      const ExhaustiveOptions& opts = {});

}  // namespace woven
