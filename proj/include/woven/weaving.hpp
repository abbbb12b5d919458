#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "woven/frame.hpp"

// Weaving: given frames phi and psi of equal length n, every subset
// sigma of {1..n} induces the interleaved family that takes phi_i for
// i in sigma and psi_i otherwise.  The pair is woven when every such
// interleaving is a frame, with bounds valid uniformly across subsets.
// At finite n this is decidable by brute force, and that brute force is the
// oracle everything else in the library is judged against.
//
// Enumeration order (pinned; witnesses and reports depend on it):
// partitions are visited as an odometer over the assignment array
// (choice[i] = index of the frame supplying element i+1), least-significant
// element first, starting from the all-first-frame assignment.  For a pair
// this is ascending binary counting where bit i of the scan index says
// "element i+1 comes from psi".  The witness of a failed scan is the first
// failing partition in this order.
//
// The scan is embarrassingly parallel and the reduction (min over lower
// eigenvalues, max over upper) is exact in floating point regardless of the
// split, so the parallel kernel returns bit-identical verdicts for any
// worker count.  A deliberately plain serial implementation is kept as the
// reference the kernel is tested against.

namespace woven {

// Hard cap on the number of partitions a single exhaustive call may visit.
inline constexpr std::uint64_t kMaxPartitions = std::uint64_t(1) << 24;

struct PartitionAssignment {
    std::size_t n = 0;
    std::vector<std::uint8_t> choice;  // choice[i]: frame index for element i+1

    // 1-based indices drawn from the first frame; the sigma of a pair.
    std::vector<std::size_t> sigma_indices() const;
};

struct WeavingWitness {
    PartitionAssignment assignment;
    double lambda_min = 0.0;  // lower eigenvalue of the failing interleaving
};

struct WeavingVerdict {
    bool woven = false;
    double universal_lower = 0.0;  // min over partitions of lambda_min, >= 0
    double universal_upper = 0.0;  // max over partitions of lambda_max
    std::uint64_t partitions_checked = 0;
    std::optional<WeavingWitness> witness;  // present iff not woven
};

struct ExhaustiveOptions {
    int threads = 0;  // 0: library default (all available workers)
};

// The interleaving for one subset, sigma given as 1-based indices into phi.
// Throws DimensionMismatch on shape disagreement, ValueError on bad indices.
Frame weave(const Frame& phi, const Frame& psi, const std::vector<std::size_t>& sigma);

// Full scan over all 2^n subsets.  Throws DimensionMismatch, TooLarge.
WeavingVerdict exhaustive_pair(const Frame& phi, const Frame& psi,
                               const ExhaustiveOptions& opts = {});

// Reference implementation: same contract, same results, no parallelism.
WeavingVerdict exhaustive_pair_serial(const Frame& phi, const Frame& psi);

// Scan over all m^n assignments of m frames.  Throws DimensionMismatch,
// TooLarge.
WeavingVerdict exhaustive_multi(const std::vector<Frame>& frames,
                                const ExhaustiveOptions& opts = {});

WeavingVerdict exhaustive_multi_serial(const std::vector<Frame>& frames);

// True when every interleaving of two length-d sequences is a Riesz basis
// (Gram lower bound above the frame-decision threshold).
// Throws DimensionMismatch unless both frames have n = d = common dim.
bool riesz_woven(const Frame& phi, const Frame& psi);

// Random hunt for non-woven pairs: `trials` pairs of frames with entries
// i.i.d. uniform on [-1, 1] (SplitMix64 stream, non-frames redrawn), each
// pair checked exhaustively.  Returns the failures.
struct CounterexampleRecord {
    std::uint64_t trial = 0;  // 0-based trial index
    Frame phi;
    Frame psi;
    WeavingVerdict verdict;
};

std::vector<CounterexampleRecord> counterexample_search(
    std::size_t dim, std::size_t n, std::size_t trials, std::uint64_t seed,
    const ExhaustiveOptions& opts = {});

}  // namespace woven
