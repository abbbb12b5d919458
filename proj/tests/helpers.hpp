#pragma once

// Shared test utilities: seeded frame generators and the soundness harness
// that vets certificates against the exhaustive oracle.  Kept free of any
// test-framework dependency so both the unit tests and the acceptance
// checker can use it.

#include <cmath>
#include <cstdint>
#include <functional>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "woven/certificates.hpp"
#include "woven/duality.hpp"
#include "woven/errors.hpp"
#include "woven/frame.hpp"
#include "woven/splitmix.hpp"
#include "woven/weaving.hpp"

namespace woven_test {

using namespace woven;

inline Frame onb(std::size_t dim) {
    std::vector<std::vector<double>> vectors(dim, std::vector<double>(dim, 0.0));
    for (std::size_t i = 0; i < dim; ++i) vectors[i][i] = 1.0;
    return Frame(dim, vectors);
}

// Random frame with entries uniform on [-1, 1], redrawn until the bound
// ratio lambda_min / lambda_max clears `min_ratio`.
inline Frame random_frame(std::size_t dim, std::size_t n, std::uint64_t seed,
                          double min_ratio = 0.0) {
    SplitMix64 rng(seed);
    for (int attempt = 0; attempt < 10000; ++attempt) {
        std::vector<std::vector<double>> vectors(n, std::vector<double>(dim));
        for (auto& v : vectors) {
            for (double& x : v) x = rng.symmetric(1.0);
        }
        Frame f(dim, vectors);
        const BoundsReport b = frame_bounds(f);
        if (b.lower > frame_threshold(b.upper) && b.lower >= min_ratio * b.upper) return f;
    }
    throw ValueError("random_frame: could not draw a frame with the requested conditioning");
}

// The same frame with independent uniform noise of the given amplitude on
// every entry.
inline Frame near_frame(const Frame& base, std::uint64_t seed, double noise) {
    SplitMix64 rng(seed);
    std::vector<std::vector<double>> vectors = base.vectors();
    for (auto& v : vectors) {
        for (double& x : v) x += rng.symmetric(noise);
    }
    return Frame(base.dim(), vectors);
}

// -- certificate soundness harness ---------------------------------------------

// One vetted trial: the certificate's claim plus the family it claims it for.
struct ConcludedTrial {
    CertificateResult result;
    std::vector<Frame> frames;  // filled when result.applicable
};

using TrialFn = std::function<std::optional<ConcludedTrial>(std::uint64_t seed)>;

struct HarnessOutcome {
    std::size_t trials = 0;
    std::size_t applicable = 0;
    std::size_t skipped = 0;  // precondition throws or generator rejections
    std::vector<std::string> failures;

    bool passed(std::size_t min_applicable) const {
        return failures.empty() && applicable >= min_applicable;
    }
};

// Runs `trials` seeded trials and checks the master soundness property on
// every applicable one: the exhaustive oracle must confirm wovenness of the
// concluded family (two-sided certificates), the guaranteed lower bound must
// not exceed the exhaustive one (relative slack 1e-9), the guaranteed upper
// bound must not undercut it, and both frames of a woven pair must have
// equal excess.
inline HarnessOutcome run_soundness(const TrialFn& trial, std::size_t trials,
                                    std::uint64_t seed0, int threads) {
    HarnessOutcome out;
    out.trials = trials;
    const ExhaustiveOptions opts{threads};
    for (std::uint64_t k = 0; k < trials; ++k) {
        const std::uint64_t seed = seed0 + k;
        std::optional<ConcludedTrial> t;
        try {
            t = trial(seed);
        } catch (const NoConvergence&) {
            throw;  // a numerics failure is never an acceptable skip
        } catch (const Error&) {
            ++out.skipped;
            continue;
        }
        if (!t) {
            ++out.skipped;
            continue;
        }
        const CertificateResult& r = t->result;
        if (!r.applicable) continue;
        ++out.applicable;

        std::ostringstream tag;
        tag << r.name << " seed " << seed;
        const bool two_sided = r.kind == CertificateKind::TwoSided;
        if (two_sided && !r.guaranteed_lower) {
            out.failures.push_back(tag.str() + ": applicable without a lower bound");
            continue;
        }
        if (!r.guaranteed_upper) {
            out.failures.push_back(tag.str() + ": applicable without an upper bound");
            continue;
        }
        if (t->frames.size() < 2) {
            out.failures.push_back(tag.str() + ": trial did not supply the concluded family");
            continue;
        }

        const WeavingVerdict oracle = t->frames.size() == 2
                                          ? exhaustive_pair(t->frames[0], t->frames[1], opts)
                                          : exhaustive_multi(t->frames, opts);
        if (two_sided) {
            if (!oracle.woven) {
                out.failures.push_back(tag.str() + ": oracle says not woven");
                continue;
            }
            if (oracle.universal_lower < *r.guaranteed_lower * (1.0 - 1e-9)) {
                std::ostringstream m;
                m << tag.str() << ": exhaustive lower " << oracle.universal_lower
                  << " below guaranteed " << *r.guaranteed_lower;
                out.failures.push_back(m.str());
            }
            if (t->frames.size() == 2 &&
                excess(t->frames[0]).excess != excess(t->frames[1]).excess) {
                out.failures.push_back(tag.str() + ": woven pair with unequal excess");
            }
        }
        if (oracle.universal_upper > *r.guaranteed_upper * (1.0 + 1e-9)) {
            std::ostringstream m;
            m << tag.str() << ": exhaustive upper " << oracle.universal_upper
              << " above guaranteed " << *r.guaranteed_upper;
            out.failures.push_back(m.str());
        }
    }
    return out;
}

}  // namespace woven_test
