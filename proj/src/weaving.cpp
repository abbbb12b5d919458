#include "woven/weaving.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#ifdef WOVEN_HAVE_OPENMP
#include <omp.h>
#endif

#include "woven/errors.hpp"
#include "woven/numerics.hpp"
#include "woven/splitmix.hpp"

namespace woven {

std::vector<std::size_t> PartitionAssignment::sigma_indices() const {
    std::vector<std::size_t> sigma;
    for (std::size_t i = 0; i < n; ++i)
        if (choice[i] == 0) sigma.push_back(i + 1);
    return sigma;
}

namespace {

void require_compatible(const std::vector<Frame>& frames) {
    if (frames.size() < 2)
        throw DimensionMismatch("weaving needs at least two frames");
    for (const Frame& f : frames) {
        if (f.dim() != frames.front().dim())
            throw DimensionMismatch("woven frames must share one dimension");
        if (f.size() != frames.front().size())
            throw DimensionMismatch("woven frames must have equal length");
    }
}

std::uint64_t partition_count_or_throw(std::size_t m, std::size_t n) {
    std::uint64_t total = 1;
    for (std::size_t i = 0; i < n; ++i) {
        if (total > kMaxPartitions / m)
            throw TooLarge("exhaustive scan exceeds the partition guard");
        total *= m;
    }
    return total;
}

// Eigenvalue range of the frame operator of one interleaving.  The
// assignment is decoded digit by digit from the scan index; the operator is
// rebuilt from scratch for every partition (no incremental updates), keeping
// each evaluation independent of scan order and thread placement.
void weaving_spectrum(const std::vector<Frame>& frames, std::uint64_t index,
                      double& lambda_min, double& lambda_max) {
    const std::size_t d = frames.front().dim();
    const std::size_t n = frames.front().size();
    const std::size_t m = frames.size();

    Matrix s(d, d);
    std::uint64_t rest = index;
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t which = static_cast<std::size_t>(rest % m);
        rest /= m;
        const std::vector<double>& v = frames[which].vector(i);
        for (std::size_t r = 0; r < d; ++r)
            for (std::size_t c = 0; c < d; ++c) s(r, c) += v[r] * v[c];
    }
    const std::vector<double> values = sym_eigenvalues(s);
    lambda_min = std::max(values.front(), 0.0);
    lambda_max = std::max(values.back(), 0.0);
}

PartitionAssignment decode_assignment(std::size_t m, std::size_t n, std::uint64_t index) {
    PartitionAssignment a;
    a.n = n;
    a.choice.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        a.choice[i] = static_cast<std::uint8_t>(index % m);
        index /= m;
    }
    return a;
}

// Second pass after a failed scan: the first partition (in enumeration
// order) whose lower eigenvalue does not clear the threshold.
WeavingWitness find_witness(const std::vector<Frame>& frames, std::uint64_t total,
                            double threshold) {
    for (std::uint64_t index = 0; index < total; ++index) {
        double lo, hi;
        weaving_spectrum(frames, index, lo, hi);
        if (lo <= threshold)
            return WeavingWitness{decode_assignment(frames.size(), frames.front().size(), index), lo};
    }
    // Unreachable: the caller only asks for a witness when the scan's global
    // minimum failed the same comparison.
    throw NoConvergence("witness scan found no failing partition");
}

WeavingVerdict verdict_from_extremes(const std::vector<Frame>& frames, std::uint64_t total,
                                     double lower, double upper) {
    WeavingVerdict v;
    v.universal_lower = lower;
    v.universal_upper = upper;
    v.partitions_checked = total;
    v.woven = lower > frame_threshold(upper);
    if (!v.woven) v.witness = find_witness(frames, total, frame_threshold(upper));
    return v;
}

WeavingVerdict scan_serial(const std::vector<Frame>& frames) {
    require_compatible(frames);
    const std::uint64_t total =
        partition_count_or_throw(frames.size(), frames.front().size());

    double lower = std::numeric_limits<double>::infinity();
    double upper = 0.0;
    for (std::uint64_t index = 0; index < total; ++index) {
        double lo, hi;
        weaving_spectrum(frames, index, lo, hi);
        lower = std::min(lower, lo);
        upper = std::max(upper, hi);
    }
    return verdict_from_extremes(frames, total, lower, upper);
}

WeavingVerdict scan_parallel(const std::vector<Frame>& frames, const ExhaustiveOptions& opts) {
    require_compatible(frames);
    const std::uint64_t total =
        partition_count_or_throw(frames.size(), frames.front().size());

    double lower = std::numeric_limits<double>::infinity();
    double upper = 0.0;

#ifdef WOVEN_HAVE_OPENMP
    const int workers = opts.threads > 0 ? opts.threads : omp_get_max_threads();
    // min/max reductions are exact and order-independent in floating point,
    // so any worker count produces the same verdict bit for bit.
#pragma omp parallel for schedule(static) num_threads(workers) \
    reduction(min : lower) reduction(max : upper)
    for (std::int64_t index = 0; index < static_cast<std::int64_t>(total); ++index) {
        double lo, hi;
        weaving_spectrum(frames, static_cast<std::uint64_t>(index), lo, hi);
        lower = std::min(lower, lo);
        upper = std::max(upper, hi);
    }
#else
    (void)opts;
    for (std::uint64_t index = 0; index < total; ++index) {
        double lo, hi;
        weaving_spectrum(frames, index, lo, hi);
        lower = std::min(lower, lo);
        upper = std::max(upper, hi);
    }
#endif

    return verdict_from_extremes(frames, total, lower, upper);
}

}  // namespace

Frame weave(const Frame& phi, const Frame& psi, const std::vector<std::size_t>& sigma) {
    require_compatible({phi, psi});
    std::vector<bool> from_phi(phi.size(), false);
    for (std::size_t index : sigma) {
        if (index < 1 || index > phi.size())
            throw ValueError("sigma indices must lie in 1..n");
        from_phi[index - 1] = true;
    }
    std::vector<std::vector<double>> out;
    out.reserve(phi.size());
    for (std::size_t i = 0; i < phi.size(); ++i)
        out.push_back(from_phi[i] ? phi.vector(i) : psi.vector(i));
    return Frame(phi.dim(), std::move(out));
}

WeavingVerdict exhaustive_pair(const Frame& phi, const Frame& psi,
                               const ExhaustiveOptions& opts) {
    return scan_parallel({phi, psi}, opts);
}

WeavingVerdict exhaustive_pair_serial(const Frame& phi, const Frame& psi) {
    return scan_serial({phi, psi});
}

WeavingVerdict exhaustive_multi(const std::vector<Frame>& frames,
                                const ExhaustiveOptions& opts) {
    return scan_parallel(frames, opts);
}

WeavingVerdict exhaustive_multi_serial(const std::vector<Frame>& frames) {
    return scan_serial(frames);
}

bool riesz_woven(const Frame& phi, const Frame& psi) {
    require_compatible({phi, psi});
    if (phi.size() != phi.dim())
        throw DimensionMismatch("riesz_woven requires n = dim");
    const std::uint64_t total = partition_count_or_throw(2, phi.size());

    const std::size_t n = phi.size();
    for (std::uint64_t mask = 0; mask < total; ++mask) {
        // Gram matrix of the interleaving; its extreme eigenvalues are the
        // optimal Riesz bounds.
        Matrix g(n, n);
        for (std::size_t i = 0; i < n; ++i) {
            const auto& vi = (mask >> i) & 1 ? psi.vector(i) : phi.vector(i);
            for (std::size_t j = 0; j <= i; ++j) {
                const auto& vj = (mask >> j) & 1 ? psi.vector(j) : phi.vector(j);
                g(i, j) = dot(vi, vj);
                g(j, i) = g(i, j);
            }
        }
        const std::vector<double> values = sym_eigenvalues(g);
        if (std::max(values.front(), 0.0) <= frame_threshold(std::max(values.back(), 0.0)))
            return false;
    }
    return true;
}

std::vector<CounterexampleRecord> counterexample_search(
    std::size_t dim, std::size_t n, std::size_t trials, std::uint64_t seed,
    const ExhaustiveOptions& opts) {
    if (dim == 0 || n < dim)
        throw ShapeError("counterexample_search needs n >= dim >= 1");
    partition_count_or_throw(2, n);

    SplitMix64 rng(seed);
    auto draw_frame = [&]() {
        // Rejection sampling; a random wide matrix is almost surely a frame,
        // the cap only guards against degenerate parameter choices.
        for (int attempt = 0; attempt < 100000; ++attempt) {
            std::vector<std::vector<double>> vectors(n, std::vector<double>(dim));
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t k = 0; k < dim; ++k) vectors[i][k] = rng.symmetric(1.0);
            Frame f(dim, std::move(vectors));
            if (is_frame(f)) return f;
        }
        throw NoConvergence("random frame rejection sampling stalled");
    };

    std::vector<CounterexampleRecord> found;
    for (std::size_t t = 0; t < trials; ++t) {
        Frame phi = draw_frame();
        Frame psi = draw_frame();
        WeavingVerdict verdict = exhaustive_pair(phi, psi, opts);
        if (!verdict.woven)
            found.push_back(CounterexampleRecord{t, std::move(phi), std::move(psi),
                                                 std::move(verdict)});
    }
    return found;
}

}  // namespace woven
