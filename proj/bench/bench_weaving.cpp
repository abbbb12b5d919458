// Benchmark: serial reference scan vs. the parallel kernel on one seeded
// random pair.  Also cross-checks that both return identical verdicts, since
// the reduction is exact regardless of the split.
//
// Usage: bench_weaving [dim] [vectors] [seed]   (defaults: 4 16 42)

#include <chrono>
#include <cstdint>
#include <cstdlib>
#include <iostream>
#include <vector>

#include "woven/frame.hpp"
#include "woven/splitmix.hpp"
#include "woven/weaving.hpp"

#ifdef WOVEN_HAVE_OPENMP
#include <omp.h>
#endif

namespace {

woven::Frame random_frame(std::size_t dim, std::size_t n, woven::SplitMix64& rng) {
    std::vector<std::vector<double>> vectors(n, std::vector<double>(dim));
    for (auto& v : vectors) {
        for (double& x : v) x = rng.symmetric(1.0);
    }
    return woven::Frame(dim, vectors);
}

template <typename F>
double seconds(F&& body) {
    const auto start = std::chrono::steady_clock::now();
    body();
    const auto stop = std::chrono::steady_clock::now();
    return std::chrono::duration<double>(stop - start).count();
}

}  // namespace

int main(int argc, char** argv) {
    const std::size_t dim = argc > 1 ? std::strtoull(argv[1], nullptr, 10) : 4;
    const std::size_t n = argc > 2 ? std::strtoull(argv[2], nullptr, 10) : 16;
    const std::uint64_t seed = argc > 3 ? std::strtoull(argv[3], nullptr, 10) : 42;

    woven::SplitMix64 rng(seed);
    const woven::Frame phi = random_frame(dim, n, rng);
    const woven::Frame psi = random_frame(dim, n, rng);

    std::cout << "dim=" << dim << " vectors=" << n << " partitions=" << (std::uint64_t(1) << n)
              << " seed=" << seed << "\n";

    woven::WeavingVerdict serial;
    const double t_serial = seconds([&] { serial = woven::exhaustive_pair_serial(phi, psi); });
    std::cout << "serial reference   " << t_serial << " s   lower=" << serial.universal_lower
              << " upper=" << serial.universal_upper << "\n";

#ifdef WOVEN_HAVE_OPENMP
    std::vector<int> counts{1, 2, 4, 0};
    for (int threads : counts) {
        woven::WeavingVerdict parallel;
        const double t = seconds([&] {
            parallel = woven::exhaustive_pair(phi, psi, woven::ExhaustiveOptions{threads});
        });
        const int used = threads > 0 ? threads : omp_get_max_threads();
        const bool same = parallel.woven == serial.woven &&
                          parallel.universal_lower == serial.universal_lower &&
                          parallel.universal_upper == serial.universal_upper;
        std::cout << "parallel threads=" << used << "  " << t << " s   speedup="
                  << (t > 0 ? t_serial / t : 0.0) << "  identical=" << (same ? "yes" : "NO")
                  << "\n";
        if (!same) return 1;
    }
#else
    std::cout << "(built without the parallel kernel; only the reference ran)\n";
#endif
    return 0;
}
