#include "specbal/baselines.hpp"

#include <cmath>

#include "enumeration.hpp"
#include "specbal/kernels.hpp"
#include "specbal/parallel.hpp"

namespace specbal {

RandomColoringResult random_coloring(const Instance& inst, Rng& rng) {
    RandomColoringResult out;
    out.signs.values.resize(inst.n);
    for (double& v : out.signs.values) v = rng.sign();
    const auto ptrs = inst.matrix_ptrs();
    out.discrepancy = spectral_norm(weighted_sum(ptrs, out.signs.values));
    return out;
}

MonteCarloEstimate monte_carlo_gaussian_norm(const Instance& inst, int samples, Rng& rng,
                                             int threads) {
    if (samples < 1) throw InvalidInputError("monte_carlo_gaussian_norm: samples must be >= 1");
    const auto ptrs = inst.matrix_ptrs();
    std::span<const SymmetricMatrix* const> mats(ptrs);

    // per-sample derived seeds keep the estimate independent of threading
    std::vector<double> norms(samples);
    parallel_for_blocks(samples, threads, [&](int, std::size_t lo, std::size_t hi) {
        for (std::size_t s = lo; s < hi; ++s) {
            Rng sample_rng = rng.derive(0x9c3a0ULL + s);
            const Vec g = sample_rng.gaussian_vector(inst.n);
            norms[s] = spectral_norm(weighted_sum(mats, g));
        }
    });

    MonteCarloEstimate est;
    est.samples = samples;
    double sum = 0.0;
    for (double v : norms) sum += v;
    est.mean = sum / samples;
    if (samples > 1) {
        double ss = 0.0;
        for (double v : norms) ss += (v - est.mean) * (v - est.mean);
        est.stderr_ = std::sqrt(ss / (samples - 1)) / std::sqrt(static_cast<double>(samples));
    }
    return est;
}

BruteForceResult brute_force_min(const Instance& inst, int threads) {
    if (inst.n > 24) {
        throw InvalidInputError("brute_force_min: n > 24 refused (enumeration too large)");
    }
    const auto ptrs = inst.matrix_ptrs();
    std::span<const SymmetricMatrix* const> mats(ptrs);

    // x and -x are equivalent, so fix x_1 = +1
    Vec base(static_cast<std::size_t>(inst.n), 0.0);
    base[0] = 1.0;
    std::vector<int> free_idx;
    for (int i = 1; i < inst.n; ++i) free_idx.push_back(i);

    const detail::EnumBest best = detail::enumerate_signs(mats, base, free_idx, threads);
    BruteForceResult out;
    out.signs.values = best.signs;
    out.signs.validate();
    out.min_discrepancy = spectral_norm(weighted_sum(mats, best.signs));
    return out;
}

}  // namespace specbal
