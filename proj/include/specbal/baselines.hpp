#pragma once

// Reference points: random coloring, Monte-Carlo Gaussian norm estimation,
// and exact brute force for small n.

#include <cstdint>
#include <utility>

#include "specbal/instance.hpp"
#include "specbal/rng.hpp"

namespace specbal {

struct RandomColoringResult {
    SignVector signs;
    double discrepancy = 0.0;
};

RandomColoringResult random_coloring(const Instance& inst, Rng& rng);

struct MonteCarloEstimate {
    double mean = 0.0;
    double stderr_ = 0.0;
    int samples = 0;
};

// Mean and standard error of ||sum_i g_i A_i||_op over i.i.d. standard
// Gaussian draws. Per-sample seeds are derived from the caller's rng, so the
// estimate is independent of the thread count.
MonteCarloEstimate monte_carlo_gaussian_norm(const Instance& inst, int samples, Rng& rng,
                                             int threads = 1);

struct BruteForceResult {
    SignVector signs;
    double min_discrepancy = 0.0;
};

// Exact minimum over sign vectors with x_1 fixed at +1 (x and -x tie), ties
// broken lexicographically (+1 before -1). Refuses n > 24.
BruteForceResult brute_force_min(const Instance& inst, int threads = 1);

}  // namespace specbal
