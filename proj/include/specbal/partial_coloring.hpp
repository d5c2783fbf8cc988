#pragma once

// One partial-coloring round: restrict Gaussian sampling to the subspace
// complementary to the heavy covariance directions, project onto the body,
// and accept once enough coordinates reach the cube boundary.

#include <cstdint>
#include <vector>

#include "specbal/concentration.hpp"
#include "specbal/projection.hpp"
#include "specbal/rng.hpp"
#include "specbal/subspace.hpp"

namespace specbal {

struct PartialColoringConfig {
    double epsilon = 0.25;  // accept once >= epsilon*n/2 coordinates freeze
    double delta = 0.375;   // spectrum-cut budget; Delta^2 = f^2/delta
    double c_bound = 2.0;   // multiplier on the concentration radius
    int max_restarts = 16;  // c_bound doubles after max_restarts/2 failures
    ProjectionConfig projection;
    double freeze_tol = 1e-7;
    double step_scale = 1.0;  // scale on the Gaussian sample

    // Practical mode only: cap the radius at adaptive_factor times the sample
    // median of the restricted series norm. The concentration formula bounds
    // the expectation from above, often loosely; the sampled cap keeps the
    // spectral constraint active so the projection does real work. Escalation
    // relaxes the cap together with c_bound.
    bool adaptive_radius = true;
    double adaptive_factor = 0.9;
    int radius_samples = 8;

    bool theoretical = false;

    static PartialColoringConfig practical();
    // epsilon = 1/60000 and delta = (3/2) eps log2(1/eps); radius from the
    // formula only. Validates the constants rather than desk-scale runs: the
    // required freeze count eps*n/2 is below 1 for any desk-scale n.
    static PartialColoringConfig theoretical_mode();
};

struct PartialColoringResult {
    Vec x;                       // in [-1,1]^n, frozen entries exactly +-1
    std::vector<int> frozen;     // indices with |x_i| = 1 after snapping
    double achieved_norm = 0.0;  // ||sum_i (x_i - x0_i) A_i||_op
    double total_norm = 0.0;     // ||offset + increment||_op (= achieved_norm without offset)
    double radius = 0.0;         // the bound t the accepted restart ran with
    int restarts_used = 0;
    int subspace_dim = 0;
};

// params must describe the matrices passed here (the caller computes them on
// the active submatrix set). Coordinates of x0 at exactly +-1 are treated as
// frozen and never move. With recenter set, the spectral constraint applies
// to offset + increment where offset = sum_i x0_i A_i, steering the total
// norm instead of the per-round increment.
PartialColoringResult partial_color(MatrixRefs mats, const Vec& x0,
                                    const ConcentrationParams& params,
                                    const PartialColoringConfig& cfg, Rng& rng,
                                    bool recenter = false);

PartialColoringResult partial_color(const Instance& inst, const Vec& x0,
                                    const ConcentrationParams& params,
                                    const PartialColoringConfig& cfg, Rng& rng);

// Radius formula: c * (sigma + (ln d)^(3/4) * sqrt(sigma * f)).
double coloring_radius(const ConcentrationParams& params, double c);

}  // namespace specbal
