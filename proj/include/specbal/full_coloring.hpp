#pragma once

// Full +-1 coloring: dimension truncation, recursive partial coloring over
// the shrinking active set, exhaustive endgame, per-round ledger.

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "specbal/concentration.hpp"
#include "specbal/instance.hpp"
#include "specbal/partial_coloring.hpp"

namespace specbal {

struct TruncationInfo {
    bool truncated = false;
    int original_d = 0;
    int new_d = 0;
    double f = 0.0;          // sqrt(frobenius_budget / n) of the input
    DenseMatrix rotation;    // eigenbasis of sum A_i^2 (descending), only when truncated
};

// Identity pass-through when d <= n^2. Otherwise rotates every matrix into
// the eigenbasis of M = sum A_i^2 (diagonal descending) and keeps the top-left
// n^2 x n^2 block; any sign vector's discrepancy moves by at most 2f.
std::pair<Instance, TruncationInfo> truncate_dimension(const Instance& inst);

struct RoundRecord {
    int round = 0;
    int n_t = 0;            // active coordinates entering the round
    double sigma_t = 0.0;
    double f_t = 0.0;
    double radius_t = 0.0;
    double achieved_norm = 0.0;  // per-round increment norm
    double total_norm = 0.0;     // running signed-sum norm after the round
    int restarts = 0;
    int subspace_dim = 0;
    int frozen_after = 0;   // total frozen coordinates after the round
};

struct SolveConfig {
    PartialColoringConfig coloring;
    int endgame_threshold = 12;
    // Steer the running total's spectral norm instead of each increment in
    // isolation. Increments still go to the ledger, so the triangle-inequality
    // accounting is unchanged.
    bool recenter = true;
    int threads = 1;
};

struct SolveReport {
    SignVector signs;
    double discrepancy = 0.0;  // recomputed from signs on the original instance
    int rounds = 0;
    std::vector<RoundRecord> ledger;
    bool truncated = false;
    double truncation_f = 0.0;
    double endgame_norm = 0.0;  // ||A(x_final) - A(x_partial)||_op
    ConcentrationParams bounds;
    double chernoff = 0.0;
    double bbvh_c4 = 0.0;  // C = 4 is an empirical working constant
    std::uint64_t seed = 0;
    SolveConfig config;
    std::string instance_label;
    int n = 0;
    int d = 0;
};

// Requires ||A_i||_op <= 1 + 1e-8. Throws SolverFailureError when partial
// coloring exhausts restarts and escalations.
SolveReport solve(const Instance& inst, const SolveConfig& cfg, Rng& rng);
SolveReport solve(const Instance& inst, const PartialColoringConfig& coloring,
                  int endgame_threshold, Rng& rng);

// Exact completion of the active coordinates by enumeration of all 2^k sign
// assignments; ties broken by lexicographically smallest pattern (+1 before
// -1). |active| must not exceed threshold.
SignVector endgame_exhaustive(MatrixRefs mats, const Vec& x_partial,
                              const std::vector<int>& active, int threshold, int threads = 1);

}  // namespace specbal
