#include "specbal/full_coloring.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <mutex>
#include <string>

#include "enumeration.hpp"
#include "specbal/kernels.hpp"
#include "specbal/log.hpp"
#include "specbal/parallel.hpp"

namespace specbal {

std::pair<Instance, TruncationInfo> truncate_dimension(const Instance& inst) {
    TruncationInfo info;
    info.original_d = inst.d;
    info.new_d = inst.d;
    const auto ptrs = inst.matrix_ptrs();
    info.f = std::sqrt(frobenius_budget(ptrs) / inst.n);

    const std::int64_t nsq64 = static_cast<std::int64_t>(inst.n) * inst.n;
    if (static_cast<std::int64_t>(inst.d) <= nsq64) {
        return {inst, info};
    }
    const int d = inst.d;
    const int nsq = static_cast<int>(nsq64);

    const SymmetricMatrix m = sum_of_squares(ptrs);
    EigenDecomposition eig = symmetric_eigen(m);  // descending, so the kept
                                                  // block carries the heavy part
    std::vector<SymmetricMatrix> rotated;
    rotated.reserve(inst.n);
    DenseMatrix t(d, d);  // T = A * Q, column-major
    for (const SymmetricMatrix* a : ptrs) {
        for (int j = 0; j < d; ++j) {
            Vec q(eig.eigenvectors.col(j), eig.eigenvectors.col(j) + d);
            const Vec aq = sym_matvec(*a, q);
            std::copy(aq.begin(), aq.end(), t.col(j));
        }
        std::vector<double> block(static_cast<std::size_t>(nsq) * nsq);
        for (int i = 0; i < nsq; ++i) {
            for (int j = 0; j < nsq; ++j) {
                block[static_cast<std::size_t>(i) * nsq + j] =
                    kernels::dot(eig.eigenvectors.col(i), t.col(j), d);
            }
        }
        rotated.emplace_back(nsq, std::move(block));
    }

    info.truncated = true;
    info.new_d = nsq;
    info.rotation = std::move(eig.eigenvectors);
    Instance out = make_instance(inst.n, nsq, std::move(rotated), inst.label + "|truncated",
                                 inst.seed);
    return {std::move(out), info};
}

SignVector endgame_exhaustive(MatrixRefs mats, const Vec& x_partial,
                              const std::vector<int>& active, int threshold, int threads) {
    const int k = static_cast<int>(active.size());
    if (k > threshold) {
        throw InvalidInputError("endgame_exhaustive: active set larger than threshold");
    }
    if (k > 30) throw InvalidInputError("endgame_exhaustive: active set too large");
    SignVector out;
    if (k == 0) {
        out.values = x_partial;
        out.validate();
        return out;
    }
    Vec base = x_partial;
    for (int idx : active) base[idx] = 0.0;  // free coordinates excluded from the base sum
    const detail::EnumBest best = detail::enumerate_signs(mats, base, active, threads);
    out.values = best.signs;
    out.validate();
    return out;
}

namespace {

double recompute_discrepancy(const Instance& inst, const Vec& signs) {
    const auto ptrs = inst.matrix_ptrs();
    return spectral_norm(weighted_sum(ptrs, signs));
}

}  // namespace

SolveReport solve(const Instance& inst, const SolveConfig& cfg, Rng& rng) {
    inst.ensure_unit_norms(1e-8);
    if (cfg.endgame_threshold < 0 || cfg.endgame_threshold > 24) {
        throw InvalidInputError("solve: endgame_threshold must lie in [0, 24]");
    }

    SolveReport report;
    report.seed = rng.seed();
    report.config = cfg;
    report.instance_label = inst.label;
    report.n = inst.n;
    report.d = inst.d;
    report.bounds = concentration_params(inst);
    if (inst.d >= 2) {
        report.chernoff = chernoff_bound(report.bounds);
        report.bbvh_c4 = bbvh_bound(report.bounds, 4.0);
    }

    // degenerate all-zero instance: canonical all-+1 coloring
    if (report.bounds.frobenius_budget == 0.0) {
        report.signs.values.assign(inst.n, 1.0);
        report.discrepancy = 0.0;
        return report;
    }

    auto [work, tinfo] = truncate_dimension(inst);
    report.truncated = tinfo.truncated;
    report.truncation_f = tinfo.truncated ? tinfo.f : 0.0;
    const auto mats = work.matrix_ptrs();
    const int n = work.n;

    Vec x(static_cast<std::size_t>(n), 0.0);
    int round = 0;
    while (true) {
        std::vector<int> active;
        for (int i = 0; i < n; ++i) {
            if (std::fabs(x[i]) < 1.0) active.push_back(i);
        }
        const int n_t = static_cast<int>(active.size());
        if (n_t == 0) break;
        if (n_t <= cfg.endgame_threshold) {
            const Vec x_before = x;
            const SignVector completion =
                endgame_exhaustive(mats, x, active, cfg.endgame_threshold, cfg.threads);
            x = completion.values;
            Vec diff(static_cast<std::size_t>(n));
            for (int i = 0; i < n; ++i) diff[i] = x[i] - x_before[i];
            report.endgame_norm = spectral_norm(weighted_sum(mats, diff));
            break;
        }
        ++round;
        if (round > n + 8) {
            throw SolverFailureError("solve: round budget exhausted without completing", 0.0);
        }

        std::vector<const SymmetricMatrix*> act_mats;
        act_mats.reserve(n_t);
        for (int idx : active) act_mats.push_back(mats[idx]);
        ConcentrationParams params_t;
        params_t.n = n_t;
        params_t.d = work.d;
        params_t.sigma = std::min(sigma_param(act_mats), std::sqrt(static_cast<double>(n_t)));
        params_t.frobenius_budget = frobenius_budget(act_mats);
        params_t.f = std::sqrt(params_t.frobenius_budget / n_t);

        PartialColoringConfig round_cfg = cfg.coloring;
        Rng round_rng = rng.derive(0x50138d00u + static_cast<std::uint64_t>(round));
        PartialColoringResult res;
        bool ok = false;
        std::string last_error;
        for (int esc = 0; esc < 3 && !ok; ++esc) {
            try {
                res = partial_color(mats, x, params_t, round_cfg, round_rng, cfg.recenter);
                ok = true;
            } catch (const SolverFailureError& e) {
                last_error = e.what();
                round_cfg.c_bound *= 2.0;
                round_cfg.adaptive_factor *= 2.0;
                log::info("solve: round %d escalating c_bound to %.3g after failure", round,
                          round_cfg.c_bound);
            }
        }
        if (!ok) {
            throw SolverFailureError("solve: round " + std::to_string(round) +
                                         " failed after escalation: " + last_error,
                                     0.0);
        }

        x = res.x;
        int frozen_total = 0;
        for (int i = 0; i < n; ++i) {
            if (std::fabs(x[i]) >= 1.0) ++frozen_total;
        }
        RoundRecord rec;
        rec.round = round;
        rec.n_t = n_t;
        rec.sigma_t = params_t.sigma;
        rec.f_t = params_t.f;
        rec.radius_t = res.radius;
        rec.achieved_norm = res.achieved_norm;
        rec.total_norm = cfg.recenter ? res.total_norm
                                      : spectral_norm(weighted_sum(mats, x));
        rec.restarts = res.restarts_used;
        rec.subspace_dim = res.subspace_dim;
        rec.frozen_after = frozen_total;
        report.ledger.push_back(rec);
        log::info("solve: round %d n_t=%d frozen=%d radius=%.4g achieved=%.4g total=%.4g", round,
                  n_t, frozen_total, rec.radius_t, rec.achieved_norm, rec.total_norm);
    }

    report.rounds = round;
    report.signs.values = x;
    report.signs.validate();
    report.discrepancy = recompute_discrepancy(inst, x);
    return report;
}

SolveReport solve(const Instance& inst, const PartialColoringConfig& coloring,
                  int endgame_threshold, Rng& rng) {
    SolveConfig cfg;
    cfg.coloring = coloring;
    cfg.endgame_threshold = endgame_threshold;
    return solve(inst, cfg, rng);
}

}  // namespace specbal
