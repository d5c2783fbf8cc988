#include "specbal/partial_coloring.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "specbal/kernels.hpp"
#include "specbal/log.hpp"

namespace specbal {

PartialColoringConfig PartialColoringConfig::practical() { return {}; }

PartialColoringConfig PartialColoringConfig::theoretical_mode() {
    PartialColoringConfig cfg;
    cfg.epsilon = 1.0 / 60000.0;
    cfg.delta = 1.5 * cfg.epsilon * std::log2(1.0 / cfg.epsilon);
    cfg.adaptive_radius = false;
    cfg.theoretical = true;
    return cfg;
}

double coloring_radius(const ConcentrationParams& params, double c) {
    const double logd = std::log(std::max(static_cast<double>(params.d), 1.0));
    return c * (params.sigma + std::pow(logd, 0.75) * std::sqrt(params.sigma * params.f));
}

namespace {

struct ActiveView {
    std::vector<int> index;                       // active position -> original index
    std::vector<const SymmetricMatrix*> mats;
    Vec x0;
};

ActiveView restrict_to_active(MatrixRefs mats, const Vec& x0) {
    ActiveView view;
    for (int i = 0; i < static_cast<int>(x0.size()); ++i) {
        if (std::fabs(x0[i]) < 1.0) {
            view.index.push_back(i);
            view.mats.push_back(mats[i]);
            view.x0.push_back(x0[i]);
        }
    }
    return view;
}

double median_of(std::vector<double> v) {
    if (v.empty()) return 0.0;
    std::sort(v.begin(), v.end());
    const std::size_t mid = v.size() / 2;
    if (v.size() % 2 == 1) return v[mid];
    return 0.5 * (v[mid - 1] + v[mid]);
}

}  // namespace

PartialColoringResult partial_color(MatrixRefs mats, const Vec& x0,
                                    const ConcentrationParams& params,
                                    const PartialColoringConfig& cfg_in, Rng& rng,
                                    bool recenter) {
    if (mats.size() != x0.size()) {
        throw InvalidInputError("partial_color: x0 length must match matrix count");
    }
    PartialColoringConfig cfg = cfg_in;
    if (!(cfg.epsilon > 0.0 && cfg.epsilon < 1.0)) {
        throw InvalidInputError("partial_color: epsilon must lie in (0,1)");
    }
    if (cfg.theoretical) {
        // the theoretical coupling is an invariant of that mode
        cfg.delta = 1.5 * cfg.epsilon * std::log2(1.0 / cfg.epsilon);
        cfg.adaptive_radius = false;
    }
    if (!(cfg.delta > 0.0)) throw InvalidInputError("partial_color: delta must be positive");
    if (cfg.max_restarts < 1) throw InvalidInputError("partial_color: max_restarts must be >= 1");

    const int n_full = static_cast<int>(mats.size());
    for (double v : x0) {
        if (std::fabs(v) > 1.0) throw InvalidInputError("partial_color: x0 outside the cube");
    }

    ActiveView active = restrict_to_active(mats, x0);
    const int n_act = static_cast<int>(active.index.size());

    PartialColoringResult result;
    result.x = x0;
    if (n_act == 0) {
        for (int i = 0; i < n_full; ++i) result.frozen.push_back(i);
        return result;
    }
    const int d = mats[0]->dim();

    const GramMatrix gram = gram_matrix(active.mats);
    const double delta_sq = params.f * params.f / cfg.delta;
    const SubspaceBasis basis = bad_subspace(gram, std::max(delta_sq, 0.0));
    const int m = basis.dim();
    result.subspace_dim = m;
    if (m == 0) {
        throw SolverFailureError("partial_color: spectrum cut removed the whole space", 0.0);
    }

    // Offset for the recentered body: the current full signed sum.
    SymmetricMatrix offset_mat(d);
    double offset_norm = 0.0;
    if (recenter) {
        offset_mat = weighted_sum(mats, x0);
        offset_norm = spectral_norm(offset_mat);
    }
    const SymmetricMatrix* offset_ptr = recenter ? &offset_mat : nullptr;

    const int need_frozen =
        std::max(1, static_cast<int>(std::floor(cfg.epsilon * n_act / 2.0)));

    // Sampled radius cap (practical mode): median of the restricted series
    // norm around the offset, measured once from a derived stream.
    double radius_median = 0.0;
    if (cfg.adaptive_radius && !cfg.theoretical) {
        Rng est_rng = rng.derive(0x7adce5);
        std::vector<double> norms;
        norms.reserve(cfg.radius_samples);
        for (int s = 0; s < cfg.radius_samples; ++s) {
            Vec h = est_rng.gaussian_vector(m);
            Vec y = mat_vec(basis.basis, h);
            kernels::scale(y.data(), cfg.step_scale, y.size());
            SymmetricMatrix series = weighted_sum(active.mats, y);
            if (recenter) series = add_scaled(series, offset_mat, 1.0);
            norms.push_back(spectral_norm(series));
        }
        radius_median = median_of(std::move(norms));
    }

    auto radius_for = [&](int escalations) {
        const double grow = std::pow(2.0, escalations);
        const double formula = coloring_radius(params, cfg.c_bound * grow);
        double t;
        if (cfg.adaptive_radius && !cfg.theoretical) {
            const double cap = cfg.adaptive_factor * grow * radius_median;
            const double envelope = recenter ? offset_norm + formula : formula;
            t = std::min(envelope, cap);
        } else {
            t = formula;
        }
        if (recenter) t = std::max(t, offset_norm * (1.0 + 1e-9));
        return t;
    };

    const int half = std::max(1, cfg.max_restarts / 2);
    int best_frozen = 0;
    for (int attempt = 0; attempt < cfg.max_restarts; ++attempt) {
        const int escalations = attempt / half;
        const double t = radius_for(escalations);

        Rng restart_rng = rng.derive(0xc01013u + static_cast<std::uint64_t>(attempt));
        Vec h = restart_rng.gaussian_vector(m);
        Vec y = mat_vec(basis.basis, h);
        kernels::scale(y.data(), cfg.step_scale, y.size());
        Vec target(n_act);
        for (int i = 0; i < n_act; ++i) target[i] = active.x0[i] + y[i];

        Vec x_act;
        try {
            x_act = project_to_body_offset(active.mats, target, active.x0, t, basis,
                                           cfg.projection, offset_ptr, &gram.gram);
        } catch (const ConvergenceError& e) {
            ProjectionConfig retry = cfg.projection;
            retry.max_iterations *= 4;
            try {
                x_act = project_to_body_offset(active.mats, target, active.x0, t, basis, retry,
                                               offset_ptr, &gram.gram);
            } catch (const ConvergenceError& e2) {
                log::debug("partial_color: restart %d projection did not converge (%s)",
                           attempt, e2.what());
                continue;
            }
        }

        // snap and count freshly frozen coordinates
        int frozen_new = 0;
        for (int i = 0; i < n_act; ++i) {
            if (std::fabs(x_act[i]) >= 1.0 - cfg.freeze_tol) {
                x_act[i] = std::copysign(1.0, x_act[i]);
                ++frozen_new;
            }
        }
        best_frozen = std::max(best_frozen, frozen_new);
        if (frozen_new < need_frozen) continue;

        Vec increment(n_act);
        for (int i = 0; i < n_act; ++i) increment[i] = x_act[i] - active.x0[i];
        const SymmetricMatrix inc_mat = weighted_sum(active.mats, increment);
        const double achieved = spectral_norm(inc_mat);
        double total = achieved;
        if (recenter) total = spectral_norm(add_scaled(offset_mat, inc_mat, 1.0));
        const double checked = recenter ? total : achieved;
        if (checked > t * (1.0 + 1e-4)) {
            log::debug("partial_color: restart %d freeze ok but norm %.6g exceeds t=%.6g",
                       attempt, checked, t);
            continue;
        }

        result.x = x0;
        for (int i = 0; i < n_act; ++i) result.x[active.index[i]] = x_act[i];
        for (int i = 0; i < n_full; ++i) {
            if (std::fabs(result.x[i]) >= 1.0) result.frozen.push_back(i);
        }
        result.achieved_norm = achieved;
        result.total_norm = total;
        result.radius = t;
        result.restarts_used = attempt + 1;
        return result;
    }

    throw SolverFailureError(
        "partial_color: no restart froze the required " + std::to_string(need_frozen) +
            " of " + std::to_string(n_act) + " coordinates (best " +
            std::to_string(best_frozen) + ")",
        static_cast<double>(best_frozen) / n_act);
}

PartialColoringResult partial_color(const Instance& inst, const Vec& x0,
                                    const ConcentrationParams& params,
                                    const PartialColoringConfig& cfg, Rng& rng) {
    const auto ptrs = inst.matrix_ptrs();
    return partial_color(ptrs, x0, params, cfg, rng, false);
}

}  // namespace specbal
