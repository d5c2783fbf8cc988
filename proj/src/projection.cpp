#include "specbal/projection.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "specbal/kernels.hpp"
#include "specbal/log.hpp"

namespace specbal {

namespace {

Vec clamp_vec(const Vec& v, const Vec& lo, const Vec& hi) {
    Vec out(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) out[i] = std::clamp(v[i], lo[i], hi[i]);
    return out;
}

double max_cube_violation(const Vec& u, const Vec& lo, const Vec& hi) {
    double worst = 0.0;
    for (std::size_t i = 0; i < u.size(); ++i) {
        worst = std::max(worst, lo[i] - u[i]);
        worst = std::max(worst, u[i] - hi[i]);
    }
    return worst;
}

SymmetricMatrix ball_project(const SymmetricMatrix& s, double t) {
    if (t == 0.0) return SymmetricMatrix(s.dim());
    return clip_eigenvalues(s, t);
}

}  // namespace

Vec project_to_body_offset(MatrixRefs mats, const Vec& g, const Vec& x0, double t,
                           const SubspaceBasis& basis, const ProjectionConfig& cfg,
                           const SymmetricMatrix* offset, const SymmetricMatrix* gram) {
    const int n = static_cast<int>(mats.size());
    if (n == 0) throw InvalidInputError("project_to_body: empty matrix list");
    if (static_cast<int>(g.size()) != n || static_cast<int>(x0.size()) != n) {
        throw InvalidInputError("project_to_body: g and x0 must have length n");
    }
    if (basis.ambient_dim != n) {
        throw InvalidInputError("project_to_body: basis ambient dimension mismatch");
    }
    if (t < 0.0) throw InvalidInputError("project_to_body: t must be nonnegative");
    const int d = mats[0]->dim();
    const int m = basis.dim();

    for (int i = 0; i < n; ++i) {
        if (x0[i] < -1.0 || x0[i] > 1.0) {
            throw InvalidInputError("project_to_body: x0 outside the cube");
        }
    }
    if (m == 0) return x0;

    const SymmetricMatrix zero_mat(d);
    const SymmetricMatrix& m0 = offset ? *offset : zero_mat;

    Vec gt(n);
    for (int i = 0; i < n; ++i) gt[i] = g[i] - x0[i];
    Vec lo(n), hi(n);
    for (int i = 0; i < n; ++i) {
        lo[i] = -1.0 - x0[i];
        hi[i] = 1.0 - x0[i];
    }

    const Vec gt_h = mat_tvec(basis.basis, gt);  // B^T (g - x0)

    // If the plain subspace projection is already feasible it is the answer.
    {
        const Vec u_star = mat_vec(basis.basis, gt_h);
        if (max_cube_violation(u_star, lo, hi) <= 1e-12) {
            const SymmetricMatrix s = add_scaled(m0, weighted_sum(mats, u_star), 1.0);
            if (spectral_norm(s) <= t + 1e-12 * std::max(1.0, t)) {
                Vec x(n);
                for (int i = 0; i < n; ++i) x[i] = x0[i] + u_star[i];
                return x;
            }
        }
    }

    // B^T G B, diagonalized once; the w-step solve is then O(m^2) and free to
    // track penalty changes.
    SymmetricMatrix gram_local(1);
    const SymmetricMatrix* gm = gram;
    if (gm == nullptr) {
        GramMatrix computed = gram_matrix(mats);
        gram_local = std::move(computed.gram);
        gm = &gram_local;
    }
    std::vector<double> gb(static_cast<std::size_t>(m) * m, 0.0);
    {
        Vec col(n);
        for (int j = 0; j < m; ++j) {
            std::copy(basis.basis.col(j), basis.basis.col(j) + n, col.begin());
            const Vec gcol = sym_matvec(*gm, col);
            for (int i = 0; i <= j; ++i) {
                const double v = kernels::dot(basis.basis.col(i), gcol.data(), n);
                gb[static_cast<std::size_t>(i) * m + j] = v;
                gb[static_cast<std::size_t>(j) * m + i] = v;
            }
        }
    }
    const EigenDecomposition gb_eig = symmetric_eigen(SymmetricMatrix(m, std::move(gb)));

    double rho = cfg.penalty;
    if (!(rho > 0.0)) throw InvalidInputError("project_to_body: penalty must be positive");

    Vec w = gt_h;
    Vec u = mat_vec(basis.basis, w);
    Vec p = clamp_vec(u, lo, hi);
    SymmetricMatrix s_mat = add_scaled(m0, weighted_sum(mats, u), 1.0);
    SymmetricMatrix z = ball_project(s_mat, t);
    SymmetricMatrix u_dual(d);
    Vec v_dual(n, 0.0);

    const double eps_pri = cfg.primal_tol * std::max(1.0, t);
    const double eps_dual = cfg.primal_tol * std::max(1.0, t);

    auto solve_w = [&](const Vec& rhs) {
        Vec y = mat_tvec(gb_eig.eigenvectors, rhs);
        for (int j = 0; j < m; ++j) {
            y[j] /= 1.0 + rho + rho * std::max(gb_eig.eigenvalues[j], 0.0);
        }
        return mat_vec(gb_eig.eigenvectors, y);
    };

    double r_total = 0.0;
    double r_vec = 0.0;
    bool converged = false;
    for (int iter = 0; iter < cfg.max_iterations; ++iter) {
        // w-step: quadratic over the subspace coefficients
        SymmetricMatrix zw = add_scaled(z, u_dual, -1.0);        // Z - U
        zw = add_scaled(zw, m0, -1.0);                           // Z - U - M0
        Vec rhs = mat_tvec(basis.basis, adjoint_traces(mats, zw)); // B^T adj(...)
        for (int j = 0; j < m; ++j) rhs[j] *= rho;
        Vec pv(n);
        for (int i = 0; i < n; ++i) pv[i] = rho * (p[i] - v_dual[i]);
        const Vec pv_h = mat_tvec(basis.basis, pv);
        for (int j = 0; j < m; ++j) rhs[j] += gt_h[j] + pv_h[j];
        w = solve_w(rhs);
        u = mat_vec(basis.basis, w);
        s_mat = add_scaled(m0, weighted_sum(mats, u), 1.0);

        // (Z, p)-step: exact projections
        const SymmetricMatrix z_old = z;
        const Vec p_old = p;
        z = ball_project(add_scaled(s_mat, u_dual, 1.0), t);
        Vec upv(n);
        for (int i = 0; i < n; ++i) upv[i] = u[i] + v_dual[i];
        p = clamp_vec(upv, lo, hi);

        // dual update
        SymmetricMatrix sz = add_scaled(s_mat, z, -1.0);
        u_dual = add_scaled(u_dual, sz, 1.0);
        double r_vec_sq = 0.0;
        for (int i = 0; i < n; ++i) {
            const double diff = u[i] - p[i];
            v_dual[i] += diff;
            r_vec_sq += diff * diff;
        }

        const double r_mat_sq = kernels::sum_sq(sz.data(), sz.entries().size());
        r_total = std::sqrt(r_mat_sq + r_vec_sq);
        r_vec = std::sqrt(r_vec_sq);

        // dual residual through the adjoint of the constraint map
        SymmetricMatrix dz = add_scaled(z, z_old, -1.0);
        Vec dual_vec = adjoint_traces(mats, dz);
        for (int i = 0; i < n; ++i) dual_vec[i] += p[i] - p_old[i];
        const double s_norm = rho * vec_norm2(mat_tvec(basis.basis, dual_vec));

        if (r_total <= eps_pri && s_norm <= eps_dual) {
            converged = true;
            break;
        }

        // residual balancing, factor 2 when the ratio passes 10
        if (r_total > 10.0 * s_norm && rho < 1e8) {
            rho *= 2.0;
            u_dual = scaled(u_dual, 0.5);
            kernels::scale(v_dual.data(), 0.5, v_dual.size());
        } else if (s_norm > 10.0 * r_total && rho > 1e-8) {
            rho *= 0.5;
            u_dual = scaled(u_dual, 2.0);
            kernels::scale(v_dual.data(), 2.0, v_dual.size());
        }
    }

    if (!converged) {
        throw ConvergenceError("project_to_body: splitting residual " + std::to_string(r_total) +
                                   " above tolerance " + std::to_string(eps_pri) + " after " +
                                   std::to_string(cfg.max_iterations) + " iterations",
                               cfg.max_iterations, r_total);
    }

    // Assemble x from the subspace copy; coordinates whose cube copy sits
    // exactly on a wall are snapped to +-1 so downstream freeze detection sees
    // clean boundary values. The snap perturbs subspace membership by no more
    // than the consensus gap.
    Vec x(n);
    const double snap_gap = std::max(3.0 * r_vec, 1e-12);
    for (int i = 0; i < n; ++i) {
        double xi = x0[i] + u[i];
        if (p[i] == hi[i] && std::fabs(u[i] - p[i]) <= snap_gap) {
            xi = 1.0;
        } else if (p[i] == lo[i] && std::fabs(u[i] - p[i]) <= snap_gap) {
            xi = -1.0;
        } else {
            xi = std::clamp(xi, -1.0, 1.0);
        }
        x[i] = xi;
    }
    return x;
}

Vec project_to_body(MatrixRefs mats, const Vec& g, const Vec& x0, double t,
                    const SubspaceBasis& basis, const ProjectionConfig& cfg) {
    return project_to_body_offset(mats, g, x0, t, basis, cfg, nullptr, nullptr);
}

}  // namespace specbal
