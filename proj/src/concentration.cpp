#include "specbal/concentration.hpp"

#include <cmath>

#include "specbal/kernels.hpp"

namespace specbal {

GramMatrix gram_matrix(MatrixRefs mats) {
    const int n = static_cast<int>(mats.size());
    if (n == 0) throw InvalidInputError("gram_matrix: empty matrix list");
    std::vector<double> g(static_cast<std::size_t>(n) * n, 0.0);
    for (int i = 0; i < n; ++i) {
        for (int j = i; j < n; ++j) {
            const double v = trace_inner(*mats[i], *mats[j]);
            g[static_cast<std::size_t>(i) * n + j] = v;
            g[static_cast<std::size_t>(j) * n + i] = v;
        }
    }
    GramMatrix out;
    out.gram = SymmetricMatrix(n, std::move(g));
    out.eigen = symmetric_eigen(out.gram);
    return out;
}

GramMatrix gram_matrix(const Instance& inst) {
    const auto ptrs = inst.matrix_ptrs();
    return gram_matrix(ptrs);
}

double sigma_param(MatrixRefs mats) {
    return std::sqrt(spectral_norm(sum_of_squares(mats)));
}

double sigma_param(const Instance& inst) {
    const auto ptrs = inst.matrix_ptrs();
    return sigma_param(ptrs);
}

double v_param(const GramMatrix& gram) {
    return std::sqrt(std::max(gram.eigen.eigenvalues.front(), 0.0));
}

double v_param(const Instance& inst) { return v_param(gram_matrix(inst)); }

double frobenius_budget(MatrixRefs mats) {
    double total = 0.0;
    for (const SymmetricMatrix* m : mats) {
        total += kernels::sum_sq(m->data(), m->entries().size());
    }
    return total;
}

ConcentrationParams concentration_params(MatrixRefs mats, int d) {
    ConcentrationParams p;
    p.n = static_cast<int>(mats.size());
    p.d = d;
    p.sigma = sigma_param(mats);
    p.v = v_param(gram_matrix(mats));
    p.frobenius_budget = frobenius_budget(mats);
    p.f = std::sqrt(p.frobenius_budget / p.n);
    return p;
}

ConcentrationParams concentration_params(const Instance& inst) {
    const auto ptrs = inst.matrix_ptrs();
    return concentration_params(ptrs, inst.d);
}

double bbvh_bound(const ConcentrationParams& params, double c) {
    if (params.d < 2) throw InvalidInputError("bbvh_bound: requires d >= 2");
    if (!(c > 0.0)) throw InvalidInputError("bbvh_bound: C must be positive");
    const double logd = std::log(static_cast<double>(params.d));
    return c * (params.sigma + std::pow(logd, 0.75) * std::sqrt(params.sigma * params.v));
}

double chernoff_bound(const ConcentrationParams& params) {
    if (params.d < 2) throw InvalidInputError("chernoff_bound: requires d >= 2");
    return params.sigma * std::sqrt(2.0 * std::log(2.0 * params.d));
}

}  // namespace specbal
