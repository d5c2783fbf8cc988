#include "specbal/subspace.hpp"

#include <algorithm>
#include <cmath>

#include "specbal/kernels.hpp"

namespace specbal {

SubspaceBasis bad_subspace(const GramMatrix& gram, double delta_sq) {
    // delta_sq = 0 is allowed: it arises for all-zero series, where the Gram
    // spectrum is zero and no direction is cut
    if (delta_sq < 0.0) throw InvalidInputError("bad_subspace: delta_sq must be nonnegative");
    const int n = gram.gram.dim();
    // boundary tolerance keeps the cut deterministic; eigenvalues within
    // 1e-10 of the threshold count as not exceeding
    int k = 0;
    while (k < n && gram.eigen.eigenvalues[k] > delta_sq + 1e-10) ++k;

    SubspaceBasis out;
    out.ambient_dim = n;
    out.constraint_count = k;
    out.delta_sq = delta_sq;
    const int m = n - k;
    out.basis = DenseMatrix(n, m);
    for (int j = 0; j < m; ++j) {
        std::copy(gram.eigen.eigenvectors.col(k + j), gram.eigen.eigenvectors.col(k + j) + n,
                  out.basis.col(j));
    }
    return out;
}

double restricted_v_param(const GramMatrix& gram, const SubspaceBasis& basis) {
    const int n = gram.gram.dim();
    if (basis.ambient_dim != n) {
        throw InvalidInputError("restricted_v_param: basis ambient dimension mismatch");
    }
    const int m = basis.dim();
    if (m == 0) return 0.0;
    // Gram of the restricted series is B^T G B
    std::vector<double> gb(static_cast<std::size_t>(m) * m, 0.0);
    for (int j = 0; j < m; ++j) {
        Vec col(basis.basis.col(j), basis.basis.col(j) + n);
        const Vec gcol = sym_matvec(gram.gram, col);
        for (int i = 0; i < m; ++i) {
            gb[static_cast<std::size_t>(i) * m + j] = kernels::dot(basis.basis.col(i),
                                                                   gcol.data(), n);
        }
    }
    const EigenDecomposition eig = symmetric_eigen(SymmetricMatrix(m, std::move(gb)));
    return std::sqrt(std::max(eig.eigenvalues.front(), 0.0));
}

double restricted_v_param(const Instance& inst, const SubspaceBasis& basis) {
    return restricted_v_param(gram_matrix(inst), basis);
}

double restricted_sigma_param(MatrixRefs mats, const SubspaceBasis& basis) {
    const int n = static_cast<int>(mats.size());
    if (basis.ambient_dim != n) {
        throw InvalidInputError("restricted_sigma_param: basis ambient dimension mismatch");
    }
    const int m = basis.dim();
    if (m == 0) return 0.0;
    std::vector<SymmetricMatrix> series;
    series.reserve(m);
    for (int j = 0; j < m; ++j) {
        std::span<const double> coeffs(basis.basis.col(j), static_cast<std::size_t>(n));
        series.push_back(weighted_sum(mats, coeffs));
    }
    std::vector<const SymmetricMatrix*> ptrs;
    ptrs.reserve(m);
    for (const auto& s : series) ptrs.push_back(&s);
    return sigma_param(ptrs);
}

}  // namespace specbal
