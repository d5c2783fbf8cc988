#pragma once

// Concentration parameters of the Gaussian series X = sum_i g_i A_i: sigma,
// the covariance norm parameter v, the per-matrix Frobenius budget f, and the
// two reference bounds compared against in reports.
//
// The d^2 x d^2 covariance of X's entries is never materialized: its nonzero
// spectrum equals that of the n x n Gram matrix G_ij = Tr(A_i A_j), which is
// what everything here is computed from.

#include <span>

#include "specbal/instance.hpp"
#include "specbal/linalg.hpp"

namespace specbal {

struct ConcentrationParams {
    double sigma = 0.0;             // ||sum A_i^2||_op^(1/2)
    double v = 0.0;                 // ||Cov(X)||_op^(1/2)
    double frobenius_budget = 0.0;  // sum_i ||A_i||_F^2
    double f = 0.0;                 // sqrt(frobenius_budget / n)
    int n = 0;
    int d = 0;
};

struct GramMatrix {
    SymmetricMatrix gram;     // G_ij = Tr(A_i A_j), PSD
    EigenDecomposition eigen;
};

using MatrixRefs = std::span<const SymmetricMatrix* const>;

GramMatrix gram_matrix(MatrixRefs mats);
GramMatrix gram_matrix(const Instance& inst);

double sigma_param(MatrixRefs mats);
double sigma_param(const Instance& inst);

double v_param(const GramMatrix& gram);
double v_param(const Instance& inst);

double frobenius_budget(MatrixRefs mats);

ConcentrationParams concentration_params(MatrixRefs mats, int d);
ConcentrationParams concentration_params(const Instance& inst);

// C * (sigma + (ln d)^(3/4) * sqrt(sigma * v)). Natural logarithm. C is a
// caller-supplied working constant (default 4 in reports); no verified value
// exists for it.
double bbvh_bound(const ConcentrationParams& params, double c);

// sigma * sqrt(2 ln(2d)), the explicit matrix-Chernoff / non-commutative
// Khintchine constant used as the random-coloring reference.
double chernoff_bound(const ConcentrationParams& params);

}  // namespace specbal
