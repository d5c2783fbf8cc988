#pragma once

// Euclidean projection onto the partial-coloring body: the intersection of an
// affine subspace x0 + H, the spectral-norm ball of the signed matrix sum,
// and the cube [-1,1]^n.
//
// Solved by operator splitting with consensus copies: the smooth quadratic
// lives on the subspace coefficients, the spectral ball is handled through an
// auxiliary matrix variable projected with clip_eigenvalues, and the cube
// through a clamped vector copy. The penalty is self-tuned by residual
// balancing.

#include "specbal/concentration.hpp"
#include "specbal/linalg.hpp"

namespace specbal {

struct ProjectionConfig {
    int max_iterations = 2000;
    double primal_tol = 1e-6;
    double penalty = 1.0;  // initial value, adjusted by residual balancing
};

// Projection of g onto {x : x - x0 in span(basis), ||sum_i (x_i - x0_i) A_i||_op <= t,
// x in [-1,1]^n}. x0 must lie in [-1,1]^n (interior on coordinates the caller
// wants movable), so the feasible set is nonempty. Constraint violations of
// the result are at most primal_tol * max(1, t). Throws ConvergenceError with
// residual diagnostics when the iteration budget runs out.
Vec project_to_body(MatrixRefs mats, const Vec& g, const Vec& x0, double t,
                    const SubspaceBasis& basis, const ProjectionConfig& cfg);

// Same body shifted by a constant matrix: ||offset + sum_i (x_i - x0_i) A_i||_op <= t.
// `gram` optionally supplies the precomputed Gram matrix of `mats` (entries
// Tr(A_i A_j)); pass nullptr to have it computed here.
Vec project_to_body_offset(MatrixRefs mats, const Vec& g, const Vec& x0, double t,
                           const SubspaceBasis& basis, const ProjectionConfig& cfg,
                           const SymmetricMatrix* offset, const SymmetricMatrix* gram);

}  // namespace specbal
