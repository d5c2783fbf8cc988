#pragma once

// Coefficient-space subspace restriction: split off the directions where the
// covariance spectrum exceeds a threshold and work in their orthogonal
// complement, where the covariance norm parameter of the restricted Gaussian
// series is provably small.

#include "specbal/concentration.hpp"
#include "specbal/instance.hpp"
#include "specbal/linalg.hpp"

namespace specbal {

// H = complement of the Gram eigenvectors whose eigenvalue exceeds delta_sq.
// The coefficient-space constraint induced by a bad covariance eigenvector is
// exactly its Gram eigenvector (the two spectra coincide on nonzeros and the
// constraint reduces to <y, u_j> = 0), so the returned basis is simply the
// remaining Gram eigenvectors. Eigenvalues within 1e-10 of delta_sq count as
// not exceeding, for deterministic behavior at the boundary.
SubspaceBasis bad_subspace(const GramMatrix& gram, double delta_sq);

// v(Y) for the series restricted to the basis: sqrt of the largest eigenvalue
// of B^T G B, which is the Gram matrix of B_j = sum_i (b_j)_i A_i.
double restricted_v_param(const GramMatrix& gram, const SubspaceBasis& basis);
double restricted_v_param(const Instance& inst, const SubspaceBasis& basis);

// sigma(Y) over the restricted series, built from the explicit B_j matrices.
// Used by verification; the contraction sigma(Y) <= sigma(X) is an invariant.
double restricted_sigma_param(MatrixRefs mats, const SubspaceBasis& basis);

}  // namespace specbal
