#pragma once

// Dense symmetric linear algebra used by every other module: symmetric
// matrices, eigendecomposition, spectral clipping, orthonormal complements.
// Dense storage only; the library targets desk-scale problems (dimensions up
// to a few hundred) where dense solvers are the simplest and fastest option.

#include <span>
#include <vector>

#include "specbal/errors.hpp"

namespace specbal {

using Vec = std::vector<double>;

double vec_dot(const Vec& a, const Vec& b);
double vec_norm2(const Vec& a);

// Column-major dense matrix. Columns are the natural unit here (basis
// vectors, eigenvectors), so they are kept contiguous.
struct DenseMatrix {
    int rows = 0;
    int cols = 0;
    std::vector<double> a;

    DenseMatrix() = default;
    DenseMatrix(int r, int c) : rows(r), cols(c), a(static_cast<std::size_t>(r) * c, 0.0) {}

    double& operator()(int i, int j) { return a[static_cast<std::size_t>(j) * rows + i]; }
    double operator()(int i, int j) const { return a[static_cast<std::size_t>(j) * rows + i]; }
    double* col(int j) { return a.data() + static_cast<std::size_t>(j) * rows; }
    const double* col(int j) const { return a.data() + static_cast<std::size_t>(j) * rows; }

    static DenseMatrix identity(int n);
};

// y = B x  (B is rows x cols, x has length cols)
Vec mat_vec(const DenseMatrix& b, const Vec& x);
// y = B^T x  (x has length rows)
Vec mat_tvec(const DenseMatrix& b, const Vec& x);

// Dense d x d real symmetric matrix, row-major. The constructor symmetrizes
// (averages a_ij and a_ji) and rejects non-finite entries, so a constructed
// value always satisfies a_ij == a_ji exactly.
class SymmetricMatrix {
  public:
    SymmetricMatrix() = default;
    explicit SymmetricMatrix(int dim);
    SymmetricMatrix(int dim, std::vector<double> row_major_entries);

    int dim() const { return dim_; }
    double operator()(int i, int j) const {
        return entries_[static_cast<std::size_t>(i) * dim_ + j];
    }
    const std::vector<double>& entries() const { return entries_; }
    const double* data() const { return entries_.data(); }

  private:
    int dim_ = 0;
    std::vector<double> entries_;
};

struct EigenDecomposition {
    Vec eigenvalues;          // sorted descending
    DenseMatrix eigenvectors; // column j pairs with eigenvalues[j]
};

struct SubspaceBasis {
    int ambient_dim = 0;
    DenseMatrix basis;        // ambient_dim x dim(H), orthonormal columns
    int constraint_count = 0; // number of excluded directions
    double delta_sq = 0.0;    // threshold used when built from a spectrum cut

    int dim() const { return basis.cols; }
};

// ||A||_F = sqrt(sum a_ij^2)
double frobenius_norm(const SymmetricMatrix& a);

// max_i |lambda_i|
double spectral_norm(const SymmetricMatrix& a);

// Full eigendecomposition via Householder tridiagonalization and implicit
// QL. Deterministic: eigenvalues sorted descending, exact ties ordered by
// eigenvector lexicographic order, each eigenvector's first nonzero
// component made positive.
EigenDecomposition symmetric_eigen(const SymmetricMatrix& a);

// Frobenius-nearest matrix with operator norm <= t: clamps every eigenvalue
// into [-t, t]. Returns the input unchanged when it is already feasible.
SymmetricMatrix clip_eigenvalues(const SymmetricMatrix& a, double t);

// Orthonormal basis of the orthogonal complement of span(constraints) in
// R^n. Rank of the constraint set is decided with singular-value threshold
// 1e-10 * (largest singular value).
SubspaceBasis orthonormal_complement_basis(std::span<const Vec> constraints, int n);

// sum_i coeffs[i] * mats[i]
SymmetricMatrix weighted_sum(std::span<const SymmetricMatrix* const> mats,
                             std::span<const double> coeffs);

// s * A
SymmetricMatrix scaled(const SymmetricMatrix& a, double s);

// A + s * B
SymmetricMatrix add_scaled(const SymmetricMatrix& a, const SymmetricMatrix& b, double s);

// Tr(A B) for symmetric A, B of the same dimension.
double trace_inner(const SymmetricMatrix& a, const SymmetricMatrix& b);

// [Tr(A_i W)]_i
Vec adjoint_traces(std::span<const SymmetricMatrix* const> mats, const SymmetricMatrix& w);

// sum_i A_i^2
SymmetricMatrix sum_of_squares(std::span<const SymmetricMatrix* const> mats);

// y = A x
Vec sym_matvec(const SymmetricMatrix& a, const Vec& x);

}  // namespace specbal
