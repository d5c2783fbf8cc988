#include "specbal/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <numeric>
#include <string>

#include "specbal/kernels.hpp"

namespace specbal {

namespace {

bool all_finite(const std::vector<double>& v) {
    for (double x : v) {
        if (!std::isfinite(x)) return false;
    }
    return true;
}

}  // namespace

double vec_dot(const Vec& a, const Vec& b) { return kernels::dot(a.data(), b.data(), a.size()); }
double vec_norm2(const Vec& a) { return std::sqrt(kernels::sum_sq(a.data(), a.size())); }

DenseMatrix DenseMatrix::identity(int n) {
    DenseMatrix m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
}

Vec mat_vec(const DenseMatrix& b, const Vec& x) {
    Vec y(static_cast<std::size_t>(b.rows), 0.0);
    for (int j = 0; j < b.cols; ++j) kernels::axpy(x[j], b.col(j), y.data(), b.rows);
    return y;
}

Vec mat_tvec(const DenseMatrix& b, const Vec& x) {
    Vec y(static_cast<std::size_t>(b.cols), 0.0);
    for (int j = 0; j < b.cols; ++j) y[j] = kernels::dot(b.col(j), x.data(), b.rows);
    return y;
}

SymmetricMatrix::SymmetricMatrix(int dim)
    : dim_(dim), entries_(static_cast<std::size_t>(dim) * dim, 0.0) {
    if (dim <= 0) throw InvalidInputError("SymmetricMatrix: dim must be positive");
}

SymmetricMatrix::SymmetricMatrix(int dim, std::vector<double> row_major_entries)
    : dim_(dim), entries_(std::move(row_major_entries)) {
    if (dim <= 0) throw InvalidInputError("SymmetricMatrix: dim must be positive");
    if (entries_.size() != static_cast<std::size_t>(dim) * dim) {
        throw InvalidInputError("SymmetricMatrix: entry count does not match dim*dim");
    }
    if (!all_finite(entries_)) {
        throw InvalidInputError("SymmetricMatrix: non-finite entry");
    }
    for (int i = 0; i < dim; ++i) {
        for (int j = i + 1; j < dim; ++j) {
            const std::size_t ij = static_cast<std::size_t>(i) * dim + j;
            const std::size_t ji = static_cast<std::size_t>(j) * dim + i;
            const double s = 0.5 * (entries_[ij] + entries_[ji]);
            entries_[ij] = s;
            entries_[ji] = s;
        }
    }
}

double frobenius_norm(const SymmetricMatrix& a) {
    return std::sqrt(kernels::sum_sq(a.data(), a.entries().size()));
}

namespace {

// Householder reduction to tridiagonal form with accumulated transforms,
// followed by implicit-shift QL on the tridiagonal matrix (EISPACK lineage).
// `z` is column-major n x n; holds the symmetric input on entry and the
// orthogonal matrix whose columns are eigenvectors on exit.
struct ColMat {
    int n;
    std::vector<double> a;  // column-major
    explicit ColMat(int n_) : n(n_), a(static_cast<std::size_t>(n_) * n_) {}
    double& operator()(int i, int j) { return a[static_cast<std::size_t>(j) * n + i]; }
    double operator()(int i, int j) const { return a[static_cast<std::size_t>(j) * n + i]; }
    double* col(int j) { return a.data() + static_cast<std::size_t>(j) * n; }
};

void tridiagonalize(ColMat& z, Vec& d, Vec& e) {
    const int n = z.n;
    for (int i = n - 1; i >= 1; --i) {
        const int l = i - 1;
        double h = 0.0;
        double scale = 0.0;
        if (l > 0) {
            for (int k = 0; k <= l; ++k) scale += std::fabs(z(i, k));
            if (scale == 0.0) {
                e[i] = z(i, l);
            } else {
                for (int k = 0; k <= l; ++k) {
                    z(i, k) /= scale;
                    h += z(i, k) * z(i, k);
                }
                double f = z(i, l);
                double g = (f >= 0.0) ? -std::sqrt(h) : std::sqrt(h);
                e[i] = scale * g;
                h -= f * g;
                z(i, l) = f - g;
                f = 0.0;
                for (int j = 0; j <= l; ++j) {
                    z(j, i) = z(i, j) / h;
                    g = 0.0;
                    for (int k = 0; k <= j; ++k) g += z(j, k) * z(i, k);
                    for (int k = j + 1; k <= l; ++k) g += z(k, j) * z(i, k);
                    e[j] = g / h;
                    f += e[j] * z(i, j);
                }
                const double hh = f / (h + h);
                for (int j = 0; j <= l; ++j) {
                    f = z(i, j);
                    g = e[j] - hh * f;
                    e[j] = g;
                    for (int k = 0; k <= j; ++k) z(j, k) -= f * e[k] + g * z(i, k);
                }
            }
        } else {
            e[i] = z(i, l);
        }
        d[i] = h;
    }
    d[0] = 0.0;
    e[0] = 0.0;
    for (int i = 0; i < n; ++i) {
        if (d[i] != 0.0) {
            for (int j = 0; j < i; ++j) {
                double g = 0.0;
                for (int k = 0; k < i; ++k) g += z(i, k) * z(k, j);
                // columns i and j are contiguous
                kernels::axpy(-g, z.col(i), z.col(j), i);
            }
        }
        d[i] = z(i, i);
        z(i, i) = 1.0;
        for (int j = 0; j < i; ++j) {
            z(j, i) = 0.0;
            z(i, j) = 0.0;
        }
    }
}

void tridiag_ql(ColMat& z, Vec& d, Vec& e) {
    const int n = z.n;
    if (n == 1) return;
    for (int i = 1; i < n; ++i) e[i - 1] = e[i];
    e[n - 1] = 0.0;

    const double eps = std::numeric_limits<double>::epsilon();
    double f = 0.0;
    double tst1 = 0.0;
    for (int l = 0; l < n; ++l) {
        tst1 = std::max(tst1, std::fabs(d[l]) + std::fabs(e[l]));
        int m = l;
        while (m < n) {
            if (std::fabs(e[m]) <= eps * tst1) break;
            ++m;
        }
        if (m > l) {
            int iter = 0;
            do {
                if (++iter > 50) {
                    throw ConvergenceError(
                        "symmetric_eigen: QL iteration failed to converge at index " +
                            std::to_string(l),
                        iter, std::fabs(e[l]));
                }
                double g = d[l];
                double p = (d[l + 1] - g) / (2.0 * e[l]);
                double r = std::hypot(p, 1.0);
                if (p < 0.0) r = -r;
                d[l] = e[l] / (p + r);
                d[l + 1] = e[l] * (p + r);
                const double dl1 = d[l + 1];
                double h = g - d[l];
                for (int i = l + 2; i < n; ++i) d[i] -= h;
                f += h;

                p = d[m];
                double c = 1.0;
                double c2 = c;
                double c3 = c;
                const double el1 = e[l + 1];
                double s = 0.0;
                double s2 = 0.0;
                for (int i = m - 1; i >= l; --i) {
                    c3 = c2;
                    c2 = c;
                    s2 = s;
                    g = c * e[i];
                    h = c * p;
                    r = std::hypot(p, e[i]);
                    e[i + 1] = s * r;
                    s = e[i] / r;
                    c = p / r;
                    p = c * d[i] - s * g;
                    d[i + 1] = h + s * (c * g + s * d[i]);
                    // rotate eigenvector columns i and i+1
                    double* zi = z.col(i);
                    double* zi1 = z.col(i + 1);
                    for (int k = 0; k < n; ++k) {
                        h = zi1[k];
                        zi1[k] = s * zi[k] + c * h;
                        zi[k] = c * zi[k] - s * h;
                    }
                }
                p = -s * s2 * c3 * el1 * e[l] / dl1;
                e[l] = s * p;
                d[l] = c * p;
            } while (std::fabs(e[l]) > eps * tst1);
        }
        d[l] += f;
        e[l] = 0.0;
    }
}

// first nonzero component positive; exact-tie eigenvalues sorted by
// eigenvector lexicographic order
void canonicalize(ColMat& z, Vec& d) {
    const int n = z.n;
    for (int j = 0; j < n; ++j) {
        double* c = z.col(j);
        for (int i = 0; i < n; ++i) {
            if (c[i] != 0.0) {
                if (c[i] < 0.0) kernels::scale(c, -1.0, n);
                break;
            }
        }
    }
    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    auto lex_less = [&](int a, int b) {
        const double* ca = z.col(a);
        const double* cb = z.col(b);
        for (int i = 0; i < n; ++i) {
            if (ca[i] != cb[i]) return ca[i] < cb[i];
        }
        return false;
    };
    std::sort(order.begin(), order.end(), [&](int a, int b) {
        if (d[a] != d[b]) return d[a] > d[b];
        return lex_less(a, b);
    });

    Vec d_sorted(n);
    ColMat z_sorted(n);
    for (int j = 0; j < n; ++j) {
        d_sorted[j] = d[order[j]];
        std::copy(z.col(order[j]), z.col(order[j]) + n, z_sorted.col(j));
    }
    d = std::move(d_sorted);
    z = std::move(z_sorted);
}

}  // namespace

EigenDecomposition symmetric_eigen(const SymmetricMatrix& a) {
    const int n = a.dim();
    ColMat z(n);
    // symmetric input: row-major and column-major layouts coincide
    std::copy(a.entries().begin(), a.entries().end(), z.a.begin());
    Vec d(n, 0.0);
    Vec e(n, 0.0);
    tridiagonalize(z, d, e);
    tridiag_ql(z, d, e);
    canonicalize(z, d);

    EigenDecomposition out;
    out.eigenvalues = std::move(d);
    out.eigenvectors = DenseMatrix(n, n);
    out.eigenvectors.a = std::move(z.a);
    return out;
}

double spectral_norm(const SymmetricMatrix& a) {
    if (a.dim() == 1) return std::fabs(a(0, 0));
    const EigenDecomposition eig = symmetric_eigen(a);
    return std::max(std::fabs(eig.eigenvalues.front()), std::fabs(eig.eigenvalues.back()));
}

SymmetricMatrix clip_eigenvalues(const SymmetricMatrix& a, double t) {
    if (!(t > 0.0)) throw InvalidInputError("clip_eigenvalues: t must be positive");
    const int n = a.dim();
    EigenDecomposition eig = symmetric_eigen(a);
    bool inside = true;
    for (double lam : eig.eigenvalues) {
        if (std::fabs(lam) > t) {
            inside = false;
            break;
        }
    }
    if (inside) return a;  // fixed point, return input exactly

    std::vector<double> out(static_cast<std::size_t>(n) * n, 0.0);
    for (int j = 0; j < n; ++j) {
        const double lam = std::clamp(eig.eigenvalues[j], -t, t);
        if (lam == 0.0) continue;
        const double* q = eig.eigenvectors.col(j);
        for (int i = 0; i < n; ++i) {
            kernels::axpy(lam * q[i], q, out.data() + static_cast<std::size_t>(i) * n, n);
        }
    }
    return SymmetricMatrix(n, std::move(out));
}

SubspaceBasis orthonormal_complement_basis(std::span<const Vec> constraints, int n) {
    if (n <= 0) throw InvalidInputError("orthonormal_complement_basis: n must be positive");
    for (const Vec& c : constraints) {
        if (static_cast<int>(c.size()) != n) {
            throw InvalidInputError("orthonormal_complement_basis: constraint length != n");
        }
    }

    SubspaceBasis out;
    out.ambient_dim = n;
    if (constraints.empty()) {
        out.basis = DenseMatrix::identity(n);
        out.constraint_count = 0;
        return out;
    }

    // rank and row-space basis from the k x k Gram of the constraints
    const int k = static_cast<int>(constraints.size());
    std::vector<double> gram(static_cast<std::size_t>(k) * k, 0.0);
    for (int i = 0; i < k; ++i) {
        for (int j = i; j < k; ++j) {
            const double g =
                kernels::dot(constraints[i].data(), constraints[j].data(), n);
            gram[static_cast<std::size_t>(i) * k + j] = g;
            gram[static_cast<std::size_t>(j) * k + i] = g;
        }
    }
    const EigenDecomposition geig = symmetric_eigen(SymmetricMatrix(k, std::move(gram)));
    const double smax = std::sqrt(std::max(geig.eigenvalues[0], 0.0));
    int rank = 0;
    for (int j = 0; j < k; ++j) {
        const double s = std::sqrt(std::max(geig.eigenvalues[j], 0.0));
        if (s > 1e-10 * smax && s > 0.0) ++rank;
    }
    if (rank == 0) {
        out.basis = DenseMatrix::identity(n);
        out.constraint_count = 0;
        return out;
    }

    // projector onto the constraint span
    std::vector<double> proj(static_cast<std::size_t>(n) * n, 0.0);
    for (int j = 0; j < rank; ++j) {
        Vec v(static_cast<std::size_t>(n), 0.0);
        const double* q = geig.eigenvectors.col(j);
        for (int i = 0; i < k; ++i) kernels::axpy(q[i], constraints[i].data(), v.data(), n);
        const double inv = 1.0 / std::sqrt(geig.eigenvalues[j]);
        kernels::scale(v.data(), inv, n);
        for (int i = 0; i < n; ++i) {
            kernels::axpy(v[i], v.data(), proj.data() + static_cast<std::size_t>(i) * n, n);
        }
    }
    const EigenDecomposition peig = symmetric_eigen(SymmetricMatrix(n, std::move(proj)));

    const int m = n - rank;
    out.basis = DenseMatrix(n, m);
    for (int j = 0; j < m; ++j) {
        // eigenvalues are descending: the trailing ones (~0) span the complement
        std::copy(peig.eigenvectors.col(rank + j), peig.eigenvectors.col(rank + j) + n,
                  out.basis.col(j));
    }
    out.constraint_count = rank;
    return out;
}

SymmetricMatrix weighted_sum(std::span<const SymmetricMatrix* const> mats,
                             std::span<const double> coeffs) {
    if (mats.empty()) throw InvalidInputError("weighted_sum: empty matrix list");
    if (mats.size() != coeffs.size()) {
        throw InvalidInputError("weighted_sum: size mismatch");
    }
    const int d = mats[0]->dim();
    std::vector<double> acc(static_cast<std::size_t>(d) * d, 0.0);
    for (std::size_t i = 0; i < mats.size(); ++i) {
        if (coeffs[i] == 0.0) continue;
        kernels::axpy(coeffs[i], mats[i]->data(), acc.data(), acc.size());
    }
    return SymmetricMatrix(d, std::move(acc));
}

SymmetricMatrix scaled(const SymmetricMatrix& a, double s) {
    std::vector<double> e = a.entries();
    kernels::scale(e.data(), s, e.size());
    return SymmetricMatrix(a.dim(), std::move(e));
}

SymmetricMatrix add_scaled(const SymmetricMatrix& a, const SymmetricMatrix& b, double s) {
    if (a.dim() != b.dim()) throw InvalidInputError("add_scaled: dimension mismatch");
    std::vector<double> e = a.entries();
    kernels::axpy(s, b.data(), e.data(), e.size());
    return SymmetricMatrix(a.dim(), std::move(e));
}

double trace_inner(const SymmetricMatrix& a, const SymmetricMatrix& b) {
    // Tr(AB) = sum_ij a_ij b_ij for symmetric matrices
    return kernels::dot(a.data(), b.data(), a.entries().size());
}

Vec adjoint_traces(std::span<const SymmetricMatrix* const> mats, const SymmetricMatrix& w) {
    Vec out(mats.size());
    for (std::size_t i = 0; i < mats.size(); ++i) {
        out[i] = kernels::dot(mats[i]->data(), w.data(), w.entries().size());
    }
    return out;
}

SymmetricMatrix sum_of_squares(std::span<const SymmetricMatrix* const> mats) {
    if (mats.empty()) throw InvalidInputError("sum_of_squares: empty matrix list");
    const int d = mats[0]->dim();
    std::vector<double> acc(static_cast<std::size_t>(d) * d, 0.0);
    for (const SymmetricMatrix* m : mats) {
        const double* a = m->data();
        // acc += A * A, row i of the product accumulated via axpy over rows of A
        for (int i = 0; i < d; ++i) {
            double* out_row = acc.data() + static_cast<std::size_t>(i) * d;
            const double* a_row = a + static_cast<std::size_t>(i) * d;
            for (int k = 0; k < d; ++k) {
                if (a_row[k] == 0.0) continue;
                kernels::axpy(a_row[k], a + static_cast<std::size_t>(k) * d, out_row, d);
            }
        }
    }
    return SymmetricMatrix(d, std::move(acc));
}

Vec sym_matvec(const SymmetricMatrix& a, const Vec& x) {
    const int d = a.dim();
    Vec y(static_cast<std::size_t>(d));
    for (int i = 0; i < d; ++i) {
        y[i] = kernels::dot(a.data() + static_cast<std::size_t>(i) * d, x.data(), d);
    }
    return y;
}

}  // namespace specbal
