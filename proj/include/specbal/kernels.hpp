#pragma once

// Data-parallel double-precision kernels used by the dense linear algebra
// layer. Every kernel has a scalar reference implementation and, on x86-64
// with AVX2/FMA or on AArch64 with NEON, a vectorized variant. The active
// variant is selected once at startup from CPU features; kernels::scalar::*
// stay available so tests can check the vector paths against the reference.
//
// Vector variants use multiple accumulators, so floating-point results may
// differ from the scalar path in the last bits. Selection is fixed for the
// lifetime of the process, which keeps repeated runs on the same machine and
// build bit-identical.

#include <cstddef>

namespace specbal::kernels {

// sum_i a[i] * b[i]
double dot(const double* a, const double* b, std::size_t len);

// y[i] += alpha * x[i]
void axpy(double alpha, const double* x, double* y, std::size_t len);

// sum_i a[i]^2
double sum_sq(const double* a, std::size_t len);

// a[i] *= alpha
void scale(double* a, double alpha, std::size_t len);

// Name of the dispatched variant: "avx2", "neon" or "scalar".
const char* active_backend();

namespace scalar {
double dot(const double* a, const double* b, std::size_t len);
void axpy(double alpha, const double* x, double* y, std::size_t len);
double sum_sq(const double* a, std::size_t len);
void scale(double* a, double alpha, std::size_t len);
}  // namespace scalar

}  // namespace specbal::kernels
