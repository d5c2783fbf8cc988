#include "specbal/kernels.hpp"

namespace specbal::kernels::scalar {

double dot(const double* a, const double* b, std::size_t len) {
    double acc = 0.0;
    for (std::size_t i = 0; i < len; ++i) acc += a[i] * b[i];
    return acc;
}

void axpy(double alpha, const double* x, double* y, std::size_t len) {
    for (std::size_t i = 0; i < len; ++i) y[i] += alpha * x[i];
}

double sum_sq(const double* a, std::size_t len) {
    double acc = 0.0;
    for (std::size_t i = 0; i < len; ++i) acc += a[i] * a[i];
    return acc;
}

void scale(double* a, double alpha, std::size_t len) {
    for (std::size_t i = 0; i < len; ++i) a[i] *= alpha;
}

}  // namespace specbal::kernels::scalar
