#include "specbal/kernels.hpp"

namespace specbal::kernels {

#if defined(__x86_64__) || defined(_M_X64)
namespace avx2 {
double dot(const double*, const double*, std::size_t);
void axpy(double, const double*, double*, std::size_t);
double sum_sq(const double*, std::size_t);
void scale(double*, double, std::size_t);
}  // namespace avx2
#endif

#if defined(__aarch64__)
namespace neon {
double dot(const double*, const double*, std::size_t);
void axpy(double, const double*, double*, std::size_t);
double sum_sq(const double*, std::size_t);
void scale(double*, double, std::size_t);
}  // namespace neon
#endif

namespace {

struct Dispatch {
    double (*dot)(const double*, const double*, std::size_t);
    void (*axpy)(double, const double*, double*, std::size_t);
    double (*sum_sq)(const double*, std::size_t);
    void (*scale)(double*, double, std::size_t);
    const char* name;
};

Dispatch resolve() {
#if defined(__x86_64__) || defined(_M_X64)
    if (__builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma")) {
        return {avx2::dot, avx2::axpy, avx2::sum_sq, avx2::scale, "avx2"};
    }
#endif
#if defined(__aarch64__)
    return {neon::dot, neon::axpy, neon::sum_sq, neon::scale, "neon"};
#endif
    return {scalar::dot, scalar::axpy, scalar::sum_sq, scalar::scale, "scalar"};
}

const Dispatch g_dispatch = resolve();

}  // namespace

double dot(const double* a, const double* b, std::size_t len) { return g_dispatch.dot(a, b, len); }
void axpy(double alpha, const double* x, double* y, std::size_t len) {
    g_dispatch.axpy(alpha, x, y, len);
}
double sum_sq(const double* a, std::size_t len) { return g_dispatch.sum_sq(a, len); }
void scale(double* a, double alpha, std::size_t len) { g_dispatch.scale(a, alpha, len); }
const char* active_backend() { return g_dispatch.name; }

}  // namespace specbal::kernels
