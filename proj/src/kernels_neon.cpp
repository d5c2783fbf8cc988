// NEON kernel variants for AArch64. Baseline on that architecture, so no
// runtime feature check is needed beyond the compile-time guard.

#include "specbal/kernels.hpp"

#if defined(__aarch64__)
#include <arm_neon.h>

namespace specbal::kernels::neon {

double dot(const double* a, const double* b, std::size_t len) {
    float64x2_t acc0 = vdupq_n_f64(0.0);
    float64x2_t acc1 = vdupq_n_f64(0.0);
    std::size_t i = 0;
    for (; i + 4 <= len; i += 4) {
        acc0 = vfmaq_f64(acc0, vld1q_f64(a + i), vld1q_f64(b + i));
        acc1 = vfmaq_f64(acc1, vld1q_f64(a + i + 2), vld1q_f64(b + i + 2));
    }
    for (; i + 2 <= len; i += 2) {
        acc0 = vfmaq_f64(acc0, vld1q_f64(a + i), vld1q_f64(b + i));
    }
    double out = vaddvq_f64(vaddq_f64(acc0, acc1));
    for (; i < len; ++i) out += a[i] * b[i];
    return out;
}

void axpy(double alpha, const double* x, double* y, std::size_t len) {
    const float64x2_t va = vdupq_n_f64(alpha);
    std::size_t i = 0;
    for (; i + 2 <= len; i += 2) {
        vst1q_f64(y + i, vfmaq_f64(vld1q_f64(y + i), va, vld1q_f64(x + i)));
    }
    for (; i < len; ++i) y[i] += alpha * x[i];
}

double sum_sq(const double* a, std::size_t len) {
    float64x2_t acc = vdupq_n_f64(0.0);
    std::size_t i = 0;
    for (; i + 2 <= len; i += 2) {
        const float64x2_t v = vld1q_f64(a + i);
        acc = vfmaq_f64(acc, v, v);
    }
    double out = vaddvq_f64(acc);
    for (; i < len; ++i) out += a[i] * a[i];
    return out;
}

void scale(double* a, double alpha, std::size_t len) {
    const float64x2_t va = vdupq_n_f64(alpha);
    std::size_t i = 0;
    for (; i + 2 <= len; i += 2) {
        vst1q_f64(a + i, vmulq_f64(va, vld1q_f64(a + i)));
    }
    for (; i < len; ++i) a[i] *= alpha;
}

}  // namespace specbal::kernels::neon

#endif  // __aarch64__
