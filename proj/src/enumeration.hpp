#pragma once

// Internal sign-enumeration machinery shared by the endgame and the
// brute-force oracle. Gray-code walk over the free coordinates with the
// running matrix sum updated by one axpy per step. Work is split into
// fixed-size blocks, each starting from a freshly accumulated state, so the
// selected minimizer does not depend on the thread count.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <vector>

#include "specbal/concentration.hpp"
#include "specbal/kernels.hpp"
#include "specbal/linalg.hpp"
#include "specbal/parallel.hpp"

namespace specbal::detail {

// Exact norm for small dimensions; a deterministic power-method estimate on
// S^2 above that (values only rank candidates; reported discrepancies are
// recomputed exactly by the callers).
inline constexpr int kExactNormDim = 96;

inline double enum_norm_value(const SymmetricMatrix& s) {
    const int d = s.dim();
    if (d <= kExactNormDim) return spectral_norm(s);
    Vec v(static_cast<std::size_t>(d), 1.0 / std::sqrt(static_cast<double>(d)));
    double lam = 0.0;
    for (int it = 0; it < 60; ++it) {
        Vec w = sym_matvec(s, v);
        w = sym_matvec(s, w);
        const double nrm = vec_norm2(w);
        if (nrm == 0.0) return 0.0;
        kernels::scale(w.data(), 1.0 / nrm, w.size());
        v = std::move(w);
        lam = nrm;
    }
    return std::sqrt(lam);
}

// +1 sorts before -1
inline bool sign_lex_less(const Vec& a, const Vec& b) {
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] != b[i]) return a[i] > b[i];
    }
    return false;
}

struct EnumBest {
    double value = 0.0;
    Vec signs;
    bool valid = false;

    void offer(double v, const Vec& s) {
        if (!valid || v < value || (v == value && sign_lex_less(s, signs))) {
            value = v;
            signs = s;
            valid = true;
        }
    }
};

// base holds the fixed coordinates (free ones zeroed); free_idx lists the
// coordinates enumerated over all 2^k sign assignments.
inline EnumBest enumerate_signs(MatrixRefs mats, const Vec& base,
                                const std::vector<int>& free_idx, int threads) {
    const int k = static_cast<int>(free_idx.size());
    const int d = mats[0]->dim();
    const std::uint64_t count = 1ULL << k;
    constexpr std::uint64_t kBlock = 256;
    const std::uint64_t blocks = (count + kBlock - 1) / kBlock;

    std::vector<EnumBest> block_best(blocks);
    parallel_for_blocks(blocks, threads, [&](int, std::size_t lo, std::size_t hi) {
        for (std::size_t b = lo; b < hi; ++b) {
            const std::uint64_t begin = b * kBlock;
            const std::uint64_t end = std::min<std::uint64_t>(count, begin + kBlock);

            Vec x = base;
            const std::uint64_t gray = begin ^ (begin >> 1);
            for (int j = 0; j < k; ++j) {
                x[free_idx[j]] = (gray >> j) & 1ULL ? -1.0 : 1.0;
            }
            std::vector<double> s(static_cast<std::size_t>(d) * d, 0.0);
            for (std::size_t i = 0; i < mats.size(); ++i) {
                if (x[i] != 0.0) kernels::axpy(x[i], mats[i]->data(), s.data(), s.size());
            }

            EnumBest local;
            for (std::uint64_t c = begin; c < end; ++c) {
                if (c != begin) {
                    const int bit = __builtin_ctzll(c);
                    const int idx = free_idx[bit];
                    const double old = x[idx];
                    x[idx] = -old;
                    kernels::axpy(-2.0 * old, mats[idx]->data(), s.data(), s.size());
                }
                local.offer(enum_norm_value(SymmetricMatrix(d, s)), x);
            }
            block_best[b] = std::move(local);
        }
    });

    EnumBest best;
    for (const EnumBest& cand : block_best) {
        if (cand.valid) best.offer(cand.value, cand.signs);
    }
    return best;
}

}  // namespace specbal::detail
