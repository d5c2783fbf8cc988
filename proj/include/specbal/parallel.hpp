#pragma once

// Static block partitioning over [0, count). Work items must not depend on
// which thread runs them; reductions belong to the caller and must be
// deterministic (e.g. min by value then lexicographic tie-break).

#include <cstddef>
#include <thread>
#include <vector>

namespace specbal {

template <typename Fn>
void parallel_for_blocks(std::size_t count, int threads, Fn&& fn) {
    if (threads <= 1 || count <= 1) {
        fn(0, std::size_t{0}, count);
        return;
    }
    const std::size_t nt = std::min<std::size_t>(threads, count);
    std::vector<std::thread> pool;
    pool.reserve(nt);
    const std::size_t chunk = (count + nt - 1) / nt;
    for (std::size_t b = 0; b < nt; ++b) {
        const std::size_t lo = b * chunk;
        const std::size_t hi = std::min(count, lo + chunk);
        if (lo >= hi) break;
        pool.emplace_back([&fn, b, lo, hi] { fn(static_cast<int>(b), lo, hi); });
    }
    for (auto& t : pool) t.join();
}

}  // namespace specbal
