#pragma once

#include <cstdlib>
#include <thread>
#include <vector>

namespace polyoracle {

/// Worker-pool width: POLYORACLE_THREADS when set, hardware concurrency
/// otherwise, never less than 1.
inline unsigned worker_count() {
    if (const char* env = std::getenv("POLYORACLE_THREADS")) {
        const long v = std::strtol(env, nullptr, 10);
        if (v >= 1) return static_cast<unsigned>(v);
        return 1;
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw ? hw : 1;
}

/// Static block partition of [0, n) across the worker pool. body(begin, end)
/// must only touch disjoint state per range.
template <typename F>
void parallel_for(std::ptrdiff_t n, F&& body) {
    const unsigned workers = worker_count();
    if (n <= 0) return;
    if (workers <= 1 || n < 2) {
        body(std::ptrdiff_t(0), n);
        return;
    }
    const std::ptrdiff_t nthreads = std::min<std::ptrdiff_t>(workers, n);
    const std::ptrdiff_t chunk = (n + nthreads - 1) / nthreads;
    std::vector<std::thread> pool;
    pool.reserve(nthreads);
    for (std::ptrdiff_t t = 0; t < nthreads; ++t) {
        const std::ptrdiff_t lo = t * chunk;
        const std::ptrdiff_t hi = std::min(n, lo + chunk);
        if (lo >= hi) break;
        pool.emplace_back([&body, lo, hi] { body(lo, hi); });
    }
    for (auto& th : pool) th.join();
}

}  // namespace polyoracle
