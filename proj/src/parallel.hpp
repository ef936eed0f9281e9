#pragma once

#include <cstddef>
#include <thread>
#include <vector>

namespace aes::detail {

inline unsigned resolve_threads(unsigned requested) {
    if (requested != 0) return requested;
    unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : hw;
}

/// Runs body(begin, end, worker_id) over contiguous index blocks. Blocks
/// are fixed by (n, n_threads), so per-worker results compose the same
/// way on every run.
template <class Body>
void parallel_blocks(std::size_t n, unsigned n_threads, Body&& body) {
    n_threads = resolve_threads(n_threads);
    if (n_threads == 1 || n < 2 * n_threads) {
        body(std::size_t{0}, n, 0u);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(n_threads);
    std::size_t chunk = (n + n_threads - 1) / n_threads;
    for (unsigned t = 0; t < n_threads; ++t) {
        std::size_t begin = std::size_t(t) * chunk;
        if (begin >= n) break;
        std::size_t end = std::min(n, begin + chunk);
        pool.emplace_back([&body, begin, end, t] { body(begin, end, t); });
    }
    for (auto& th : pool) th.join();
}

}  // namespace aes::detail
