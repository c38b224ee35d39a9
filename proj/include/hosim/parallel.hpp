#pragma once

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <exception>
#include <functional>
#include <thread>
#include <vector>

namespace hosim {

// Worker count used by the parallel passes. 0 means hardware concurrency.
// Set once by the CLI; library defaults to single-threaded determinism.
int worker_threads();
void set_worker_threads(int n);

namespace detail {
inline std::atomic<int>& worker_threads_slot() {
    static std::atomic<int> n{1};
    return n;
}
} // namespace detail

inline int worker_threads() {
    int n = detail::worker_threads_slot().load(std::memory_order_relaxed);
    if (n == 0) {
        n = static_cast<int>(std::thread::hardware_concurrency());
        if (n <= 0) n = 1;
    }
    return n;
}

inline void set_worker_threads(int n) {
    detail::worker_threads_slot().store(n < 0 ? 1 : n, std::memory_order_relaxed);
}

// Runs fn(chunk_index, begin, end) over [0, total) split into a fixed chunk
// grid. The grid depends only on `total`, never on the thread count, so any
// chunk-indexed reduction merged in chunk order is reproducible no matter
// how many workers run.
inline void parallel_chunks(std::int64_t total,
                            const std::function<void(std::int64_t, std::int64_t, std::int64_t)>& fn,
                            std::int64_t min_chunk = 1024) {
    if (total <= 0) return;
    const std::int64_t chunk = std::max<std::int64_t>(min_chunk, (total + 511) / 512);
    const std::int64_t n_chunks = (total + chunk - 1) / chunk;
    const int threads = std::min<std::int64_t>(worker_threads(), n_chunks);

    if (threads <= 1) {
        for (std::int64_t c = 0; c < n_chunks; ++c) {
            fn(c, c * chunk, std::min(total, (c + 1) * chunk));
        }
        return;
    }

    std::atomic<std::int64_t> next{0};
    std::exception_ptr error;
    std::atomic<bool> failed{false};
    auto worker = [&]() {
        for (;;) {
            const std::int64_t c = next.fetch_add(1, std::memory_order_relaxed);
            if (c >= n_chunks || failed.load(std::memory_order_relaxed)) return;
            try {
                fn(c, c * chunk, std::min(total, (c + 1) * chunk));
            } catch (...) {
                if (!failed.exchange(true)) error = std::current_exception();
                return;
            }
        }
    };

    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
    if (failed.load()) std::rethrow_exception(error);
}

} // namespace hosim
