#pragma once

#include <atomic>
#include <cstddef>
#include <exception>
#include <functional>
#include <mutex>
#include <thread>
#include <vector>

namespace boolcube {

// 0 means "ask the hardware".
inline unsigned resolve_workers(unsigned requested) {
    if (requested > 0) return requested;
    unsigned hw = std::thread::hardware_concurrency();
    return hw ? hw : 1;
}

// Runs fn(chunk) for chunk in [0, num_chunks) on `workers` threads. Chunks are
// claimed in nondeterministic order; callers that care about determinism must
// write into per-chunk slots and merge in chunk order afterwards. The chunk
// decomposition itself must never depend on the worker count.
inline void parallel_for_chunks(std::size_t num_chunks, unsigned workers,
                                const std::function<void(std::size_t)>& fn) {
    workers = resolve_workers(workers);
    if (workers <= 1 || num_chunks <= 1) {
        for (std::size_t i = 0; i < num_chunks; ++i) fn(i);
        return;
    }
    if (workers > num_chunks) workers = static_cast<unsigned>(num_chunks);

    std::atomic<std::size_t> next{0};
    std::atomic<bool> failed{false};
    std::exception_ptr error;
    std::mutex error_mutex;

    auto body = [&] {
        for (;;) {
            std::size_t i = next.fetch_add(1, std::memory_order_relaxed);
            if (i >= num_chunks || failed.load(std::memory_order_relaxed)) return;
            try {
                fn(i);
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (!error) error = std::current_exception();
                failed.store(true, std::memory_order_relaxed);
                return;
            }
        }
    };

    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned t = 0; t < workers; ++t) pool.emplace_back(body);
    for (auto& th : pool) th.join();
    if (error) std::rethrow_exception(error);
}

}  // namespace boolcube
