#pragma once

#include <exception>
#include <functional>
#include <mutex>
#include <thread>
#include <vector>

#include "frf/errors.hpp"

namespace frf::detail {

// Runs body(i) for i = 0..count-1 over contiguous per-thread chunks.
// Chunk boundaries depend only on (count, n_threads) and every slot is
// written by exactly one thread, so results are independent of scheduling.
inline void parallel_for(std::int64_t count, int n_threads,
                         const std::function<void(std::int64_t)>& body) {
    if (n_threads < 1) throw argument_error("n_threads must be >= 1");
    if (count <= 0) return;
    const int workers = static_cast<int>(std::min<std::int64_t>(n_threads, count));
    if (workers == 1) {
        for (std::int64_t i = 0; i < count; ++i) body(i);
        return;
    }
    std::vector<std::thread> pool;
    std::exception_ptr first_error;
    std::mutex error_mutex;
    for (int w = 0; w < workers; ++w) {
        const std::int64_t lo = count * w / workers;
        const std::int64_t hi = count * (w + 1) / workers;
        pool.emplace_back([&, lo, hi] {
            try {
                for (std::int64_t i = lo; i < hi; ++i) body(i);
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (!first_error) first_error = std::current_exception();
            }
        });
    }
    for (auto& th : pool) th.join();
    if (first_error) std::rethrow_exception(first_error);
}

}  // namespace frf::detail
