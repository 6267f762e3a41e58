#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace goldbach_lab::detail {

inline std::atomic<unsigned>& default_workers_slot() {
    static std::atomic<unsigned> w{1};
    return w;
}

inline unsigned default_workers() { return std::max(1u, default_workers_slot().load()); }

inline void set_default_workers(unsigned w) { default_workers_slot().store(std::max(1u, w)); }

// Runs fn(i) for every i in [0, count) on up to `workers` threads. Chunk
// boundaries are decided by the caller, so results stored per index are
// independent of the worker count; callers merge in index order.
template <class Fn>
void parallel_for(std::size_t count, unsigned workers, Fn&& fn) {
    workers = std::max(1u, std::min<unsigned>(workers, static_cast<unsigned>(std::max<std::size_t>(count, 1))));
    if (workers == 1) {
        for (std::size_t i = 0; i < count; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr error;
    std::mutex error_mutex;
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) {
        pool.emplace_back([&] {
            for (;;) {
                const std::size_t i = next.fetch_add(1);
                if (i >= count) return;
                try {
                    fn(i);
                } catch (...) {
                    std::lock_guard<std::mutex> lock(error_mutex);
                    if (!error) error = std::current_exception();
                    next.store(count);
                    return;
                }
            }
        });
    }
    for (auto& t : pool) t.join();
    if (error) std::rethrow_exception(error);
}

}  // namespace goldbach_lab::detail
