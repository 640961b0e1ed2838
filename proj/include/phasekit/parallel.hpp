#pragma once

#include <atomic>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace phasekit {

/// Worker count: PHASEKIT_THREADS if set and positive, else the hardware
/// concurrency.
int worker_count();

/// Runs fn(block) for every block in [0, blocks). The block structure is
/// fixed by the caller, so results are independent of how many workers
/// execute them; callers reduce per-block slots in block order.
template <typename Fn>
void parallel_blocks(int blocks, Fn&& fn) {
    const int workers = std::min(worker_count(), blocks);
    if (workers <= 1) {
        for (int b = 0; b < blocks; ++b) fn(b);
        return;
    }
    std::atomic<int> next{0};
    std::exception_ptr first_error;
    std::mutex mu;
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (int t = 0; t < workers; ++t) {
        pool.emplace_back([&] {
            try {
                for (int b; (b = next.fetch_add(1)) < blocks;) fn(b);
            } catch (...) {
                std::lock_guard lock(mu);
                if (!first_error) first_error = std::current_exception();
            }
        });
    }
    for (auto& th : pool) th.join();
    if (first_error) std::rethrow_exception(first_error);
}

}  // namespace phasekit
