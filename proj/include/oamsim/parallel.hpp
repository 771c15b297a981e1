#pragma once

#include <atomic>
#include <functional>
#include <mutex>
#include <stdexcept>
#include <thread>
#include <vector>

namespace oamsim {

// Static round-robin split of [0, count) over `threads` workers. Work items
// must be independent; results keyed by index stay deterministic regardless
// of thread count.
inline void parallel_for(int threads, std::size_t count,
                         const std::function<void(std::size_t)>& fn) {
    if (threads < 1) throw std::invalid_argument("parallel_for: threads must be >= 1");
    if (threads == 1 || count <= 1) {
        for (std::size_t i = 0; i < count; ++i) fn(i);
        return;
    }
    std::size_t nworkers = std::min<std::size_t>(threads, count);
    std::vector<std::thread> pool;
    std::exception_ptr error;
    std::atomic<bool> failed{false};
    std::mutex err_mutex;
    pool.reserve(nworkers);
    for (std::size_t t = 0; t < nworkers; ++t) {
        pool.emplace_back([&, t] {
            for (std::size_t i = t; i < count; i += nworkers) {
                if (failed.load(std::memory_order_relaxed)) return;
                try {
                    fn(i);
                } catch (...) {
                    std::lock_guard<std::mutex> lock(err_mutex);
                    if (!failed.exchange(true)) error = std::current_exception();
                    return;
                }
            }
        });
    }
    for (auto& th : pool) th.join();
    if (error) std::rethrow_exception(error);
}

} // namespace oamsim
