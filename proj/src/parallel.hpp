#pragma once

#include <algorithm>
#include <atomic>
#include <exception>
#include <functional>
#include <mutex>
#include <thread>
#include <vector>

namespace nystrompca::detail {

// Chunked parallel loop over [0, count). Each index is processed exactly once
// and writes only to its own slot, so results match the sequential order.
// The first exception thrown by any worker is rethrown on the calling thread.
inline void parallel_for(int count, const std::function<void(int)>& body,
                         int min_parallel = 2) {
    if (count <= 0) return;
    unsigned hw = std::thread::hardware_concurrency();
    int workers = static_cast<int>(std::max(1u, hw));
    if (count < min_parallel || workers <= 1) {
        for (int i = 0; i < count; ++i) body(i);
        return;
    }
    workers = std::min(workers, count);
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(workers));
    std::atomic<int> next{0};
    std::exception_ptr error;
    std::mutex error_mutex;
    for (int w = 0; w < workers; ++w) {
        pool.emplace_back([&] {
            try {
                for (int i = next.fetch_add(1); i < count; i = next.fetch_add(1)) {
                    body(i);
                }
            } catch (...) {
                std::scoped_lock lock(error_mutex);
                if (!error) error = std::current_exception();
                next.store(count); // stop handing out work
            }
        });
    }
    for (auto& t : pool) t.join();
    if (error) std::rethrow_exception(error);
}

} // namespace nystrompca::detail
