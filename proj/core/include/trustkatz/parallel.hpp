#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace trustkatz {

/// Number of worker threads to use when the caller passes 0.
inline unsigned default_thread_count() {
    unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : hw;
}

/// Runs `fn(begin, end)` over consecutive chunks of [0, count). Chunks are handed out
/// dynamically, so `fn` must only write to state owned by its own index range.
/// The first exception thrown by any worker is rethrown on the calling thread.
template <typename Fn>
void parallel_for(std::size_t count, unsigned threads, std::size_t chunk, Fn&& fn) {
    if (count == 0) return;
    if (threads == 0) threads = default_thread_count();
    chunk = std::max<std::size_t>(chunk, 1);
    std::size_t chunks = (count + chunk - 1) / chunk;
    threads = static_cast<unsigned>(std::min<std::size_t>(threads, chunks));
    if (threads <= 1) {
        for (std::size_t b = 0; b < count; b += chunk) fn(b, std::min(count, b + chunk));
        return;
    }

    std::atomic<std::size_t> next{0};
    std::atomic<bool> failed{false};
    std::exception_ptr error;
    std::mutex error_mutex;
    auto worker = [&] {
        while (!failed.load(std::memory_order_relaxed)) {
            std::size_t c = next.fetch_add(1);
            if (c >= chunks) return;
            std::size_t b = c * chunk;
            try {
                fn(b, std::min(count, b + chunk));
            } catch (...) {
                std::lock_guard lock(error_mutex);
                if (!error) error = std::current_exception();
                failed = true;
            }
        }
    };
    {
        std::vector<std::jthread> pool;
        pool.reserve(threads - 1);
        for (unsigned t = 1; t < threads; ++t) pool.emplace_back(worker);
        worker();
    }
    if (error) std::rethrow_exception(error);
}

}  // namespace trustkatz
