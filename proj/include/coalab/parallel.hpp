#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace coalab {

/// Number of worker threads to use when the caller passes 0.
inline unsigned default_threads() {
    return std::max(1u, std::thread::hardware_concurrency());
}

/// Calls fn(i) for i in [0, count) on up to `threads` workers. Work items are
/// handed out dynamically, so fn must write its result to slot i only; any
/// reduction happens afterwards in index order, which keeps results
/// independent of the thread count.
template <typename Fn>
void parallel_for(std::size_t count, unsigned threads, Fn&& fn) {
    if (threads == 0) threads = default_threads();
    threads = static_cast<unsigned>(std::min<std::size_t>(threads, count));
    if (threads <= 1) {
        for (std::size_t i = 0; i < count; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr error;
    std::mutex error_mutex;
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (unsigned t = 0; t < threads; ++t) {
        pool.emplace_back([&] {
            for (;;) {
                const std::size_t i = next.fetch_add(1);
                if (i >= count) return;
                try {
                    fn(i);
                } catch (...) {
                    std::lock_guard lock(error_mutex);
                    if (!error) error = std::current_exception();
                    next = count;
                    return;
                }
            }
        });
    }
    for (auto& th : pool) th.join();
    if (error) std::rethrow_exception(error);
}

/// Splits `total` work units into fixed blocks of `block_size` (the last one
/// may be short). Block boundaries depend only on the arguments.
struct BlockRange {
    std::size_t begin;
    std::size_t end;
};

inline std::vector<BlockRange> make_blocks(std::size_t total, std::size_t block_size) {
    std::vector<BlockRange> out;
    if (block_size == 0) block_size = 1;
    for (std::size_t b = 0; b < total; b += block_size)
        out.push_back({b, std::min(total, b + block_size)});
    return out;
}

}  // namespace coalab
