#pragma once

#include <algorithm>
#include <cstdint>
#include <thread>
#include <vector>

#include "tightset/common.hpp"

// Deterministic work partitioning: a range is split into one contiguous chunk
// per worker and partial results are merged in chunk order, so every result
// is bit-identical regardless of the worker count.

namespace tightset {

// Sum fn(begin, end) over a partition of [begin, end).
template <class Fn>
std::int64_t parallel_sum(std::int64_t begin, std::int64_t end, int threads, const Fn& fn) {
    check_config(threads >= 1, "worker count must be positive");
    const std::int64_t n = end - begin;
    if (n <= 0) return 0;
    const int workers = static_cast<int>(std::min<std::int64_t>(threads, n));
    if (workers == 1) return fn(begin, end);

    std::vector<std::int64_t> partial(static_cast<std::size_t>(workers), 0);
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(workers));
    const std::int64_t chunk = n / workers, extra = n % workers;
    std::int64_t at = begin;
    for (int w = 0; w < workers; ++w) {
        const std::int64_t b = at, e = b + chunk + (w < extra ? 1 : 0);
        at = e;
        pool.emplace_back([&partial, w, b, e, &fn] { partial[static_cast<std::size_t>(w)] = fn(b, e); });
    }
    for (auto& t : pool) t.join();
    std::int64_t total = 0;
    for (std::int64_t v : partial) total += v;
    return total;
}

// Split [0, n) into one contiguous [begin, end) slice per worker, call
// work(worker_index, begin, end) concurrently, then merge(worker_index) in
// ascending worker order on the calling thread.
template <class Work, class Merge>
void parallel_chunks(std::int64_t n, int threads, const Work& work, const Merge& merge) {
    check_config(threads >= 1, "worker count must be positive");
    if (n <= 0) return;
    const int workers = static_cast<int>(std::min<std::int64_t>(threads, n));
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(workers));
    const std::int64_t chunk = n / workers, extra = n % workers;
    std::int64_t at = 0;
    for (int w = 0; w < workers; ++w) {
        const std::int64_t b = at, e = b + chunk + (w < extra ? 1 : 0);
        at = e;
        if (workers == 1) {
            work(w, b, e);
        } else {
            pool.emplace_back([&work, w, b, e] { work(w, b, e); });
        }
    }
    for (auto& t : pool) t.join();
    for (int w = 0; w < workers; ++w) merge(w);
}

}  // namespace tightset
