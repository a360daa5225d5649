#pragma once

#include <algorithm>
#include <cstdlib>
#include <functional>
#include <string>
#include <thread>
#include <vector>

namespace lrh {

/// Worker count: hardware concurrency capped by the LRH_THREADS environment
/// variable (values < 1 are treated as 1).
inline int worker_count() {
    int n = static_cast<int>(std::thread::hardware_concurrency());
    if (n < 1) n = 1;
    if (const char* env = std::getenv("LRH_THREADS")) {
        const int cap = std::atoi(env);
        if (cap >= 1) n = std::min(n, cap);
    }
    return n;
}

/// Static block partition of [0, count) over `workers` threads; worker w gets
/// the w-th contiguous block. The partition depends only on (count, workers),
/// so reductions done in worker order are reproducible for a fixed worker
/// count, and exactly sequential for one worker.
inline void parallel_for_blocks(int count, int workers,
                                const std::function<void(int worker, int begin, int end)>& fn) {
    workers = std::max(1, std::min(workers, count));
    if (workers <= 1 || count <= 1) {
        fn(0, 0, count);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(workers);
    const int base = count / workers, rem = count % workers;
    int begin = 0;
    for (int w = 0; w < workers; ++w) {
        const int len = base + (w < rem ? 1 : 0);
        const int b = begin, e = begin + len;
        begin = e;
        pool.emplace_back([&fn, w, b, e] { fn(w, b, e); });
    }
    for (auto& t : pool) t.join();
}

} // namespace lrh
