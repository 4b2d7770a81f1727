#pragma once

#include <atomic>
#include <cstdint>
#include <cstdlib>
#include <functional>
#include <thread>
#include <vector>

namespace bbng {

// Parallelism degree: explicit request > BBNCG_THREADS > hardware concurrency.
inline int resolve_threads(int requested = 0) {
    if (requested > 0) return requested;
    if (const char* env = std::getenv("BBNCG_THREADS")) {
        int v = std::atoi(env);
        if (v > 0) return v;
    }
    unsigned hw = std::thread::hardware_concurrency();
    return hw > 0 ? static_cast<int>(hw) : 1;
}

// Runs fn(begin, end) over [0, count) in blocks. Blocks are handed out
// dynamically; callers that need deterministic output must write results
// keyed by index, not by arrival order.
inline void parallel_blocks(std::int64_t count,
                            const std::function<void(std::int64_t, std::int64_t)>& fn,
                            int threads = 0, std::int64_t block = 0) {
    if (count <= 0) return;
    int t = resolve_threads(threads);
    if (block <= 0) block = std::max<std::int64_t>(1, count / (8 * t));
    // Tiny workloads never amortize a thread spawn.
    if (t <= 1 || count <= block || count < 64) {
        fn(0, count);
        return;
    }
    std::atomic<std::int64_t> next{0};
    auto worker = [&] {
        for (;;) {
            std::int64_t begin = next.fetch_add(block);
            if (begin >= count) return;
            fn(begin, std::min(begin + block, count));
        }
    };
    std::vector<std::thread> pool;
    pool.reserve(t);
    for (int i = 0; i < t; ++i) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
}

} // namespace bbng
