#pragma once

#include <atomic>
#include <functional>
#include <thread>
#include <vector>

namespace bergman {

// Runs fn(0..n-1) on up to `workers` threads. Tasks write into
// index-addressed slots, so results do not depend on scheduling.
inline void parallel_for_indexed(std::size_t n, int workers,
                                 const std::function<void(std::size_t)>& fn) {
    if (n == 0) return;
    const int nw = std::max(1, workers);
    if (nw == 1 || n == 1) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    auto worker = [&]() {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= n) return;
            fn(i);
        }
    };
    std::vector<std::thread> pool;
    const std::size_t count = std::min<std::size_t>(nw, n);
    pool.reserve(count);
    for (std::size_t i = 0; i < count; ++i) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
}

}
