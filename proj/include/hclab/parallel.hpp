#pragma once

#include <cstddef>
#include <functional>
#include <thread>
#include <vector>

namespace hclab {

// Deterministic work pool: body(i) runs for i in [0, n); results must be
// written to i-indexed slots so the output is independent of scheduling.
inline void parallel_for(unsigned jobs, size_t n, const std::function<void(size_t)>& body) {
    if (jobs <= 1 || n <= 1) {
        for (size_t i = 0; i < n; ++i) body(i);
        return;
    }
    unsigned workers = std::min<unsigned>(jobs, unsigned(n));
    std::vector<std::thread> pool;
    std::atomic<size_t> next{0};
    pool.reserve(workers);
    for (unsigned t = 0; t < workers; ++t)
        pool.emplace_back([&]() {
            for (;;) {
                size_t i = next.fetch_add(1);
                if (i >= n) return;
                body(i);
            }
        });
    for (auto& th : pool) th.join();
}

} // namespace hclab
