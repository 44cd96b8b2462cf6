#pragma once

#include <atomic>
#include <thread>
#include <vector>

namespace qpack {

// Runs body(i) for i in [0, n).  Each index must write only to its own slot
// of a caller-owned buffer; the caller reduces in index order afterwards, so
// results are bitwise independent of the worker count.
template <class Body>
void parallel_for(long n, int threads, Body&& body) {
    if (threads <= 1 || n < 2) {
        for (long i = 0; i < n; ++i) body(i);
        return;
    }
    if (threads > n) threads = static_cast<int>(n);
    std::atomic<long> next{0};
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(threads));
    for (int w = 0; w < threads; ++w) {
        pool.emplace_back([&]() {
            for (long i = next.fetch_add(1); i < n; i = next.fetch_add(1)) body(i);
        });
    }
    for (auto& t : pool) t.join();
}

} // namespace qpack
