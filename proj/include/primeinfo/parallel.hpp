#pragma once
#include <atomic>
#include <cstdint>
#include <thread>
#include <vector>

namespace primeinfo {

inline unsigned resolve_threads(unsigned hint) {
    if (hint != 0) return hint;
    unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : hw;
}

// Runs fn(i) for i in [0, count) over a fixed block grid. Each result is a
// pure function of its index, so the output vector is identical for every
// thread count; deterministic reductions then just walk it in order.
template <typename T, typename Fn>
std::vector<T> parallel_map(size_t count, unsigned thread_hint, Fn&& fn) {
    std::vector<T> out(count);
    const unsigned threads = resolve_threads(thread_hint);
    if (threads <= 1 || count < 1024) {
        for (size_t i = 0; i < count; ++i) out[i] = fn(i);
        return out;
    }
    constexpr size_t kBlock = 4096;
    std::atomic<size_t> next_block{0};
    const size_t blocks = (count + kBlock - 1) / kBlock;
    auto worker = [&] {
        for (;;) {
            size_t b = next_block.fetch_add(1);
            if (b >= blocks) return;
            size_t begin = b * kBlock;
            size_t end = std::min(begin + kBlock, count);
            for (size_t i = begin; i < end; ++i) out[i] = fn(i);
        }
    };
    std::vector<std::thread> pool;
    unsigned n = std::min<size_t>(threads, blocks);
    pool.reserve(n);
    for (unsigned t = 0; t < n; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
    return out;
}

} // namespace primeinfo
