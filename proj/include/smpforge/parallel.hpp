#pragma once

// Deterministic path-parallelism.  Work is split into fixed-size blocks that
// do not depend on the worker count; each block produces its own partial
// result and partials are combined in block order.  Together with the
// counter-based RNG this makes every Monte Carlo output bit-identical across
// thread counts and schedules.

#include "core.hpp"

#include <cstdlib>
#include <functional>
#include <thread>
#include <vector>

namespace smpforge {

inline int worker_count() {
    unsigned hw = std::thread::hardware_concurrency();
    if (hw == 0) hw = 1;
    if (const char* env = std::getenv("SMP_FORGE_THREADS")) {
        const long cap = std::strtol(env, nullptr, 10);
        if (cap >= 1 && static_cast<unsigned>(cap) < hw) hw = static_cast<unsigned>(cap);
        if (cap >= 1 && static_cast<unsigned>(cap) > hw) hw = static_cast<unsigned>(cap);
    }
    return static_cast<int>(hw);
}

constexpr std::int64_t kParallelBlock = 4096;

// Runs body(begin, end, block_index) over [0, count) in fixed blocks.
// n_blocks is independent of the thread count.
template <typename Body>
void for_each_block(std::int64_t count, Body&& body) {
    if (count <= 0) return;
    const std::int64_t n_blocks = (count + kParallelBlock - 1) / kParallelBlock;
    const int workers = std::min<std::int64_t>(worker_count(), n_blocks);
    if (workers <= 1) {
        for (std::int64_t b = 0; b < n_blocks; ++b) {
            const std::int64_t lo = b * kParallelBlock;
            const std::int64_t hi = std::min(count, lo + kParallelBlock);
            body(lo, hi, b);
        }
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(workers));
    for (int w = 0; w < workers; ++w) {
        pool.emplace_back([&, w]() {
            for (std::int64_t b = w; b < n_blocks; b += workers) {
                const std::int64_t lo = b * kParallelBlock;
                const std::int64_t hi = std::min(count, lo + kParallelBlock);
                body(lo, hi, b);
            }
        });
    }
    for (auto& t : pool) t.join();
}

// Map-reduce over [0, count): each block owns an Acc, filled by
// fill(acc, index); partials merge in block order via Acc::merge.
template <typename Acc, typename Fill>
Acc block_reduce(std::int64_t count, const Acc& init, Fill&& fill) {
    if (count <= 0) return init;
    const std::int64_t n_blocks = (count + kParallelBlock - 1) / kParallelBlock;
    std::vector<Acc> partials(static_cast<std::size_t>(n_blocks), init);
    for_each_block(count, [&](std::int64_t lo, std::int64_t hi, std::int64_t b) {
        Acc& acc = partials[static_cast<std::size_t>(b)];
        for (std::int64_t i = lo; i < hi; ++i) fill(acc, i);
    });
    Acc total = init;
    for (const Acc& p : partials) total.merge(p);
    return total;
}

} // namespace smpforge
