#pragma once

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <functional>
#include <thread>
#include <vector>

namespace expsum {

/// Runs fn(block_index, begin, end) over [0, n) in fixed-size blocks. Block
/// boundaries depend only on n and block_size, never on the thread count, so
/// combining per-block partial results in block order yields bit-identical
/// reductions however the blocks were scheduled. fn must not throw.
inline void for_blocks(std::uint64_t n, std::uint64_t block_size,
                       const std::function<void(std::size_t, std::uint64_t, std::uint64_t)>& fn,
                       unsigned max_threads = 0) {
    if (n == 0) return;
    if (block_size == 0) block_size = 1;
    std::uint64_t nblocks = (n + block_size - 1) / block_size;
    unsigned hw = max_threads ? max_threads : std::thread::hardware_concurrency();
    if (hw == 0) hw = 1;
    unsigned nthreads = static_cast<unsigned>(std::min<std::uint64_t>(hw, nblocks));
    if (nthreads <= 1) {
        for (std::uint64_t bi = 0; bi < nblocks; ++bi) {
            fn(bi, bi * block_size, std::min<std::uint64_t>(n, (bi + 1) * block_size));
        }
        return;
    }
    std::atomic<std::uint64_t> next{0};
    auto worker = [&] {
        for (;;) {
            std::uint64_t bi = next.fetch_add(1);
            if (bi >= nblocks) return;
            fn(bi, bi * block_size, std::min<std::uint64_t>(n, (bi + 1) * block_size));
        }
    };
    std::vector<std::thread> pool;
    pool.reserve(nthreads);
    for (unsigned t = 0; t < nthreads; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
}

}  // namespace expsum
