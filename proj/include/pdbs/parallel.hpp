#ifndef PDBS_PARALLEL_HPP
#define PDBS_PARALLEL_HPP

#include <atomic>
#include <cstdint>
#include <thread>
#include <vector>

namespace pdbs {

// Deterministic work splitting: jobs are cut into a fixed chunk grid that
// depends only on the job size, never on the thread count. Workers claim
// chunks and write chunk-local results; the caller reduces chunk slots in
// index order. Totals are therefore bit-identical for any --threads value,
// including floating-point reductions.

inline int chunk_grid(uint64_t n_items) {
    const uint64_t kMaxChunks = 256;
    if (n_items == 0) return 0;
    return static_cast<int>(n_items < kMaxChunks ? n_items : kMaxChunks);
}

// fn(chunk_index, begin, end) must only touch state owned by chunk_index.
template <class Fn>
void run_chunked(uint64_t n_items, int threads, Fn&& fn) {
    int chunks = chunk_grid(n_items);
    if (chunks == 0) return;
    auto bounds = [&](int c) {
        uint64_t lo = n_items * static_cast<uint64_t>(c) / chunks;
        uint64_t hi = n_items * static_cast<uint64_t>(c + 1) / chunks;
        return std::pair<uint64_t, uint64_t>{lo, hi};
    };
    if (threads <= 1 || chunks == 1) {
        for (int c = 0; c < chunks; ++c) {
            auto [lo, hi] = bounds(c);
            fn(c, lo, hi);
        }
        return;
    }
    std::atomic<int> next{0};
    auto worker = [&] {
        for (;;) {
            int c = next.fetch_add(1);
            if (c >= chunks) return;
            auto [lo, hi] = bounds(c);
            fn(c, lo, hi);
        }
    };
    int n_workers = std::min(threads, chunks);
    std::vector<std::thread> pool;
    pool.reserve(n_workers - 1);
    for (int t = 1; t < n_workers; ++t) pool.emplace_back(worker);
    worker();
    for (auto& th : pool) th.join();
}

// Compensated accumulator for chunk-local sums.
struct KahanSum {
    double sum = 0;
    double carry = 0;
    void add(double x) {
        double y = x - carry;
        double t = sum + y;
        carry = (t - sum) - y;
        sum = t;
    }
};

}  // namespace pdbs

#endif
