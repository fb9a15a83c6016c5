#ifndef OPTDES_PARALLEL_HPP_
#define OPTDES_PARALLEL_HPP_

#include <algorithm>
#include <thread>
#include <vector>

namespace optdes {

// Number of elements per reduction block.  Reductions are computed per
// block and the block partials are combined pairwise in a fixed tree, so
// the floating-point result depends only on this constant, never on the
// thread count.
constexpr int kReductionBlockSize = 1024;

// Runs fn(begin, end) over contiguous chunks of [0, n) on up to
// thread_count threads.  fn must only write to disjoint, preallocated
// per-index storage.
template <class Fn>
void parallel_for(int n, int thread_count, const Fn &fn) {
  if (n <= 0) return;
  const int workers = std::max(1, std::min(thread_count, n));
  if (workers == 1) {
    fn(0, n);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(workers);
  const int chunk = (n + workers - 1) / workers;
  for (int t = 0; t < workers; ++t) {
    const int begin = t * chunk;
    const int end = std::min(n, begin + chunk);
    if (begin >= end) break;
    pool.emplace_back([&fn, begin, end] { fn(begin, end); });
  }
  for (std::thread &th : pool) th.join();
}

// Deterministic reduction over [0, n): block_fn(begin, end) produces the
// partial for one fixed-size block, and combine(a, b) merges two partials.
// Blocks are distributed across threads, but the partials are merged
// pairwise in a fixed order, so the result is bit-identical for every
// thread count.
template <class Partial, class BlockFn, class CombineFn>
Partial reduce_blocks(int n, int thread_count, const BlockFn &block_fn,
                      const CombineFn &combine, Partial identity) {
  if (n <= 0) return identity;
  const int blocks = (n + kReductionBlockSize - 1) / kReductionBlockSize;
  std::vector<Partial> partials(blocks, identity);
  parallel_for(blocks, thread_count, [&](int bbegin, int bend) {
    for (int b = bbegin; b < bend; ++b) {
      const int lo = b * kReductionBlockSize;
      const int hi = std::min(n, lo + kReductionBlockSize);
      partials[b] = block_fn(lo, hi);
    }
  });
  // Pairwise tree combine.
  int count = blocks;
  while (count > 1) {
    const int half = count / 2;
    for (int i = 0; i < half; ++i) {
      partials[i] = combine(partials[2 * i], partials[2 * i + 1]);
    }
    if (count % 2 == 1) partials[half] = partials[count - 1];
    count = half + count % 2;
  }
  return partials[0];
}

}  // namespace optdes

#endif  // OPTDES_PARALLEL_HPP_
