#pragma once

#include <algorithm>
#include <functional>
#include <thread>
#include <vector>

namespace mvca {

inline int resolve_workers(int requested) {
  if (requested > 0) return requested;
  unsigned hc = std::thread::hardware_concurrency();
  return std::clamp<int>(static_cast<int>(hc), 1, 16);
}

// Splits [begin, end) into one contiguous chunk per worker and runs
// fn(chunk_begin, chunk_end) on each.  Results must not depend on the split;
// callers combine per-chunk outputs with order-independent reductions.
inline void parallel_for(int begin, int end, int workers,
                         const std::function<void(int, int)>& fn) {
  int span = end - begin;
  int nw = std::min(resolve_workers(workers), std::max(span, 1));
  if (nw <= 1 || span <= 1) {
    fn(begin, end);
    return;
  }
  std::vector<std::thread> threads;
  threads.reserve(nw);
  int chunk = (span + nw - 1) / nw;
  for (int w = 0; w < nw; ++w) {
    int lo = begin + w * chunk;
    int hi = std::min(lo + chunk, end);
    if (lo >= hi) break;
    threads.emplace_back(fn, lo, hi);
  }
  for (auto& t : threads) t.join();
}

}  // namespace mvca
