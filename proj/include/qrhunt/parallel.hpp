#pragma once

// Deterministic range parallelism. A range (lo, hi] is cut into fixed-size
// segments; workers compute per-segment partials which the caller merges in
// ascending segment order. Because the partition depends only on
// segment_size, results are identical for any thread count.

#include <atomic>
#include <cstdint>
#include <thread>
#include <vector>

#include "qrhunt/arith.hpp"

namespace qrhunt {

struct ExecPolicy {
  int threads = 1;
  i64 segment_size = kDefaultSegmentSize;
};

namespace detail {

inline std::size_t segment_count(i64 lo, i64 hi, i64 seg) {
  if (hi <= lo) return 0;
  return static_cast<std::size_t>((hi - lo + seg - 1) / seg);
}

}  // namespace detail

/// Applies work(seg_lo, seg_hi) to every segment of (lo, hi] and returns the
/// partial results in ascending segment order.
template <typename Result, typename Work>
std::vector<Result> map_segments(i64 lo, i64 hi, const ExecPolicy& pol, Work&& work) {
  const i64 seg = pol.segment_size > 0 ? pol.segment_size : kDefaultSegmentSize;
  const std::size_t nseg = detail::segment_count(lo, hi, seg);
  std::vector<Result> results(nseg);
  auto bounds = [&](std::size_t k) {
    i64 a = lo + static_cast<i64>(k) * seg;
    return std::pair<i64, i64>{a, std::min<i64>(a + seg, hi)};
  };
  const int nthreads = pol.threads > 1 ? pol.threads : 1;
  if (nthreads == 1 || nseg <= 1) {
    for (std::size_t k = 0; k < nseg; ++k) {
      auto [a, b] = bounds(k);
      results[k] = work(a, b);
    }
    return results;
  }
  std::atomic<std::size_t> next{0};
  auto runner = [&]() {
    for (;;) {
      std::size_t k = next.fetch_add(1);
      if (k >= nseg) return;
      auto [a, b] = bounds(k);
      results[k] = work(a, b);
    }
  };
  {
    std::vector<std::jthread> pool;
    const std::size_t nw = std::min<std::size_t>(static_cast<std::size_t>(nthreads), nseg);
    pool.reserve(nw);
    for (std::size_t i = 0; i < nw; ++i) pool.emplace_back(runner);
  }
  return results;
}

/// Like map_segments, but partials are handed to consume() in ascending
/// segment order as they become available; consume returning false stops the
/// scan and cancels segments past the stop point. The sequence of consumed
/// partials is independent of the thread count.
template <typename Result, typename Work, typename Consume>
void scan_segments(i64 lo, i64 hi, const ExecPolicy& pol, Work&& work, Consume&& consume) {
  const i64 seg = pol.segment_size > 0 ? pol.segment_size : kDefaultSegmentSize;
  const std::size_t nseg = detail::segment_count(lo, hi, seg);
  auto bounds = [&](std::size_t k) {
    i64 a = lo + static_cast<i64>(k) * seg;
    return std::pair<i64, i64>{a, std::min<i64>(a + seg, hi)};
  };
  const int nthreads = pol.threads > 1 ? pol.threads : 1;
  if (nthreads == 1 || nseg <= 1) {
    for (std::size_t k = 0; k < nseg; ++k) {
      auto [a, b] = bounds(k);
      if (!consume(work(a, b))) return;
    }
    return;
  }
  std::vector<Result> results(nseg);
  std::vector<std::atomic<bool>> ready(nseg);
  std::atomic<std::size_t> next{0};
  std::atomic<std::size_t> cutoff{nseg};
  auto runner = [&]() {
    for (;;) {
      std::size_t k = next.fetch_add(1);
      if (k >= nseg || k >= cutoff.load(std::memory_order_relaxed)) return;
      auto [a, b] = bounds(k);
      results[k] = work(a, b);
      ready[k].store(true, std::memory_order_release);
    }
  };
  std::vector<std::jthread> pool;
  const std::size_t nw = std::min<std::size_t>(static_cast<std::size_t>(nthreads), nseg);
  pool.reserve(nw);
  for (std::size_t i = 0; i < nw; ++i) pool.emplace_back(runner);
  for (std::size_t k = 0; k < nseg; ++k) {
    while (!ready[k].load(std::memory_order_acquire)) std::this_thread::yield();
    if (!consume(std::move(results[k]))) {
      cutoff.store(k + 1, std::memory_order_relaxed);
      break;
    }
  }
}

}  // namespace qrhunt
