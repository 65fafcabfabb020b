#pragma once

// Short character sums S(p, N), the smooth-residue weights w_p(M), and the
// weighted prime sums S0 / S1 over dyadic windows (x, 2x], with two
// independent computation paths for S1.
//
// Floating accumulation order is pinned: within a segment terms are added in
// ascending p, and segment subtotals merge in ascending segment order, so
// S0 / S1 are bitwise identical for any thread count at a fixed segment size.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "qrhunt/arith.hpp"
#include "qrhunt/counting.hpp"
#include "qrhunt/parallel.hpp"

namespace qrhunt {

/// Parameters of a dyadic-window experiment: primes in (x, 2x], weight
/// smoothness bound M, sum length N. A records the exponent N = (ln x)^A,
/// actual or implied; it is informational.
struct SumParams {
  i64 x = 0;
  i64 M = 0;
  i64 N = 0;
  double A = 0.0;

  static SumParams from_counts(i64 x, i64 M, i64 N) {
    validate(x, M, N);
    const double lnln = std::log(std::log(static_cast<double>(x)));
    return {x, M, N, std::log(static_cast<double>(N)) / lnln};
  }

  /// N derived from the exponent: N = round((ln x)^A).
  static SumParams from_exponent(i64 x, i64 M, double A) {
    if (!(A > 0)) throw std::invalid_argument("SumParams: A must be positive");
    const double n = std::pow(std::log(static_cast<double>(x)), A);
    if (!std::isfinite(n) || n >= 1e15)
      throw std::invalid_argument("SumParams: (ln x)^A out of range");
    const i64 N = std::llround(n);
    validate(x, M, N);
    return {x, M, N, A};
  }

 private:
  static void validate(i64 x, i64 M, i64 N) {
    if (x < 3) throw std::invalid_argument("SumParams: x must be >= 3");
    if (M < 1) throw std::invalid_argument("SumParams: M must be >= 1");
    if (N < 1) throw std::invalid_argument("SumParams: N must be >= 1");
    checked_mul(x, 2);
    primorial(M);  // throws when P(M) leaves the integer range
  }
};

/// Per-prime atom of the S0/S1 reductions.
struct WeightedPrimeRecord {
  i64 p = 0;
  i64 w = 0;
  i64 s = 0;
  double logp = 0.0;
};

namespace detail {

inline void require_odd_prime(i64 p, const char* who) {
  if (!is_odd_prime(p))
    throw std::invalid_argument(std::string(who) + ": p must be an odd prime");
}

// w_p(M) with the prime list q <= M already sieved; p must be a prime > M.
inline i64 weight_from_primes(i64 p, const std::vector<i64>& primes_leq_m) {
  i64 w = 1;
  for (i64 q : primes_leq_m) {
    const int sym = kronecker(q, p);
    if (sym < 0) return 0;
    w *= 1 + sym;  // each factor is 2 here
  }
  return w;
}

inline i64 short_sum_unchecked(i64 p, i64 N, i64 bitmap_crossover);

}  // namespace detail

/// S(p, N) term by term; each symbol costs O(log p).
inline i64 short_sum_direct(i64 p, i64 N) {
  detail::require_odd_prime(p, "short_sum_direct");
  i64 s = 0;
  for (i64 n = 1; n <= N; ++n) s += kronecker(n, p);
  return s;
}

/// S(p, N) via a precomputed residue bitmap mod p; worthwhile for long sums.
inline i64 short_sum_bitmap(i64 p, i64 N) {
  detail::require_odd_prime(p, "short_sum_bitmap");
  std::vector<std::uint8_t> residue(static_cast<std::size_t>(p), 0);
  for (i64 k = 1; k <= (p - 1) / 2; ++k)
    residue[mulmod(static_cast<u64>(k), static_cast<u64>(k), static_cast<u64>(p))] = 1;
  i64 s = 0;
  for (i64 n = 1; n <= N; ++n) {
    const i64 m = n % p;
    if (m != 0) s += residue[static_cast<std::size_t>(m)] ? 1 : -1;
  }
  return s;
}

/// S(p, N) = sum of (n|p) for n <= N. Picks the bitmap path when the sum is
/// long and the table is affordable; the two paths cross-check each other in
/// the test suite.
inline constexpr i64 kBitmapTableCap = i64{1} << 26;  // table memory cap, bytes

inline i64 short_sum(i64 p, i64 N, i64 bitmap_crossover = 512) {
  detail::require_odd_prime(p, "short_sum");
  if (N < 1) throw std::invalid_argument("short_sum: N must be positive");
  if (N >= bitmap_crossover && p <= std::min(checked_mul(64, N), kBitmapTableCap))
    return short_sum_bitmap(p, N);
  return short_sum_direct(p, N);
}

inline i64 detail::short_sum_unchecked(i64 p, i64 N, i64 bitmap_crossover) {
  if (N >= bitmap_crossover && p <= std::min(64 * N, kBitmapTableCap))
    return short_sum_bitmap(p, N);
  i64 s = 0;
  for (i64 n = 1; n <= N; ++n) s += kronecker(n, p);
  return s;
}

/// First n* <= N attaining the maximum prefix sum S(p, n*), and that maximum.
struct PrefixMax {
  i64 argmax = 0;
  i64 max = 0;
};

inline PrefixMax prefix_max(i64 p, i64 N) {
  detail::require_odd_prime(p, "prefix_max");
  if (N < 1) throw std::invalid_argument("prefix_max: N must be positive");
  PrefixMax best{1, 1};  // S(p, 1) = (1|p) = 1
  i64 run = 0;
  for (i64 n = 1; n <= N; ++n) {
    run += kronecker(n, p);
    if (run > best.max) best = {n, run};
  }
  return best;
}

/// w_p(M) = prod over primes q <= M of (1 + (q|p)); 0 as soon as one q is a
/// nonresidue, 2^pi(M) when all are residues.
inline i64 weight(i64 p, i64 M) {
  detail::require_odd_prime(p, "weight");
  if (M < 1) throw std::invalid_argument("weight: M must be >= 1");
  if (p <= M) throw std::invalid_argument("weight: requires p > M");
  return detail::weight_from_primes(p, primes_upto(M));
}

/// The same value by the bracket expansion: sum of (d|p) over all divisors
/// d of P(M). Exists as an independent second path for testing.
inline i64 weight_expanded(i64 p, i64 M) {
  detail::require_odd_prime(p, "weight_expanded");
  if (M < 1) throw std::invalid_argument("weight_expanded: M must be >= 1");
  if (p <= M) throw std::invalid_argument("weight_expanded: requires p > M");
  i64 w = 0;
  for (i64 d : detail::divisors_of_primorial(M)) w += kronecker(d, p);
  return w;
}

/// Sum of (b|p) ln p over primes p in (x, 2x], terms in ascending p.
inline double char_prime_sum(i64 b, i64 x, const ExecPolicy& pol = {}) {
  if (b == 0) throw std::invalid_argument("char_prime_sum: b must be nonzero");
  if (x < 3) throw std::invalid_argument("char_prime_sum: x must be >= 3");
  const i64 hi = checked_mul(2, x);
  auto partials = map_segments<double>(x, hi, pol, [&](i64 lo, i64 up) {
    double acc = 0.0;
    for (i64 p : primes_in_range(lo, up, pol.segment_size).primes)
      acc += kronecker(b, p) * std::log(static_cast<double>(p));
    return acc;
  });
  double total = 0.0;
  for (double v : partials) total += v;
  return total;
}

struct WeightedSums {
  double s0 = 0.0;
  double s1 = 0.0;
  std::vector<WeightedPrimeRecord> records;  // only primes with w > 0
};

/// S0 = sum w_p(M) ln p and S1 = sum w_p(M) S(p,N) ln p over (x, 2x],
/// computed directly from the definitions.
inline WeightedSums weighted_sums_direct(const SumParams& params, const ExecPolicy& pol = {},
                                         bool keep_records = true) {
  const i64 hi = checked_mul(2, params.x);
  if (params.x <= params.M)
    throw std::invalid_argument("weighted_sums_direct: requires x > M so that p > M");
  const auto small_primes = primes_upto(params.M);
  struct Partial {
    double s0 = 0.0;
    double s1 = 0.0;
    std::vector<WeightedPrimeRecord> recs;
  };
  auto partials = map_segments<Partial>(params.x, hi, pol, [&](i64 lo, i64 up) {
    Partial part;
    for (i64 p : primes_in_range(lo, up, pol.segment_size).primes) {
      const i64 w = detail::weight_from_primes(p, small_primes);
      if (w == 0) continue;
      const i64 s = detail::short_sum_unchecked(p, params.N, 512);
      const double logp = std::log(static_cast<double>(p));
      part.s0 += static_cast<double>(w) * logp;
      part.s1 += static_cast<double>(w) * static_cast<double>(s) * logp;
      if (keep_records) part.recs.push_back({p, w, s, logp});
    }
    return part;
  });
  WeightedSums out;
  for (auto& part : partials) {
    out.s0 += part.s0;
    out.s1 += part.s1;
    out.records.insert(out.records.end(), part.recs.begin(), part.recs.end());
  }
  return out;
}

/// S1 by the coefficient-table route: sum over table keys b of
/// r(b) * char_prime_sum(b, x). Agrees with the direct path to floating
/// tolerance; the per-prime identity behind it is exact.
inline double weighted_s1_via_rtable(const SumParams& params, const RTable& table,
                                     const ExecPolicy& pol = {}) {
  if (table.N == 0 && table.counts.empty()) return 0.0;
  if (table.N != params.N || table.M != params.M)
    throw std::invalid_argument("weighted_s1_via_rtable: table built for different (N, M)");
  double s1 = 0.0;
  for (const auto& [b, r] : table.counts)
    s1 += static_cast<double>(r) * char_prime_sum(b, params.x, pol);
  return s1;
}

}  // namespace qrhunt
