#pragma once

// Pair counting r(c; N, M) = #{(a,d) : 1 <= a <= N, d | P(M), ad = c*y^2},
// the table of all its values, the constructive bijections between buckets,
// and M-smooth counting Psi(N, M).

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

#include "qrhunt/arith.hpp"
#include "qrhunt/parallel.hpp"

namespace qrhunt {

/// Counts keyed by squarefree bucket b; sum of counts is N * 2^pi(M).
struct RTable {
  i64 N = 0;
  i64 M = 0;
  std::map<i64, i64> counts;

  i64 total() const {
    i64 t = 0;
    for (const auto& [b, r] : counts) t += r;
    return t;
  }
};

/// A pair (a, d) together with the y certifying a*d = c*y^2 for its bucket.
struct PairWitness {
  i64 a = 0;
  i64 d = 0;
  i64 y = 0;
};

namespace detail {

inline std::vector<i64> divisors_of_primorial(i64 m) {
  std::vector<i64> divs{1};
  for (i64 q : primes_upto(m)) {
    const std::size_t n = divs.size();
    for (std::size_t i = 0; i < n; ++i) divs.push_back(divs[i] * q);
  }
  return divs;
}

inline void require_squarefree_positive(i64 c, const char* who) {
  if (c < 1 || !is_squarefree(c))
    throw std::invalid_argument(std::string(who) + ": c must be squarefree and positive");
}

}  // namespace detail

/// Exact count by exhaustive pair enumeration; the independent oracle for
/// everything built on the table.
inline i64 r_direct(i64 c, i64 N, i64 M) {
  detail::require_squarefree_positive(c, "r_direct");
  if (N < 0 || M < 1) throw std::invalid_argument("r_direct: need N >= 0, M >= 1");
  checked_mul(N, primorial(M));  // overflow guard on the largest product
  i64 count = 0;
  const auto divisors = detail::divisors_of_primorial(M);
  for (i64 a = 1; a <= N; ++a) {
    for (i64 d : divisors) {
      const i64 ad = a * d;
      if (ad % c == 0 && is_perfect_square(static_cast<u64>(ad / c))) ++count;
    }
  }
  return count;
}

/// One pass over all N * 2^pi(M) pairs, bucketed by the squarefree part of
/// a*d. counts[c] equals r_direct(c, N, M) for every key.
inline RTable build_rtable(i64 N, i64 M, const ExecPolicy& pol = {}) {
  if (N < 0 || M < 1) throw std::invalid_argument("build_rtable: need N >= 0, M >= 1");
  RTable table{N, M, {}};
  if (N == 0) return table;
  checked_mul(N, primorial(M));
  const auto divisors = detail::divisors_of_primorial(M);
  auto partials = map_segments<std::map<i64, i64>>(
      0, N, pol, [&](i64 lo, i64 hi) {
        std::map<i64, i64> local;
        for (i64 a = lo + 1; a <= hi; ++a)
          for (i64 d : divisors) ++local[squarefree_decompose(a * d).b];
        return local;
      });
  for (const auto& local : partials)
    for (const auto& [b, r] : local) table.counts[b] += r;
  return table;
}

/// Bucket key of a witness: the c with a*d = c*y^2, or a throw if y^2 does
/// not divide a*d (no such c exists).
inline i64 witness_bucket(const PairWitness& w) {
  if (w.a < 1 || w.d < 1 || w.y < 1)
    throw std::invalid_argument("witness_bucket: a, d, y must be positive");
  const i64 ad = checked_mul(w.a, w.d);
  const i64 yy = checked_mul(w.y, w.y);
  if (ad % yy != 0)
    throw std::invalid_argument("witness_bucket: y^2 does not divide a*d");
  return ad / yy;
}

/// The constructive bijection between bucket 1 and bucket c (c | P(M)):
/// d maps to c*d/gcd(c,d)^2 in both directions; the y cofactor is y/gcd(c,d)
/// towards bucket c and c*y/gcd(c,d) back towards bucket 1. Applying the map
/// twice returns the original witness.
inline PairWitness bijection_pm(i64 c, const PairWitness& w, i64 N, i64 M) {
  detail::require_squarefree_positive(c, "bijection_pm");
  const i64 P = primorial(M);
  if (P % c != 0) throw std::invalid_argument("bijection_pm: c must divide P(M)");
  if (w.a < 1 || w.a > N || w.d < 1 || P % w.d != 0)
    throw std::invalid_argument("bijection_pm: witness out of range");
  const i64 bucket = witness_bucket(w);
  const i64 g = std::gcd(c, w.d);
  const i64 d_out = c * w.d / (g * g);
  if (bucket == 1) return {w.a, d_out, w.y / g};     // into bucket c
  if (bucket == c) return {w.a, d_out, c * w.y / g}; // back into bucket 1
  throw std::invalid_argument("bijection_pm: witness belongs to neither bucket 1 nor bucket c");
}

/// c split as smooth * rough against P(M): the smooth part collects the
/// prime factors <= M by gcd iteration, never by factoring.
struct SmoothRoughSplit {
  i64 smooth = 1;
  i64 rough = 1;
};

inline SmoothRoughSplit split_by_primorial(i64 c, i64 M) {
  detail::require_squarefree_positive(c, "split_by_primorial");
  const i64 P = primorial(M);
  SmoothRoughSplit out;
  i64 m = c;
  for (;;) {
    const i64 g = std::gcd(m, P);
    if (g == 1) break;
    out.smooth *= g;
    m /= g;
  }
  out.rough = m;
  return out;
}

/// The triple (d1, s1, z) of the c-not-dividing-P(M) case, with the split
/// factors kept so the pair can be reconstructed.
struct TripleDecomposition {
  i64 d1 = 0;
  i64 s1 = 0;
  i64 z = 0;
  i64 s = 0;  // smooth part of c
  i64 r = 0;  // rough part of c, > 1
};

inline TripleDecomposition triple_decompose(i64 c, const PairWitness& w, i64 M) {
  const auto [s, r] = split_by_primorial(c, M);
  if (r == 1)
    throw std::invalid_argument("triple_decompose: c divides P(M); wrong case");
  if (witness_bucket(w) != c)
    throw std::invalid_argument("triple_decompose: witness is not in bucket c");
  if (primorial(M) % w.d != 0)
    throw std::invalid_argument("triple_decompose: d must divide P(M)");
  const i64 g = std::gcd(w.d, s);
  const i64 d1 = w.d / g;
  const i64 s1 = s / g;
  if (w.y % d1 != 0)
    throw std::invalid_argument("triple_decompose: y not divisible by d1");
  const i64 z = w.y / d1;
  // a/r = d1*s1*z^2 must hold exactly.
  if (w.a % r != 0 || w.a / r != d1 * s1 * z * z)
    throw std::invalid_argument("triple_decompose: witness fails a = r*s1*d1*z^2");
  return {d1, s1, z, s, r};
}

inline PairWitness reconstruct_pair(const TripleDecomposition& t) {
  const i64 a = t.r * t.s1 * t.d1 * t.z * t.z;
  const i64 d = t.s * t.d1 / t.s1;
  return {a, d, t.z * t.d1};
}

/// Psi(N, M): exact count of M-smooth integers in [1, N], by dividing out
/// each prime q <= M from a residue array.
inline i64 psi_smooth(i64 N, i64 M) {
  if (N < 1 || M < 1) throw std::invalid_argument("psi_smooth: need N >= 1, M >= 1");
  std::vector<i64> rem(static_cast<std::size_t>(N) + 1);
  for (i64 n = 0; n <= N; ++n) rem[static_cast<std::size_t>(n)] = n;
  for (i64 q : primes_upto(std::min(M, N))) {
    for (i64 j = q; j <= N; j += q) {
      i64& v = rem[static_cast<std::size_t>(j)];
      while (v % q == 0) v /= q;
    }
  }
  i64 count = 0;
  for (i64 n = 1; n <= N; ++n)
    if (rem[static_cast<std::size_t>(n)] == 1) ++count;
  return count;
}

/// All witnesses of bucket c: pairs (a, d) with a <= N, d | P(M) and
/// a*d = c*y^2. Enumeration order is ascending (a, d).
inline std::vector<PairWitness> bucket_witnesses(i64 c, i64 N, i64 M) {
  detail::require_squarefree_positive(c, "bucket_witnesses");
  checked_mul(N, primorial(M));
  std::vector<PairWitness> out;
  auto divisors = detail::divisors_of_primorial(M);
  std::sort(divisors.begin(), divisors.end());
  for (i64 a = 1; a <= N; ++a) {
    for (i64 d : divisors) {
      const i64 ad = a * d;
      if (ad % c != 0) continue;
      const u64 q = static_cast<u64>(ad / c);
      const u64 root = isqrt(q);
      if (root * root == q) out.push_back({a, d, static_cast<i64>(root)});
    }
  }
  return out;
}

}  // namespace qrhunt
