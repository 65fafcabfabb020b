#pragma once

// Exact integer arithmetic: Kronecker-Jacobi symbols, squarefree
// decomposition, fundamental discriminants, deterministic primality,
// segmented prime generation and primorials. Everything here is a pure
// function of its arguments and safe to call from any thread.

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace qrhunt {

using i64 = std::int64_t;
using u64 = std::uint64_t;
using u128 = unsigned __int128;

inline i64 checked_mul(i64 a, i64 b) {
  i64 r;
  if (__builtin_mul_overflow(a, b, &r))
    throw std::overflow_error("integer overflow in " + std::to_string(a) +
                              " * " + std::to_string(b));
  return r;
}

inline u64 isqrt(u64 n) {
  if (n == 0) return 0;
  u64 r = static_cast<u64>(std::sqrt(static_cast<double>(n)));
  while (r > 0 && r * r > n) --r;
  while ((r + 1) * (r + 1) <= n) ++r;
  return r;
}

inline bool is_perfect_square(u64 n) {
  u64 r = isqrt(n);
  return r * r == n;
}

/// Kronecker-Jacobi symbol (a|n), total over all integer pairs.
///
/// For odd prime n this is the Legendre symbol. The extension to even,
/// negative and zero n follows the standard rules: (a|0) = 1 iff a = +-1,
/// (a|-1) = -1 iff a < 0, and (a|2) = 0, +1, -1 according as a is even,
/// a = +-1 (mod 8) or a = +-3 (mod 8). Runs in O(log max(|a|,|n|)) by
/// binary reciprocity; never factors.
inline int kronecker(i64 a, i64 n) {
  if (n == 0) return (a == 1 || a == -1) ? 1 : 0;
  if (a % 2 == 0 && n % 2 == 0) return 0;
  int result = 1;
  if (n < 0) {
    n = -n;
    if (a < 0) result = -result;
  }
  int twos = 0;
  while ((n & 1) == 0) {
    n >>= 1;
    ++twos;
  }
  if (twos & 1) {
    int r = static_cast<int>(((a % 8) + 8) % 8);
    if (r == 3 || r == 5) result = -result;
  }
  // Jacobi symbol for odd positive n.
  a %= n;
  if (a < 0) a += n;
  while (a != 0) {
    while ((a & 1) == 0) {
      a >>= 1;
      i64 r = n & 7;
      if (r == 3 || r == 5) result = -result;
    }
    std::swap(a, n);
    if ((a & 3) == 3 && (n & 3) == 3) result = -result;
    a %= n;
  }
  return n == 1 ? result : 0;
}

/// a = b * c^2 with b squarefree (carrying the sign of a) and c >= 1.
struct SquarefreeDecomposition {
  i64 b;
  i64 c;
};

/// Trial division up to the cube root, then a perfect-square check on the
/// remaining cofactor (which has at most two prime factors).
inline SquarefreeDecomposition squarefree_decompose(i64 a) {
  if (a == 0) throw std::invalid_argument("squarefree_decompose: a must be nonzero");
  i64 b = a < 0 ? -1 : 1;
  i64 c = 1;
  u64 m = a < 0 ? -static_cast<u64>(a) : static_cast<u64>(a);
  for (u64 d = 2; d * d * d <= m; ++d) {
    if (m % d != 0) continue;
    int e = 0;
    while (m % d == 0) {
      m /= d;
      ++e;
    }
    if (e & 1) b *= static_cast<i64>(d);
    for (int i = 0; i < e / 2; ++i) c *= static_cast<i64>(d);
  }
  if (m > 1) {
    u64 r = isqrt(m);
    if (r * r == m)
      c *= static_cast<i64>(r);
    else
      b *= static_cast<i64>(m);  // m is prime or a product of two distinct primes
  }
  return {b, c};
}

inline bool is_squarefree(i64 a) {
  return a != 0 && squarefree_decompose(a).c == 1;
}

/// b* for squarefree b: b itself when b = 1 (mod 4), else 4b. Residues of
/// negative b are taken in {0,1,2,3}, so e.g. -3 = 1 (mod 4).
inline i64 fundamental_discriminant(i64 b) {
  if (b == 0 || !is_squarefree(b))
    throw std::invalid_argument("fundamental_discriminant: b must be squarefree and nonzero");
  i64 r = ((b % 4) + 4) % 4;
  return r == 1 ? b : checked_mul(4, b);
}

inline bool is_fundamental_discriminant(i64 d) {
  if (d == 0) return false;
  i64 r = ((d % 4) + 4) % 4;
  if (r == 1) return is_squarefree(d);
  if (d % 4 != 0) return false;
  i64 m = d / 4;
  i64 rm = ((m % 4) + 4) % 4;
  return (rm == 2 || rm == 3) && is_squarefree(m);
}

inline u64 mulmod(u64 a, u64 b, u64 m) {
  return static_cast<u64>(static_cast<u128>(a) * b % m);
}

inline u64 powmod(u64 a, u64 e, u64 m) {
  u64 r = 1 % m;
  a %= m;
  while (e > 0) {
    if (e & 1) r = mulmod(r, a, m);
    a = mulmod(a, a, m);
    e >>= 1;
  }
  return r;
}

/// Deterministic Miller-Rabin. The witness set {2,...,37} is complete for
/// all n < 3.3 * 10^24, which covers the whole 64-bit range.
inline bool is_prime(u64 n) {
  constexpr u64 witnesses[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};
  if (n < 2) return false;
  for (u64 w : witnesses) {
    if (n % w == 0) return n == w;
  }
  const int r = std::countr_zero(n - 1);
  const u64 d = (n - 1) >> r;
  for (u64 w : witnesses) {
    u64 x = powmod(w, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int i = 1; i < r && composite; ++i) {
      x = mulmod(x, x, n);
      if (x == n - 1) composite = false;
    }
    if (composite) return false;
  }
  return true;
}

inline bool is_odd_prime(i64 p) { return p > 2 && is_prime(static_cast<u64>(p)); }

/// Ascending primes q <= n by a plain sieve. Used for base primes and for
/// the small prime lists q <= M.
inline std::vector<i64> primes_upto(i64 n) {
  std::vector<i64> primes;
  if (n < 2) return primes;
  std::vector<std::uint8_t> composite(static_cast<std::size_t>(n) + 1, 0);
  for (i64 i = 2; i <= n; ++i) {
    if (composite[static_cast<std::size_t>(i)]) continue;
    primes.push_back(i);
    for (i64 j = i * i; j <= n; j += i) composite[static_cast<std::size_t>(j)] = 1;
  }
  return primes;
}

inline constexpr i64 kDefaultSegmentSize = i64{1} << 18;

/// Primes in the half-open range (lo, hi].
struct PrimeSegment {
  i64 lo = 0;
  i64 hi = 0;
  std::vector<i64> primes;
};

/// Segmented sieve: memory is O(segment_size + sqrt(hi)), independent of hi.
inline PrimeSegment primes_in_range(i64 lo, i64 hi,
                                    i64 segment_size = kDefaultSegmentSize) {
  if (lo < 0 || lo > hi)
    throw std::invalid_argument("primes_in_range: need 0 <= lo <= hi");
  if (segment_size < 1)
    throw std::invalid_argument("primes_in_range: segment_size must be positive");
  PrimeSegment out{lo, hi, {}};
  if (hi < 2) return out;

  const std::vector<i64> base = primes_upto(static_cast<i64>(isqrt(static_cast<u64>(hi))));
  std::vector<std::uint8_t> mark(static_cast<std::size_t>(segment_size));
  for (i64 from = std::max<i64>(lo + 1, 2); from <= hi; from += segment_size) {
    const i64 to = std::min(from + segment_size - 1, hi);
    std::fill(mark.begin(), mark.begin() + static_cast<std::size_t>(to - from + 1), 0);
    for (i64 q : base) {
      if (q * q > to) break;
      i64 start = std::max(q * q, ((from + q - 1) / q) * q);
      for (i64 j = start; j <= to; j += q) mark[static_cast<std::size_t>(j - from)] = 1;
    }
    for (i64 n = from; n <= to; ++n) {
      if (!mark[static_cast<std::size_t>(n - from)]) out.primes.push_back(n);
    }
    if (to == hi) break;  // avoids from + segment_size overflowing near the type limit
  }
  return out;
}

/// P(M): product of all primes q <= M. Overflow raises; P(52) is the
/// largest primorial representable in 63 bits.
inline i64 primorial(i64 m) {
  if (m < 1) throw std::invalid_argument("primorial: M must be positive");
  i64 p = 1;
  for (i64 q : primes_upto(m)) p = checked_mul(p, q);
  return p;
}

/// pi(M): number of primes <= M.
inline i64 prime_count_upto(i64 m) {
  return static_cast<i64>(primes_upto(std::max<i64>(m, 0)).size());
}

/// Lemma-4-style factorization check: with a = b*c^2, the symbol (a|p)
/// must equal [gcd(c,p)=1] * (b*|p) for every odd prime p.
inline bool character_factorization_check(i64 a, i64 p) {
  if (a == 0) throw std::invalid_argument("character_factorization_check: a must be nonzero");
  if (!is_odd_prime(p))
    throw std::invalid_argument("character_factorization_check: p must be an odd prime");
  const auto [b, c] = squarefree_decompose(a);
  const int chi0 = std::gcd(c, p) == 1 ? 1 : 0;
  const int chib = kronecker(fundamental_discriminant(b), p);
  return chi0 * chib == kronecker(a, p);
}

}  // namespace qrhunt
