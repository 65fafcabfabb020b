#pragma once

// Experiment drivers: the witness hunt for primes with provably large short
// sums, the S1/S0 ratio experiment, and the residue-density grid statistic.

#include <chrono>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

#include "qrhunt/char_sums.hpp"
#include "qrhunt/counting.hpp"
#include "qrhunt/parallel.hpp"

namespace qrhunt {

struct HuntWitness {
  i64 p = 0;
  i64 w = 0;
  i64 s = 0;
  double s_over_n = 0.0;
};

struct HuntResult {
  SumParams params;
  std::size_t limit = 0;
  std::vector<HuntWitness> witnesses;
  i64 psi = 0;               // Psi(N, M)
  i64 guaranteed_bound = 0;  // 2 Psi(N, M) - N
  double elapsed_seconds = 0.0;
};

/// Scans primes in (x, 2x] in ascending order and collects up to `limit`
/// primes with w_p(M) > 0. Every M-smooth n <= N is then a residue mod p and
/// every other n contributes at least -1, so each witness must satisfy
/// S(p, N) >= 2 Psi(N, M) - N; a violation would be an arithmetic bug and
/// throws. Deterministic for any thread count: segments are consumed in
/// ascending order and later segments are cancelled once the limit fills.
inline HuntResult hunt(i64 x, i64 M, i64 N, std::size_t limit = 10,
                       const ExecPolicy& pol = {}) {
  const auto t0 = std::chrono::steady_clock::now();
  HuntResult result;
  result.params = SumParams::from_counts(x, M, N);
  result.limit = limit;
  if (x < checked_mul(M, M))
    throw std::invalid_argument("hunt: requires x >= M^2");
  if (N >= x) throw std::invalid_argument("hunt: requires N < x");
  result.psi = psi_smooth(N, M);
  result.guaranteed_bound = 2 * result.psi - N;

  const auto small_primes = primes_upto(M);
  const i64 hi = checked_mul(2, x);
  scan_segments<std::vector<HuntWitness>>(
      x, hi, pol,
      [&](i64 lo, i64 up) {
        std::vector<HuntWitness> found;
        for (i64 p : primes_in_range(lo, up, pol.segment_size).primes) {
          const i64 w = detail::weight_from_primes(p, small_primes);
          if (w == 0) continue;
          const i64 s = detail::short_sum_unchecked(p, N, 512);
          found.push_back({p, w, s, static_cast<double>(s) / static_cast<double>(N)});
        }
        return found;
      },
      [&](std::vector<HuntWitness> found) {
        for (auto& wit : found) {
          if (result.witnesses.size() >= limit) break;
          if (wit.s < result.guaranteed_bound)
            throw std::logic_error("hunt: witness violates the smooth-residue bound");
          result.witnesses.push_back(wit);
        }
        return result.witnesses.size() < limit;
      });

  result.elapsed_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return result;
}

struct RatioResult {
  SumParams params;
  double s0 = 0.0;
  double s1 = 0.0;
  std::optional<double> ratio;  // S1/S0, absent when the support is empty
  i64 r1 = 0;                   // r(1; N, M)
  i64 support_count = 0;        // primes in (x, 2x] with positive weight
};

/// S0, S1 by the direct path, their ratio, and the constant r(1) the ratio
/// is expected to track. An empty support (S0 = 0) leaves ratio unset.
inline RatioResult ratio_experiment(i64 x, i64 M, i64 N, const ExecPolicy& pol = {}) {
  RatioResult out;
  out.params = SumParams::from_counts(x, M, N);
  const auto sums = weighted_sums_direct(out.params, pol);
  out.s0 = sums.s0;
  out.s1 = sums.s1;
  out.support_count = static_cast<i64>(sums.records.size());
  if (sums.s0 > 0.0) out.ratio = sums.s1 / sums.s0;
  out.r1 = r_direct(1, N, M);
  return out;
}

struct GridResult {
  i64 p = 0;
  i64 z = 0;
  i64 grid_sum = 0;
  double density = 0.0;  // 1/2 + grid_sum / (2 z^2)
  double implied_A = 0.0;
};

/// Sums (x + y | p) over the z-by-z grid X = {1..z}, Y = {0, z, ..., z(z-1)}
/// both directly and as S(p, z^2); the two must agree exactly since x + y
/// covers 1..z^2 once each. The density is the fraction of grid cells landing
/// on quadratic residues, via chi(n) = (1 + (n|p))/2 (no cell is 0 mod p).
inline GridResult grid_experiment(i64 p, i64 z) {
  detail::require_odd_prime(p, "grid_experiment");
  if (z < 1) throw std::invalid_argument("grid_experiment: z must be positive");
  if (checked_mul(z, z) >= p) throw std::invalid_argument("grid_experiment: requires z^2 < p");
  i64 direct = 0;
  for (i64 gx = 1; gx <= z; ++gx)
    for (i64 gy = 0; gy <= z * (z - 1); gy += z) direct += kronecker(gx + gy, p);
  const i64 via_sum = short_sum(p, z * z);
  if (direct != via_sum)
    throw std::logic_error("grid_experiment: grid sum disagrees with short sum");
  GridResult out;
  out.p = p;
  out.z = z;
  out.grid_sum = direct;
  out.density = 0.5 + static_cast<double>(direct) / (2.0 * static_cast<double>(z) * z);
  out.implied_A = 2.0 * std::log(static_cast<double>(z)) /
                  std::log(std::log(static_cast<double>(p)));
  return out;
}

}  // namespace qrhunt
