#include <cmath>
#include <doctest.h>

#include "oracles.hpp"
#include "qrhunt/char_sums.hpp"

using namespace qrhunt;

TEST_CASE("short_sum: pinned values") {
  CHECK(short_sum(7, 3) == 1);  // (1|7)+(2|7)+(3|7) = 1+1-1
  CHECK(short_sum(23, 10) == 4);
  for (i64 p : {7, 23, 101}) CHECK(short_sum(p, p - 1) == 0);
  CHECK_THROWS_AS(short_sum(9, 5), std::invalid_argument);
  CHECK_THROWS_AS(short_sum(2, 5), std::invalid_argument);
  CHECK_THROWS_AS(short_sum(7, 0), std::invalid_argument);
}

TEST_CASE("short_sum: full-period cancellation for all odd p < 10^4") {
  for (i64 p : primes_upto(9999)) {
    if (p == 2) continue;
    CHECK(short_sum(p, p - 1) == 0);
  }
}

TEST_CASE("short_sum: brute-force agreement and path equivalence") {
  for (i64 p : oracles::primes_trial(2, 200)) {
    if (p == 2) continue;
    for (i64 N : {i64{1}, i64{2}, i64{3}, p / 2, p - 1, p, 2 * p + 3})
      CHECK(short_sum(p, N) == oracles::short_sum_bruteforce(p, N));
  }
  for (i64 p : {521, 1009, 4099, 65537}) {
    for (i64 N : {512, 600, 1000}) {
      CHECK(short_sum_bitmap(p, N) == short_sum_direct(p, N));
      CHECK(short_sum(p, N) == short_sum_direct(p, N));
    }
  }
}

TEST_CASE("prefix_max: first attainment of the running maximum") {
  const auto pm23 = prefix_max(23, 10);  // prefix sums 1,2,3,4,3,4,3,4,5,4
  CHECK(pm23.argmax == 9);
  CHECK(pm23.max == 5);
  const auto pm7 = prefix_max(7, 2);
  CHECK(pm7.argmax == 2);
  CHECK(pm7.max == 2);
  for (i64 p : {3, 11, 997}) {
    const auto pm = prefix_max(p, 1);
    CHECK(pm.argmax == 1);
    CHECK(pm.max == 1);
  }
  // tie broken by the smallest index: prefixes mod 3 are 1,0,0,1
  const auto tie = prefix_max(3, 4);
  CHECK(tie.argmax == 1);
  CHECK(tie.max == 1);
  // consistency with an exhaustive scan
  for (i64 p : {23, 101, 499}) {
    i64 run = 0, best = -1, at = 0;
    for (i64 n = 1; n <= 50; ++n) {
      run += oracles::legendre_bruteforce(n, p);
      if (run > best) {
        best = run;
        at = n;
      }
    }
    const auto pm = prefix_max(p, 50);
    CHECK(pm.argmax == at);
    CHECK(pm.max == best);
  }
}

TEST_CASE("weight: pinned values and domain guards") {
  CHECK(weight(23, 3) == 4);  // 2 and 3 are both residues mod 23
  CHECK(weight(7, 3) == 0);   // (3|7) = -1
  for (i64 p : {3, 7, 23, 1009}) CHECK(weight(p, 1) == 1);
  CHECK_THROWS_AS(weight(7, 7), std::invalid_argument);
  CHECK_THROWS_AS(weight(7, 11), std::invalid_argument);
  CHECK_THROWS_AS(weight(15, 3), std::invalid_argument);
}

TEST_CASE("weight equals weight_expanded; support is all-or-nothing") {
  for (i64 M : {2, 3, 5, 7}) {
    const i64 full = i64{1} << prime_count_upto(M);
    for (i64 p : primes_upto(9999)) {
      if (p <= M || p == 2) continue;
      const i64 w = weight(p, M);
      CHECK(w == weight_expanded(p, M));
      CHECK((w == 0 || w == full));
      bool all_residues = true;
      for (i64 q : primes_upto(M))
        if (kronecker(q, p) != 1) all_residues = false;
      CHECK((w > 0) == all_residues);
    }
  }
}

TEST_CASE("char_prime_sum: direct evaluations over (10, 20]") {
  const double ln11 = std::log(11.0), ln13 = std::log(13.0), ln17 = std::log(17.0),
               ln19 = std::log(19.0);
  CHECK(char_prime_sum(1, 10) == doctest::Approx(ln11 + ln13 + ln17 + ln19).epsilon(1e-12));
  CHECK(char_prime_sum(4, 10) == doctest::Approx(ln11 + ln13 + ln17 + ln19).epsilon(1e-12));
  // (5|11) = +1, (5|13) = -1, (5|17) = -1, (5|19) = +1
  CHECK(char_prime_sum(5, 10) == doctest::Approx(ln11 - ln13 - ln17 + ln19).epsilon(1e-12));
  CHECK_THROWS_AS(char_prime_sum(0, 10), std::invalid_argument);
  CHECK_THROWS_AS(char_prime_sum(5, 2), std::invalid_argument);
}

TEST_CASE("SumParams: construction and validation") {
  const auto p = SumParams::from_counts(1000, 3, 30);
  CHECK(p.A == doctest::Approx(std::log(30.0) / std::log(std::log(1000.0))));
  const auto q = SumParams::from_exponent(1000000, 5, 2.0);
  CHECK(q.N == std::llround(std::pow(std::log(1e6), 2.0)));  // 191
  CHECK(q.N == 191);
  CHECK_THROWS_AS(SumParams::from_counts(2, 3, 5), std::invalid_argument);
  CHECK_THROWS_AS(SumParams::from_counts(100, 0, 5), std::invalid_argument);
  CHECK_THROWS_AS(SumParams::from_counts(100, 3, 0), std::invalid_argument);
  CHECK_THROWS_AS(SumParams::from_counts(100, 53, 5), std::overflow_error);
  CHECK_THROWS_AS(SumParams::from_exponent(100, 3, -1.0), std::invalid_argument);
}

TEST_CASE("weighted_sums_direct: small windows checked by hand") {
  // (10, 20]: none of 11, 13, 17, 19 has both 2 and 3 as residues
  const auto empty = weighted_sums_direct(SumParams::from_counts(10, 3, 5));
  CHECK(empty.s0 == 0.0);
  CHECK(empty.s1 == 0.0);
  CHECK(empty.records.empty());

  // (3, 6] = {5}: w_5(2) = 1 + (2|5) = 0, so the support is empty
  const auto x3 = weighted_sums_direct(SumParams::from_counts(3, 2, 1));
  CHECK(x3.s0 == 0.0);
  CHECK(x3.s1 == 0.0);

  // (4, 8] = {5, 7}: w_5(2) = 0, w_7(2) = 2, S(7, 1) = 1
  const auto x4 = weighted_sums_direct(SumParams::from_counts(4, 2, 1));
  CHECK(x4.s0 == doctest::Approx(2 * std::log(7.0)).epsilon(1e-15));
  CHECK(x4.s1 == x4.s0);
  REQUIRE(x4.records.size() == 1);
  CHECK(x4.records[0].p == 7);
  CHECK(x4.records[0].w == 2);
  CHECK(x4.records[0].s == 1);
}

TEST_CASE("weighted records satisfy their invariants") {
  const auto params = SumParams::from_counts(1000, 5, 40);
  const auto sums = weighted_sums_direct(params);
  const i64 full = i64{1} << prime_count_upto(params.M);
  CHECK(sums.s0 >= 0.0);
  for (const auto& rec : sums.records) {
    CHECK(rec.w == full);  // records keep only positive weights
    CHECK(std::abs(rec.s) <= params.N);
    CHECK(rec.logp == doctest::Approx(std::log(double(rec.p))).epsilon(1e-15));
  }
}

TEST_CASE("per-prime identity: w_p(M) S(p,N) = sum_b r(b) (b|p), exact") {
  // the reduction (ad|p) = (b|p) needs p dividing no pair product, so the
  // identity's domain is p > max(M, N) -- every window (x, 2x] with x >= N
  for (i64 M : {2, 3, 5}) {
    for (i64 N = 1; N <= 50; ++N) {
      const RTable table = build_rtable(N, M);
      for (i64 p : primes_upto(4000)) {
        if (p <= M || p <= N || p == 2) continue;
        i64 rhs = 0;
        for (const auto& [b, r] : table.counts) rhs += r * kronecker(b, p);
        CHECK(weight(p, M) * short_sum(p, N) == rhs);
      }
    }
  }
}

TEST_CASE("S1 via the coefficient table matches the direct path") {
  for (auto [x, M, N] : {std::tuple<i64, i64, i64>{100, 3, 10}, {200, 2, 5}, {1000, 5, 30}}) {
    const auto params = SumParams::from_counts(x, M, N);
    const auto direct = weighted_sums_direct(params);
    const double via_table = weighted_s1_via_rtable(params, build_rtable(N, M));
    if (direct.s1 == 0.0)
      CHECK(std::abs(via_table) <= 1e-9);
    else
      CHECK(via_table == doctest::Approx(direct.s1).epsilon(1e-9));
  }
  // table parameter mismatch is an error; the empty N=0 table sums to zero
  const auto params = SumParams::from_counts(100, 3, 10);
  CHECK_THROWS_AS(weighted_s1_via_rtable(params, build_rtable(9, 3)), std::invalid_argument);
  CHECK_THROWS_AS(weighted_s1_via_rtable(params, build_rtable(10, 2)), std::invalid_argument);
  CHECK(weighted_s1_via_rtable(params, build_rtable(0, 3)) == 0.0);
}

TEST_CASE("weighted sums are bitwise identical across thread counts") {
  const auto params = SumParams::from_counts(5000, 3, 25);
  const ExecPolicy one{1, 512};    // small segments force many merges
  const ExecPolicy four{4, 512};
  const ExecPolicy eight{8, 512};
  const auto a = weighted_sums_direct(params, one);
  const auto b = weighted_sums_direct(params, four);
  const auto c = weighted_sums_direct(params, eight);
  CHECK(a.s0 == b.s0);
  CHECK(a.s1 == b.s1);
  CHECK(a.s0 == c.s0);
  CHECK(a.s1 == c.s1);
  REQUIRE(a.records.size() == c.records.size());
  for (std::size_t i = 0; i < a.records.size(); ++i) {
    CHECK(a.records[i].p == c.records[i].p);
    CHECK(a.records[i].s == c.records[i].s);
  }
  const double s115 = char_prime_sum(15, 5000, one);
  CHECK(s115 == char_prime_sum(15, 5000, four));
  CHECK(s115 == char_prime_sum(15, 5000, eight));
}
