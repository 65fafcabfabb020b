#include <numeric>
#include <set>

#include <doctest.h>

#include "oracles.hpp"
#include "qrhunt/counting.hpp"

using namespace qrhunt;

namespace {

std::vector<i64> squarefree_divisors_of_primorial(i64 M) {
  std::vector<i64> divs{1};
  for (i64 q : primes_upto(M)) {
    const std::size_t n = divs.size();
    for (std::size_t i = 0; i < n; ++i) divs.push_back(divs[i] * q);
  }
  std::sort(divs.begin(), divs.end());
  return divs;
}

}  // namespace

TEST_CASE("r_direct: pinned counts") {
  CHECK(r_direct(1, 10, 3) == 7);  // (1,1),(4,1),(9,1),(2,2),(8,2),(3,3),(6,6)
  CHECK(r_direct(6, 10, 3) == 7);
  CHECK(r_direct(5, 10, 3) == 2);  // (5,1),(10,2)
  CHECK(r_direct(1, 0, 3) == 0);
  CHECK_THROWS_AS(r_direct(4, 10, 3), std::invalid_argument);
  CHECK_THROWS_AS(r_direct(0, 10, 3), std::invalid_argument);
  CHECK_THROWS_AS(r_direct(-5, 10, 3), std::invalid_argument);
}

TEST_CASE("build_rtable: buckets agree with r_direct and conserve mass") {
  const auto tiny = build_rtable(1, 2);
  REQUIRE(tiny.counts.size() == 2);
  CHECK(tiny.counts.at(1) == 1);
  CHECK(tiny.counts.at(2) == 1);

  const auto t = build_rtable(10, 3);
  CHECK(t.total() == 40);  // 10 * 2^pi(3)
  CHECK(t.counts.at(1) == 7);

  CHECK(build_rtable(0, 5).counts.empty());

  for (i64 M : {2, 3}) {
    for (i64 N = 1; N <= 40; ++N) {
      const auto table = build_rtable(N, M);
      CHECK(table.total() == N * (i64{1} << prime_count_upto(M)));
      for (const auto& [b, r] : table.counts) {
        CHECK(is_squarefree(b));
        CHECK(r == r_direct(b, N, M));
        CHECK(r > 0);
      }
    }
  }
  // parallel construction merges to the same table
  const auto seq = build_rtable(200, 5);
  const auto par = build_rtable(200, 5, ExecPolicy{8, 16});
  CHECK(seq.counts == par.counts);
}

TEST_CASE("buckets dividing P(M) all have the same count as bucket 1") {
  for (i64 M : {2, 3, 5}) {
    for (i64 N = 1; N <= 60; ++N) {
      const i64 r1 = r_direct(1, N, M);
      for (i64 c : squarefree_divisors_of_primorial(M))
        CHECK(r_direct(c, N, M) == r1);
    }
  }
}

TEST_CASE("bijection_pm: pinned mappings") {
  const auto w1 = bijection_pm(6, {1, 1, 1}, 10, 3);
  CHECK(w1.a == 1);
  CHECK(w1.d == 6);
  CHECK(w1.y == 1);
  const auto w2 = bijection_pm(6, {6, 6, 6}, 10, 3);
  CHECK(w2.a == 6);
  CHECK(w2.d == 1);
  CHECK(w2.y == 1);
  // c = 1 is the identity
  for (const auto& w : bucket_witnesses(1, 20, 3)) {
    const auto mapped = bijection_pm(1, w, 20, 3);
    CHECK(mapped.a == w.a);
    CHECK(mapped.d == w.d);
    CHECK(mapped.y == w.y);
  }
  CHECK_THROWS_AS(bijection_pm(5, {1, 1, 1}, 10, 3), std::invalid_argument);   // 5 does not divide P(3)
  CHECK_THROWS_AS(bijection_pm(6, {2, 3, 5}, 10, 3), std::invalid_argument);   // not a witness
  CHECK_THROWS_AS(bijection_pm(6, {11, 1, 1}, 10, 3), std::invalid_argument);  // a out of range
}

TEST_CASE("bijection_pm: injective into bucket c, double application is identity") {
  for (i64 M : {2, 3, 5}) {
    for (i64 N : {1, 7, 19, 40}) {
      const auto bucket1 = bucket_witnesses(1, N, M);
      CHECK(static_cast<i64>(bucket1.size()) == r_direct(1, N, M));
      for (i64 c : squarefree_divisors_of_primorial(M)) {
        std::set<std::pair<i64, i64>> images;
        for (const auto& w : bucket1) {
          const auto out = bijection_pm(c, w, N, M);
          CHECK(witness_bucket(out) == c);
          CHECK(out.a == w.a);
          CHECK(out.a * out.d == c * out.y * out.y);
          images.insert({out.a, out.d});
          const auto back = bijection_pm(c, out, N, M);
          CHECK(back.a == w.a);
          CHECK(back.d == w.d);
          CHECK(back.y == w.y);
        }
        CHECK(images.size() == bucket1.size());  // injective
        CHECK(static_cast<i64>(images.size()) == r_direct(c, N, M));  // onto
      }
    }
  }
}

TEST_CASE("triple_decompose: pinned triples and reconstruction") {
  const auto t1 = triple_decompose(5, {5, 1, 1}, 3);
  CHECK(t1.d1 == 1);
  CHECK(t1.s1 == 1);
  CHECK(t1.z == 1);
  CHECK(t1.s == 1);
  CHECK(t1.r == 5);
  const auto t2 = triple_decompose(5, {10, 2, 2}, 3);
  CHECK(t2.d1 == 2);
  CHECK(t2.s1 == 1);
  CHECK(t2.z == 1);
  const auto back = reconstruct_pair(t2);
  CHECK(back.a == 10);
  CHECK(back.d == 2);
  CHECK(back.y == 2);
  CHECK_THROWS_AS(triple_decompose(6, {1, 6, 1}, 3), std::invalid_argument);  // 6 | P(3)
  CHECK_THROWS_AS(triple_decompose(5, {1, 1, 1}, 3), std::invalid_argument);  // wrong bucket
}

TEST_CASE("triple_decompose: certificate checks over a grid") {
  for (i64 M : {2, 3}) {
    const i64 P = primorial(M);
    for (i64 N : {10, 25, 40}) {
      for (i64 c = 2; c <= 60; ++c) {
        if (!is_squarefree(c) || P % c == 0) continue;
        const auto split = split_by_primorial(c, M);
        if (split.rough == 1) continue;
        for (const auto& w : bucket_witnesses(c, N, M)) {
          const auto t = triple_decompose(c, w, M);
          CHECK(std::gcd(t.d1, t.s1) == 1);
          CHECK(is_squarefree(t.d1));
          CHECK(is_squarefree(t.s1));
          CHECK(t.d1 * t.s1 * t.z * t.z <= N / t.r);
          const auto back = reconstruct_pair(t);
          CHECK(back.a == w.a);
          CHECK(back.d == w.d);
          CHECK(back.y == w.y);
        }
      }
    }
  }
}

TEST_CASE("counts for c not dividing P(M) are bounded by the divisor sum") {
  for (i64 M : {2, 3, 5, 7}) {
    const i64 P = primorial(M);
    for (i64 N : {1, 13, 60, 120}) {
      const i64 cap = oracles::divisor_sum(N / M);
      for (i64 c = 2; c <= 100; ++c) {
        if (!is_squarefree(c) || P % c == 0) continue;
        CHECK(r_direct(c, N, M) <= cap);
      }
    }
  }
}

TEST_CASE("split_by_primorial: smooth/rough parts") {
  const auto s1 = split_by_primorial(15, 3);
  CHECK(s1.smooth == 3);
  CHECK(s1.rough == 5);
  const auto s2 = split_by_primorial(6, 3);
  CHECK(s2.smooth == 6);
  CHECK(s2.rough == 1);
  const auto s3 = split_by_primorial(77, 3);
  CHECK(s3.smooth == 1);
  CHECK(s3.rough == 77);
}

TEST_CASE("psi_smooth: pinned values and brute-force agreement") {
  CHECK(psi_smooth(10, 3) == 7);  // {1,2,3,4,6,8,9}
  CHECK(psi_smooth(100, 5) == 34);
  CHECK(psi_smooth(50, 13) == 38);
  for (i64 N : {1, 17, 50, 300}) CHECK(psi_smooth(N, N) == N);
  CHECK(psi_smooth(100, 1) == 1);  // only 1 is 1-smooth
  CHECK_THROWS_AS(psi_smooth(0, 3), std::invalid_argument);
  for (i64 M : {2, 3, 5, 7, 13, 21}) {
    for (i64 N : {1, 2, 30, 113, 300}) {
      CHECK(psi_smooth(N, M) == oracles::psi_bruteforce(N, M));
    }
  }
}

TEST_CASE("smooth count lower-bounds the bucket-1 count") {
  for (i64 M : {2, 3, 5, 7}) {
    for (i64 N = 1; N <= 300; ++N) {
      CHECK(r_direct(1, N, M) >= psi_smooth(N, M));
    }
  }
}

TEST_CASE("witness_bucket: validation") {
  CHECK(witness_bucket({2, 8, 4}) == 1);
  CHECK(witness_bucket({5, 1, 1}) == 5);
  CHECK_THROWS_AS(witness_bucket({2, 3, 2}), std::invalid_argument);  // 4 does not divide 6
  CHECK_THROWS_AS(witness_bucket({0, 1, 1}), std::invalid_argument);
  CHECK_THROWS_AS(witness_bucket({1, 1, 0}), std::invalid_argument);
}
