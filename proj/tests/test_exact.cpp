#include <doctest.h>

#include <algorithm>
#include <random>
#include <set>

#include "spinchain/chain_model.hpp"
#include "spinchain/constructions.hpp"
#include "spinchain/error.hpp"
#include "spinchain/exact.hpp"
#include "spinchain/spectral.hpp"
#include "support.hpp"

using namespace spinchain;

namespace {

BigRational q(long p, long d) {
  BigRational r(p, d);
  r.canonicalize();
  return r;
}

// Random strictly decreasing spectrum 0 > ... with odd gaps in [1, 2*max_half+1].
std::vector<BigInt> odd_gap_spectrum(std::mt19937_64& g, std::size_t n, long max_half = 6) {
  std::uniform_int_distribution<long> d(0, max_half);
  std::vector<BigInt> s{0};
  for (std::size_t i = 1; i < n; ++i) s.push_back(s.back() - (2 * d(g) + 1));
  return s;
}

// Smallest L with L * w odd for every w, by direct search.
std::optional<long> brute_multiplier(long N, long M, long limit) {
  std::vector<BigRational> w;
  for (long n = 1; n <= M; ++n) w.push_back(binomial_overlap(N, n));
  for (long L = 1; L <= limit; ++L) {
    bool ok = true;
    for (long n = 1; n <= M && ok; ++n) {
      const BigRational x = BigRational(L) * w[n - 1];
      ok = x.get_den() == 1 && mpz_odd_p(x.get_num_mpz_t());
    }
    if (ok) return L;
  }
  return std::nullopt;
}

}  // namespace

TEST_CASE("binomial coefficients") {
  CHECK(binomial(6, 3) == 20);
  CHECK(binomial(6, -1) == 0);
  CHECK(binomial(6, 7) == 0);
  CHECK(binomial(0, 0) == 1);
}

TEST_CASE("exact overlaps of small spectra") {
  const std::vector<BigInt> two{0, -2};
  const auto t = exact_overlaps(two);
  CHECK(t.overlaps[0] == q(1, 2));
  CHECK(t.overlaps[1] == q(1, 2));
  CHECK(t.normalizer == 1);  // positive with decreasing order
  CHECK(t.uniform_null_vector);

  const std::vector<BigInt> linear{0, -1, -2, -3};
  const auto lt = exact_overlaps(linear);
  CHECK(lt.overlaps[0] == q(1, 8));
  CHECK_FALSE(lt.uniform_null_vector);

  const std::vector<BigInt> dup{0, -1, -1};
  CHECK_THROWS_AS(exact_overlaps(dup), ValidationError);
  const std::vector<BigInt> unordered{0, -3, -1};
  CHECK_THROWS_AS(exact_overlaps(unordered), NotRealizableError);
}

TEST_CASE("exact overlaps sum to one and keep positive weights") {
  auto g = oracle::rng(30);
  for (int rep = 0; rep < 200; ++rep) {
    const auto s = odd_gap_spectrum(g, 2 + rep % 12);
    const auto t = exact_overlaps(s);
    BigRational total = 0;
    for (std::size_t n = 0; n < s.size(); ++n) {
      total += t.overlaps[n];
      CHECK(t.overlaps[n] > 0);
      BigInt prod = 1;
      for (std::size_t m = 0; m < s.size(); ++m)
        if (m != n) prod *= s[n] - s[m];
      BigRational expect = t.normalizer / BigRational(prod);
      if (n % 2 == 1) expect = -expect;
      CHECK(t.overlaps[n] == expect);
    }
    CHECK(total == 1);
    CHECK(t.normalizer > 0);
  }
}

TEST_CASE("exact overlaps agree with floating eigenvectors of hahn chains") {
  for (long N = 2; N <= 12; ++N) {
    const auto es = eigendecompose(build_single_excitation_matrix(hahn_chain(N)));
    const auto t = exact_overlaps(hahn_spectrum(N));
    for (long n = 0; n < N; ++n) {
      const double c = es.component(n, 0);
      CHECK(std::fabs(c * c - t.overlaps[n].get_d()) < 1e-9);
    }
    const auto w = hahn_overlaps(N);
    for (long n = 0; n < N; ++n) CHECK(w[n] == t.overlaps[n]);
  }
}

TEST_CASE("hahn N=4 null overlap has at least two factors of two in its denominator") {
  const auto t = exact_overlaps(hahn_spectrum(4));
  CHECK(two_adic_valuation(t.overlaps[0]) <= -2);
}

TEST_CASE("two-adic valuation") {
  CHECK(two_adic_valuation(q(1, 4)) == -2);
  CHECK(two_adic_valuation(q(3, 8)) == -3);
  CHECK(two_adic_valuation(BigRational(6)) == 1);
  CHECK(two_adic_valuation(BigInt(-40)) == 3);
  CHECK_THROWS_AS(two_adic_valuation(BigRational(0)), ValidationError);
}

TEST_CASE("odd-gap null overlaps are too 2-adically small") {
  // Null-overlap valuation bound over random odd-gap spectra.
  auto g = oracle::rng(31);
  for (long N = 3; N <= 16; ++N) {
    const long bound = -((N + 2) / 2);  // -ceil((N+1)/2)
    for (int rep = 0; rep < 60; ++rep) {
      const auto s = odd_gap_spectrum(g, static_cast<std::size_t>(N), 8);
      const auto t = exact_overlaps(s);
      CHECK(two_adic_valuation(t.overlaps[0]) <= bound);
    }
  }
}

TEST_CASE("verify_no_pst") {
  const std::vector<BigInt> two{0, -1};
  CHECK_FALSE(verify_no_pst(two).impossible());
  const std::vector<BigInt> four{0, -3, -4, -5};
  const auto v = verify_no_pst(four);
  CHECK(v.impossible());
  CHECK(v.witness.at("null_overlap") == "1/32");
  CHECK(v.witness.at("required") == "1/4");
  const std::vector<BigInt> even_gap{0, -2, -5};
  CHECK_THROWS_AS(verify_no_pst(even_gap), ValidationError);
  const std::vector<BigInt> no_zero{1, 0, -1};
  CHECK_THROWS_AS(verify_no_pst(no_zero), ValidationError);
}

TEST_CASE("four-site closed form") {
  CHECK(n4_overlap_formula(1, 2, 2) == q(1, 32));
  auto g = oracle::rng(32);
  std::uniform_int_distribution<long> d(0, 60);
  int checked = 0;
  while (checked < 100) {
    long a = d(g), b = d(g), c = d(g);
    if (!(a < b && b <= c)) continue;
    const std::vector<BigInt> s{0, -(2 * a + 1), -2 * b, -(2 * c + 1)};
    const auto f = n4_overlap_formula(a, b, c);
    CHECK(f == exact_overlaps(s).overlaps[0]);
    CHECK(two_adic_valuation(f) <= -3);
    ++checked;
  }
  CHECK_THROWS_AS(n4_overlap_formula(0, 1, 0), ValidationError);
}

TEST_CASE("four-site exhaustive sweep is impossible throughout") {
  long count = 0;
  for (long a = 0; a <= 50; ++a)
    for (long b = a + 1; b <= 50; ++b)
      for (long c = b; c <= 50; ++c) {
        const std::vector<BigInt> s{0, -(2 * a + 1), -2 * b, -(2 * c + 1)};
        CHECK(verify_no_pst(s).impossible());
        ++count;
      }
  CHECK(count == 22100);
}

TEST_CASE("binomial overlaps") {
  CHECK(binomial_overlap(2, 1) == q(1, 2));
  CHECK(binomial_overlap(2, 2) == q(1, 2));
  CHECK(binomial_overlap(4, 4) == q(1, 20));
  for (long N = 1; N <= 20; ++N) {
    BigRational total = 0;
    for (long n = 1; n <= N; ++n) {
      CHECK(binomial_overlap_factorial(N, n) == binomial_overlap_difference(N, n));
      total += binomial_overlap(N, n);
    }
    CHECK(total == 1);
  }
  CHECK_THROWS_AS(binomial_overlap(4, 5), ValidationError);
  CHECK_THROWS_AS(binomial_overlap(4, 0), ValidationError);
}

TEST_CASE("oddness of phase numerators") {
  CHECK(phase_numerator(4, 1) == 5);
  CHECK(phase_numerator(4, 2) == 9);
  CHECK(phase_numerator(4, 3) == 5);
  CHECK(phase_numerator(4, 4) == 1);
  CHECK(kummer_odd_check(4, 4));
  for (long r = 1; r <= 6; ++r) CHECK(kummer_odd_check(1L << r, 1L << r));
  CHECK_FALSE(kummer_odd_check(3, 1));  // numerator 2, although 3 * (1/3) is odd
  CHECK_FALSE(kummer_odd_check(3, 3));
  CHECK_THROWS_AS(kummer_odd_check(3, 4), ValidationError);
}

TEST_CASE("minimal phase multiplier") {
  CHECK(*minimal_phase_multiplier(4, 2) == 20);
  CHECK(*minimal_phase_multiplier(4, 4) == 20);
  CHECK(*minimal_phase_multiplier(8, 3) == 24);
  CHECK(*minimal_phase_multiplier(3, 1) == 3);
  CHECK_FALSE(minimal_phase_multiplier(3, 2).has_value());
  for (long r = 1; r <= 7; ++r) {
    const long N = 1L << r;
    CHECK(*minimal_phase_multiplier(N, N) == binomial(2 * N - 2, N - 1));
  }
  SUBCASE("agrees with brute-force search") {
    for (long N = 2; N <= 9; ++N) {
      for (long M = 1; M <= N; ++M) {
        const auto fast = minimal_phase_multiplier(N, M);
        const auto slow = brute_multiplier(N, M, 20000);
        if (fast && *fast <= 20000) {
          REQUIRE(slow.has_value());
          CHECK(*fast == *slow);
        } else if (!fast) {
          CHECK_FALSE(slow.has_value());
        }
      }
    }
  }
  SUBCASE("monotone in M") {
    for (long N : {8L, 16L, 32L}) {
      BigInt prev = 1;
      for (long M = 1; M <= N; ++M) {
        const auto L = minimal_phase_multiplier(N, M);
        REQUIRE(L.has_value());
        CHECK(*L >= prev);
        CHECK(*L % prev == 0);
        prev = *L;
      }
    }
  }
  SUBCASE("full-spectrum multiplier divides C(2N-2,N-1) up to powers of two") {
    for (long N = 2; N <= 30; ++N) {
      const auto L = minimal_phase_multiplier(N, N);
      if (!L) continue;
      BigInt c = binomial(2 * N - 2, N - 1);
      bool found = false;
      for (int j = 0; j < 8 && !found; ++j) {
        found = c % *L == 0;
        c *= 2;
      }
      CHECK(found);
    }
  }
}

TEST_CASE("large-coupling no-go") {
  CHECK_FALSE(large_a_no_go(2).impossible());
  CHECK(large_a_no_go(3).impossible());
  for (long N = 3; N <= 40; ++N) CHECK(large_a_no_go(N).impossible());

  SUBCASE("five sites: sampled even/odd spectra") {
    auto g = oracle::rng(33);
    std::uniform_int_distribution<long> half(1, 20);
    std::uniform_int_distribution<long> oddh(0, 19);
    for (int rep = 0; rep < 3000; ++rep) {
      std::set<long> evens, odds;
      while (evens.size() < 4) evens.insert(-2 * half(g));
      while (odds.size() < 4) odds.insert(-(2 * oddh(g) + 1));
      std::vector<BigInt> e{0}, o;
      for (auto it = evens.rbegin(); it != evens.rend(); ++it) e.emplace_back(*it);
      for (auto it = odds.rbegin(); it != odds.rend(); ++it) o.emplace_back(*it);
      const auto w = large_a_null_overlap(e, o);
      CHECK(two_adic_valuation(w) <= -4);
      CHECK(w != q(1, 5));
    }
  }
  const std::vector<BigInt> e{0, -2}, bad_odd{-2};
  CHECK_THROWS_AS(large_a_null_overlap(e, bad_odd), ValidationError);
}
