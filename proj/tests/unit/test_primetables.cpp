#include <doctest.h>

#include <cmath>

#include "mdap/primetables.hpp"
#include "oracles.hpp"

using namespace mdap;

namespace {
const PrimeTables& tab() {
  static PrimeTables t(200'000);
  return t;
}
}  // namespace

TEST_CASE("small table") {
  PrimeTables t(100);
  CHECK(t.spf(91) == 7);
  CHECK(t.primes().size() == 25);
  CHECK_THROWS_AS(t.spf(101), PreconditionError);
}

TEST_CASE("spf and primality against trial division") {
  const auto& t = tab();
  for (u64 n = 2; n <= 20'000; ++n) {
    CHECK(t.is_prime(n) == oracle::is_prime(n));
    CHECK(t.spf(n) == oracle::factor(n).front().first);
  }
}

TEST_CASE("segmented build matches across segment edges") {
  PrimeTables t(600'000);
  for (u64 n : {262'143ULL, 262'144ULL, 262'145ULL, 524'287ULL, 524'288ULL, 524'289ULL, 599'999ULL})
    CHECK(t.spf(n) == oracle::factor(n).front().first);
}

TEST_CASE("mangoldt") {
  const auto& t = tab();
  std::vector<double> v;
  for (u64 n = 1; n <= 20; ++n) v.push_back(t.mangoldt(n));
  double s = 0;
  for (double x : v) s += x;
  CHECK(s == doctest::Approx(19.266).epsilon(1e-4));
  for (u64 n = 1; n <= 5000; ++n) CHECK(t.mangoldt(n) == doctest::Approx(oracle::mangoldt(n)));
}

TEST_CASE("psi in progressions") {
  const auto& t = tab();
  CHECK(t.psi_progression(20, 4, 1) ==
        doctest::Approx(std::log(5.0) + std::log(13.0) + std::log(17.0) + std::log(3.0)));
  CHECK(t.psi_progression(10, 2, 0) == doctest::Approx(3 * std::log(2.0)));
  // brute force with extra modulus and the 3 mod 8 restriction
  for (u64 d : {1, 3, 5, 12}) {
    for (u64 c = 0; c < d; ++c) {
      double want = 0, want8 = 0;
      for (u64 n = 1; n <= 3000; ++n)
        if (n % d == c && n % 7 == 2) {
          want += oracle::mangoldt(n);
          if (n % 8 == 3) want8 += oracle::mangoldt(n);
        }
      CHECK(t.psi_progression(3000, d, c, 7, 2) == doctest::Approx(want));
      CHECK(t.psi_progression(3000, d, c, 7, 2, PsiVariant::three_mod_8) == doctest::Approx(want8));
    }
  }
}

TEST_CASE("arithmetic functions") {
  const auto& t = tab();
  CHECK(t.mobius(4) == 0);
  CHECK(t.totient(4) == 2);
  CHECK(t.mobius(6) == 1);
  CHECK(t.totient(6) == 2);
  CHECK(t.tau(6, 2) == 4);
  CHECK(t.tau(12, 3) == 18);
  for (u64 n = 1; n <= 10'000; ++n) {
    i64 smu = 0;
    u64 sphi = 0;
    for (u64 d = 1; d * d <= n; ++d) {
      if (n % d) continue;
      smu += t.mobius(d);
      sphi += t.totient(d);
      if (d * d != n) {
        smu += t.mobius(n / d);
        sphi += t.totient(n / d);
      }
    }
    CHECK(smu == (n == 1 ? 1 : 0));
    CHECK(sphi == n);
  }
  for (u64 n = 1; n <= 300; ++n) {
    CHECK(t.mobius(n) == oracle::mobius(n));
    CHECK(t.totient(n) == oracle::phi(n));
  }
}

TEST_CASE("two-squares classes") {
  const auto& t = tab();
  CHECK(t.quadratic_class(5).in_B);
  CHECK(t.quadratic_class(5).in_Bcal);
  CHECK_FALSE(t.quadratic_class(9).in_B);
  CHECK_FALSE(t.quadratic_class(9).in_Bcal);
  CHECK(t.quadratic_class(10).in_B);
  CHECK_FALSE(t.quadratic_class(10).in_Bcal);
  CHECK(t.quadratic_class(1).in_B);
  for (u64 n = 1; n <= 20'000; ++n) CHECK(t.quadratic_class(n).in_B == oracle::primitive_two_squares(n));
}
