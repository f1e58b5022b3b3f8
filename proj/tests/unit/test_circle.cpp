#include <doctest.h>

#include <cmath>
#include <numeric>
#include <random>

#include "mdap/circle.hpp"
#include "oracles.hpp"

using namespace mdap;

namespace {
const PrimeTables& tab() {
  static PrimeTables t(200'000);
  return t;
}

// which major conditions t satisfies, by exhaustive search over (a, q)
struct Witness {
  bool m1 = false, m2 = false, m3 = false;
};
Witness witnesses(u64 t, u64 X, double C) {
  double L = std::pow(std::log(double(X)), C);
  Witness w;
  for (u64 q = 1; double(q) <= L && q <= X; ++q)
    for (u64 a = 0; a < q; ++a) {
      if (std::gcd(a, q) != 1) continue;
      i64 num = i64(t) * i64(q) - i64(a) * i64(X);  // q (t - aX/q)
      if (X % q == 0) {
        i64 eta = num / i64(q);
        if (eta == 0) w.m3 = true;
        else if (double(std::llabs(eta)) <= L) w.m2 = true;
      } else if (double(std::llabs(num)) <= L * double(q)) {
        w.m1 = true;
      }
    }
  return w;
}
}  // namespace

TEST_CASE("arc examples") {
  auto z = classify_arc(0, 10'000, 2);
  CHECK(z.kind == ArcKind::major3);
  CHECK(z.a == 0);
  CHECK(z.q == 1);
  auto e = classify_arc(1000, 10'000, 2);
  CHECK(e.kind == ArcKind::major3);
  CHECK(e.q == 10);
  CHECK(e.a == 1);
  auto one = classify_arc(1, 10'000, 2);
  CHECK(one.kind == ArcKind::major2);
  CHECK(one.q == 1);
  CHECK(one.a == 0);
  CHECK(one.eta == 1);
}

TEST_CASE("arc partition against exhaustive witnesses") {
  for (u64 X : {625ULL, 10'000ULL}) {
    for (u64 t = 0; t < X; ++t) {
      auto lab = classify_arc(t, X, 2);
      auto w = witnesses(t, X, 2);
      if (w.m3) CHECK(lab.kind == ArcKind::major3);
      else if (w.m2) CHECK(lab.kind == ArcKind::major2);
      else if (w.m1) CHECK(lab.kind == ArcKind::major1);
      else CHECK(lab.kind == ArcKind::minor);
    }
  }
}

TEST_CASE("discrepancy against brute force") {
  const auto& t = tab();
  DigitSystem ds(10, 7, 3);
  u64 X = 10'000;
  for (u64 d : {1, 3, 7, 9, 11}) {
    for (u64 c = 0; c < d; ++c) {
      if (std::gcd(c, d) != 1) continue;
      double s = 0;
      for (u64 n = 2; n < X; ++n)
        if (n % d == c % d && oracle::member(n, 10, 7, 3)) s += oracle::mangoldt(n);
      double main = 10.0 / 4.0 * 729.0 / double(oracle::phi(d));
      CHECK(discrepancy_E(t, ds, X, d, c) == doctest::Approx(s - main).epsilon(1e-12));
    }
  }
  CHECK_THROWS_AS(discrepancy_E(t, ds, 5000, 3, 1), PreconditionError);
  CHECK_THROWS_AS(discrepancy_E(t, ds, X, 2, 1), PreconditionError);
  CHECK_THROWS_AS(discrepancy_E(t, DigitSystem(10, 7), X, 3, 1), PreconditionError);
}

TEST_CASE("weighted aggregates recompute") {
  const auto& t = tab();
  DigitSystem ds(10, 7, 3);
  u64 X = 10'000;
  WeightSpec abs;
  abs.kind = WeightKind::abs_max_c;
  abs.D = 30;
  auto r = weighted_discrepancy(t, ds, X, abs);
  CHECK(r.aggregate == doctest::Approx(recompute_aggregate(r)));
  for (const auto& row : r.rows)
    for (u64 c = 0; c < row.d; ++c)
      if (std::gcd(c, row.d) == 1) CHECK(std::fabs(discrepancy_E(t, ds, X, row.d, c)) <= std::fabs(row.E) + 1e-9);

  WeightSpec wf;
  wf.kind = WeightKind::well_factorable;
  wf.D = 40;
  wf.xi = well_factorable_xi({0, 1, -1, 1}, {0, 1, 0, 0, 0, 1, 0, 1}, 40);
  auto r2 = weighted_discrepancy(t, ds, X, wf);
  CHECK(r2.aggregate == doctest::Approx(recompute_aggregate(r2)));
  double want = 0;
  for (auto [d, xi] : wf.xi)
    if (std::gcd(d, u64(10)) == 1) want += xi * discrepancy_E(t, ds, X, d, 1);
  CHECK(r2.aggregate == doctest::Approx(std::fabs(want)));
}

TEST_CASE("well-factorable convolution") {
  auto xi = well_factorable_xi({0, 1, 2}, {0, 1, 3}, 10);
  // d = 1, 2 from (1,1),(1,2),(2,1); (2,2) is not coprime
  REQUIRE(xi.size() == 2);
  CHECK(xi[0].first == 1);
  CHECK(xi[0].second == 1.0);
  CHECK(xi[1].second == 5.0);
}

TEST_CASE("arc split conserves mass") {
  const auto& t = tab();
  std::mt19937_64 rng(1);
  for (int b : {5, 10}) {
    DigitSystem ds(b, b == 10 ? 7 : 2, 3);
    u64 X = ds.modulus(4);
    for (int i = 0; i < 6; ++i) {
      u64 d = 1 + rng() % 30;
      u64 c = rng() % d;
      auto s = arc_split(t, ds, X, d, c, 2);
      CHECK(s.conservation_error < 1e-5);
      double direct = 0;
      for (u64 n = 2; n < X; ++n)
        if (n % d == c && oracle::member(n, b, b == 10 ? 7 : 2, 3)) direct += oracle::mangoldt(n);
      CHECK(s.direct == doctest::Approx(direct));
    }
  }
}

TEST_CASE("missing digit prime count") {
  const auto& t = tab();
  auto r = count_missing_digit_primes(t, DigitSystem(10, 7), 100'000);
  u64 want = 0;
  for (u64 p = 2; p < 100'000; ++p)
    if (oracle::is_prime(p) && oracle::avoids(p, 10, 7)) ++want;
  CHECK(r.count == want);
  CHECK(r.ratio > 0.5);
}

TEST_CASE("Buchstab split and application count") {
  const auto& t = tab();
  auto r = buchstab_and_app(t, DigitSystem(7, 4, 3), 100'000, 3.0);
  CHECK(r.S == 69);
  CHECK(r.T == 2);
  CHECK(r.total == 67);
  CHECK(r.app_count == 67);
  CHECK(r.family_size == 176);
  CHECK_THROWS_AS(buchstab_and_app(t, DigitSystem(10, 4, 3), 100'000, 3.0), PreconditionError);
}

TEST_CASE("Ramanujan sums") {
  for (u64 q = 1; q <= 60; ++q) {
    CHECK(std::abs(ramanujan_sum(q, 1) - cplx(oracle::mobius(q), 0)) < 1e-9);
    // c_q(0) = phi(q)
    CHECK(ramanujan_sum(q, 0).real() == doctest::Approx(double(oracle::phi(q))));
  }
}
