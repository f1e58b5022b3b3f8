#include <doctest.h>

#include <cmath>
#include <random>

#include "mdap/expsums.hpp"
#include "oracles.hpp"

using namespace mdap;

namespace {
const PrimeTables& tab() {
  static PrimeTables t(100'000);
  return t;
}
}  // namespace

TEST_CASE("dirichlet approximation") {
  auto a = dirichlet_approx(1.0 / 3.0, 10, 100);
  CHECK(a.a == 1);
  CHECK(a.q == 3);
  CHECK(std::fabs(a.beta) < 1e-15);
  CHECK(dirichlet_approx(0.49999, 100, 100).q == 2);
  auto g = dirichlet_approx(0.6180339887498949, 12, 100);
  CHECK(g.q == 8);
  CHECK(g.a == 5);
  std::mt19937_64 rng(7);
  for (int i = 0; i < 2000; ++i) {
    double th = double(rng() >> 11) * 0x1.0p-53;
    u64 Q = 1 + rng() % 500;
    auto ta = dirichlet_approx(th, Q, 1e4);
    CHECK(ta.q <= Q);
    CHECK(std::fabs(ta.beta) <= 1.0 / (double(ta.q) * double(Q)) * (1 + 1e-9));
    CHECK(std::gcd(ta.a, ta.q) == 1);
  }
}

TEST_CASE("lambda hat against direct sum") {
  const auto& t = tab();
  for (double th : {0.0, 0.3, 0.7071}) {
    std::complex<double> want = 0;
    for (u64 n = 1; n < 2000; ++n)
      if (n % 6 == 5) want += oracle::mangoldt(n) * std::polar(1.0, 2 * std::numbers::pi * (n * th - std::floor(n * th)));
    CHECK(std::abs(lambda_hat(t, 2000, 6, 5, th) - want) < 1e-8);
  }
  CHECK(lambda_hat(t, 2000, 6, 5, 0.0).real() == doctest::Approx(t.psi_progression(1999, 6, 5)));
  auto table = lambda_hat_table(t, 300, 4, 1);
  for (u64 s : {0, 1, 17, 299})
    CHECK(std::abs(table[s] - lambda_hat(t, 300, 4, 1, -double(s) / 300.0)) < 1e-9);
}

TEST_CASE("min sums") {
  auto zero = make_theta(0, 1, 0.0, 100);
  CHECK(min_sum(MinSumMode::linear, 5, 7, zero).value == 35.0);
  auto half = make_theta(1, 2, 0.0, 100);
  CHECK(min_sum(MinSumMode::linear, 2, 10, half).value == doctest::Approx(12.0));
  auto third = make_theta(1, 3, 0.0, 100);
  CHECK(min_sum(MinSumMode::hyperbola, 1, 100, third).value == doctest::Approx(3.0));
  // saturation: every multiple of q contributes the cap
  auto r = make_theta(2, 7, 0.0, 1e3);
  double s = min_sum(MinSumMode::linear, 70, 1e6, r).value;
  CHECK(s >= 10 * 1e6);
  // brute force with beta != 0
  auto ta = make_theta(3, 11, 1e-5, 1e4);
  double want = 0;
  for (u64 m = 1; m <= 300; ++m) want += std::min(50.0, 1.0 / oracle::dist(m * ta.theta));
  CHECK(min_sum(MinSumMode::linear, 300, 50, ta).value == doctest::Approx(want).epsilon(1e-9));
  CHECK(std::isfinite(min_sum(MinSumMode::linear, 300, 50, ta).bound));
}

TEST_CASE("bilinear sum") {
  WeightSeq one{2, {1.0}};
  auto z = make_theta(0, 1, 0.0, 5);
  auto r = bilinear_sum(one, one, 5, z);
  CHECK(r.value.real() == doctest::Approx(1.0));
  CHECK(r.norm1 == doctest::Approx(1.0));
  // random weights against a double loop
  std::mt19937_64 rng(3);
  WeightSeq a{11, {}}, b{21, {}};
  for (int i = 0; i < 10; ++i) a.values.push_back(double(rng() % 7) - 3);
  for (int i = 0; i < 20; ++i) b.values.push_back(double(rng() % 5) - 2);
  auto ta = make_theta(2, 9, 3e-6, 600);
  std::complex<double> want = 0;
  for (u64 m = 11; m <= 20; ++m)
    for (u64 n = 21; n <= 40; ++n)
      if (m * n < 600 && m * n % 4 == 1)
        want += a.at(m) * b.at(n) * std::polar(1.0, 2 * std::numbers::pi * double(m * n) * ta.theta);
  auto got = bilinear_sum(a, b, 600, ta, 4, 1);
  CHECK(std::abs(got.value - want) < 1e-8);
  CHECK(got.bound > 0);
}

TEST_CASE("Vaughan decomposition") {
  const auto& t = tab();
  // components against divisor-sum references at X = 50, U = 4, theta = 0
  u64 X = 50, U = 4;
  auto v = vaughan_decompose(t, X, U, 1, 0, 0.0);
  double s1 = 0, s2 = 0, s3 = 0, s4 = 0, s5 = 0;
  auto f = [&](u64 m) {
    double acc = 0;
    for (u64 b = 1; b <= U; ++b)
      if (m % b == 0 && m / b <= U) acc += oracle::mobius(b) * oracle::mangoldt(m / b);
    return acc;
  };
  for (u64 n = 1; n < X; ++n) {
    if (n <= U) s1 += oracle::mangoldt(n);
    for (u64 b = 1; b <= U; ++b)
      if (n % b == 0) s2 += oracle::mobius(b) * std::log(double(n / b));
    for (u64 m = 1; m <= n; ++m) {
      if (n % m) continue;
      (m <= U ? s3 : s4) += f(m);
      // m = b c with b > U, c > U
      for (u64 b = U + 1; b <= m; ++b)
        if (m % b == 0 && m / b > U) s5 += oracle::mobius(b) * oracle::mangoldt(m / b);
    }
  }
  CHECK(v.S[0].real() == doctest::Approx(s1));
  CHECK(v.S[1].real() == doctest::Approx(s2));
  CHECK(v.S[2].real() == doctest::Approx(s3));
  CHECK(v.S[3].real() == doctest::Approx(s4));
  CHECK(v.S[4].real() == doctest::Approx(s5));
  CHECK(v.residual < 1e-9);
  std::mt19937_64 rng(11);
  for (int i = 0; i < 10; ++i) {
    u64 d = 1 + rng() % 50, c = rng() % d;
    double th = double(rng() >> 11) * 0x1.0p-53;
    CHECK(vaughan_decompose(t, 3000, 15, d, c, th).residual < 1e-6);
  }
}

TEST_CASE("Mikawa W") {
  const auto& t = tab();
  auto ta = make_theta(1, 3, 0.0, 1000);
  auto r = mikawa_W(t, 1, 1, 1000, ta);
  // single term m = 2, n = 2: tau3(2) = 3, ||8/3|| = 1/3
  CHECK(r.W == doctest::Approx(3.0 * std::min(1000.0 / 8 + 1, 3.0)));
  CHECK(r.bound > 0);
}

TEST_CASE("type I sums") {
  u64 X = 100;
  TypeIWeights w{{0, 1, 1}, {0, 0, 0}};
  WeightSeq delta1{1, {1.0}};
  auto v = typeI_sum(w, TypeIMode::fixed_residue, 1, delta1, 0, X, 0.0);
  CHECK(v.real() == doctest::Approx(double((X - 1) + (X - 1) / 2)));
  // general case against a triple loop
  std::mt19937_64 rng(5);
  TypeIWeights w2;
  w2.sigma.assign(13, 0.0);
  w2.residue.assign(13, 0);
  for (u64 d = 1; d <= 12; ++d) {
    w2.sigma[d] = double(rng() % 5) - 2;
    w2.residue[d] = rng() % d;
  }
  WeightSeq al{1, {}};
  for (int i = 0; i < 6; ++i) al.values.push_back(double(rng() % 3));
  double th = 0.377;
  std::complex<double> want = 0;
  for (u64 d = 1; d <= 12; ++d)
    for (u64 m = 1; m <= 6; ++m)
      for (u64 n = 1; m * n < 500; ++n)
        if ((m * n) % d == w2.residue[d])
          want += w2.sigma[d] * al.at(m) * std::log(double(n)) *
                  std::polar(1.0, 2 * std::numbers::pi * double(m * n) * th);
  CHECK(std::abs(typeI_sum(w2, TypeIMode::fixed_residue, 6, al, 1, 500, th) - want) < 1e-7);
  CHECK(typeI_sum(w2, TypeIMode::max_over_residue, 6, al, 1, 500, th).real() >= 0);
}
