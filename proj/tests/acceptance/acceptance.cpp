// One PASS/FAIL line per acceptance criterion; exit status is the number of failures.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numeric>
#include <random>
#include <string>
#include <vector>

#include "mdap/circle.hpp"
#include "mdap/digitset.hpp"
#include "mdap/expsums.hpp"
#include "mdap/fourier.hpp"
#include "mdap/primetables.hpp"
#include "mdap/sievenumerics.hpp"
#include "mdap/sieveweights.hpp"

using namespace mdap;

namespace {

struct Outcome {
  bool pass;
  std::string detail;
};

int failures = 0;

void run(int id, const char* what, double limit_s, const std::function<Outcome()>& body) {
  auto t0 = std::chrono::steady_clock::now();
  Outcome o{false, ""};
  try {
    o = body();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  bool in_time = secs <= limit_s;
  bool ok = o.pass && in_time;
  if (!ok) ++failures;
  std::printf("criterion %2d: %s  %s  [%.2fs / %.0fs%s]  %s\n", id, ok ? "PASS" : "FAIL", what, secs, limit_s,
              in_time ? "" : " over time", o.detail.c_str());
  std::fflush(stdout);
}

std::string fmt(const char* f, double a) {
  char buf[128];
  std::snprintf(buf, sizeof buf, f, a);
  return buf;
}

bool is_prime_td(u64 n) {
  if (n < 2) return false;
  for (u64 p = 2; p * p <= n; ++p)
    if (n % p == 0) return false;
  return true;
}

int mobius_td(u64 n) {
  int m = 1;
  for (u64 p = 2; p * p <= n; ++p)
    if (n % p == 0) {
      n /= p;
      if (n % p == 0) return 0;
      m = -m;
    }
  return n > 1 ? -m : m;
}

// ---------------------------------------------------------------- 1
Outcome exact_counts() {
  u64 checked = 0;
  for (int b : {5, 10, 16}) {
    // histogram of (digit mask, last digit) for n < b^k, built once per k
    for (int k = 1; k <= 6; ++k) {
      u64 X = ipow(b, k);
      std::vector<u64> hist((u64(1) << b) * b, 0);
      for (u64 n = 0; n < X; ++n) {
        u64 mask = 0, m = n;
        do {
          mask |= u64(1) << (m % b);
          m /= b;
        } while (m);
        ++hist[mask * b + n % b];
      }
      for (int a0 = 1; a0 < b; ++a0) {
        std::vector<u64> by_last(b, 0);
        for (u64 mask = 0; mask < (u64(1) << b); ++mask)
          if (!(mask >> a0 & 1))
            for (int l = 0; l < b; ++l) by_last[l] += hist[mask * b + l];
        u64 total = std::accumulate(by_last.begin(), by_last.end(), u64(0));
        DigitSystem plain(b, a0);
        if (plain.count(k) != total || total != ipow(b - 1, k))
          return {false, "b=" + std::to_string(b) + " a0=" + std::to_string(a0) + " k=" + std::to_string(k)};
        ++checked;
        for (int r = 0; r < b; ++r) {
          if (r == a0) continue;
          DigitSystem ds(b, a0, r);
          if (ds.count(k) != by_last[r] || by_last[r] != ipow(b - 1, k - 1))
            return {false, "b=" + std::to_string(b) + " a0=" + std::to_string(a0) + " r=" + std::to_string(r) +
                               " k=" + std::to_string(k)};
          ++checked;
        }
      }
    }
  }
  return {true, std::to_string(checked) + " (b,a0,r,k) cases"};
}

// ---------------------------------------------------------------- 2
Outcome fourier_inversion() {
  double worst = 0;
  u64 points = 0;
  struct Case { int b, a0, r, k; };
  std::vector<Case> cases;
  for (int k = 1; k <= 8; ++k) {
    cases.push_back({3, 1, 2, k});
    cases.push_back({3, 2, 1, k});
    cases.push_back({3, 1, -1, k});
  }
  for (int k = 1; k <= 4; ++k) {
    cases.push_back({10, 7, 3, k});
    cases.push_back({10, 5, -1, k});
  }
  for (auto c : cases) {
    DigitSystem ds = c.r < 0 ? DigitSystem(c.b, c.a0) : DigitSystem(c.b, c.a0, c.r);
    u64 X = ds.modulus(c.k);
    auto table = hat_table(ds, c.k);
    auto tw = twiddles(X);
    for (u64 n = 0; n < X; ++n) {
      double want = ds.contains(n) ? 1.0 : 0.0;
      worst = std::max(worst, std::fabs(inversion_indicator(table, tw, n) - want));
      ++points;
    }
  }
  return {worst <= 1e-6, std::to_string(points) + " points, max error " + fmt("%.3g", worst)};
}

// ---------------------------------------------------------------- 3
Outcome l1_statistic() {
  DigitSystem ds(10, 7, 3);
  double lb = std::log(10.0), lo = 1.0 / (2.0 * lb), hi = 2.0 * (1.0 + 3.0 / lb);
  auto s4 = l1_and_cb(ds, 4), s5 = l1_and_cb(ds, 5);
  bool band = s4.c_b_estimate >= lo && s4.c_b_estimate <= hi && s5.c_b_estimate >= lo && s5.c_b_estimate <= hi;
  double change = std::fabs(s5.c_b_estimate - s4.c_b_estimate) / s4.c_b_estimate;
  return {band && change < 0.2, "C_b(4)=" + fmt("%.6g", s4.c_b_estimate) + " C_b(5)=" + fmt("%.6g", s5.c_b_estimate) +
                                    " band=[" + fmt("%.4g", lo) + "," + fmt("%.4g", hi) + "] change=" + fmt("%.3g", change)};
}

// ---------------------------------------------------------------- 4
Outcome sieve_sandwich(const PrimeTables& t) {
  u64 violations = 0, grids = 0;
  for (int degree : {1, 2})
    for (double z : {3.0, 7.0, 13.0, 30.0})
      for (double D : {30.0, 100.0, 300.0, 1000.0}) {
        SieveSpec lo{degree, SieveSide::lower, D, z, all_primes()};
        SieveSpec up{degree, SieveSide::upper, D, z, all_primes()};
        auto r = sandwich_check(build_weights(lo, t), build_weights(up, t), t, z, all_primes(), 1, 100'000);
        violations += r.violation_count;
        ++grids;
        // the restricted prime set used by the semi-linear application
        SieveSpec lo3{degree, SieveSide::lower, D, z, primes_3mod4_not_dividing(7)};
        SieveSpec up3{degree, SieveSide::upper, D, z, primes_3mod4_not_dividing(7)};
        auto r3 = sandwich_check(build_weights(lo3, t), build_weights(up3, t), t, z, primes_3mod4_not_dividing(7),
                                 1, 100'000);
        violations += r3.violation_count;
        ++grids;
      }
  return {violations == 0, std::to_string(grids) + " (degree, z, D, prime set) grids, " + std::to_string(violations) +
                               " violations"};
}

// ---------------------------------------------------------------- 5
Outcome well_factorization(const PrimeTables& t) {
  u64 tried = 0, ok = 0;
  std::string first_fail;
  for (double X : {1e5, 1e6}) {
    for (int degree : {1, 2}) {
      auto c = well_contract(degree, X, 1e-3, 1e-6);
      SieveSpec spec{degree, degree == 1 ? SieveSide::lower : SieveSide::upper, c.D0_hi, c.z_max,
                     degree == 1 ? primes_3mod4_not_dividing(7) : all_primes()};
      spec.rho = c.rho;
      auto w = build_weights(spec, t);
      std::vector<double> D0s;
      for (int i = 0; i <= 4; ++i) D0s.push_back(c.D0_lo * std::pow(c.D0_hi / c.D0_lo, i / 4.0));
      for (auto [d, lam] : w.entries()) {
        if (double(d) < c.d_lo || double(d) > c.d_hi) continue;
        for (double D0 : D0s) {
          ++tried;
          try {
            auto s = well_factor(d, spec, D0, X, t);
            if (s.d1 * s.d2 == d) ++ok;
          } catch (const CheckFailed& e) {
            if (first_fail.empty()) first_fail = e.what();
          }
        }
      }
    }
  }
  std::string detail = std::to_string(ok) + "/" + std::to_string(tried) + " splits";
  if (!first_fail.empty()) detail += "; first failure: " + first_fail;
  return {tried > 0 && ok == tried, detail};
}

// ---------------------------------------------------------------- 6
Outcome sieve_numerics() {
  double worst = 0;
  for (int i = 0; i <= 19; ++i) {
    double u = 1.1 + 0.1 * i, rho = 3.0 / 7.0;
    double quad = adaptive_simpson([](double s) { return 2.0 / std::sqrt(1.0 + s * s); }, 0.0, std::sqrt(u - 1.0),
                                   1e-13) / std::sqrt(rho);
    worst = std::max(worst, std::fabs(quad - I_sem(rho, u / rho)));
  }
  double delta = 1e-3, eps = 1e-6;
  double rho_sem = 3.0 * (1.0 - 4.0 * delta) / 7.0 - eps;
  double rho_lin = 0.5 - 2.0 * delta - eps;
  double alpha = 1.0 / (1.0 / 3.0 - 2.0 * delta) + eps;
  double is = I_sem(rho_sem, alpha), il = 10.0 / 9.0 * I_lin(rho_lin, alpha);
  double diff = is - il;
  return {worst <= 1e-8 && diff > 0.1,
          "closed-form error " + fmt("%.3g", worst) + "; I_sem=" + fmt("%.6f", is) + " (reference 1.60492), " +
              "(10/9)I_lin=" + fmt("%.6f", il) + " (reference 1.4566), difference=" + fmt("%.6f", diff)};
}

// ---------------------------------------------------------------- 7
Outcome identities(const PrimeTables& t) {
  std::mt19937_64 rng(20240607);
  double worst_v = 0;
  u64 X = 10'000, U = u64(std::ceil(std::cbrt(double(X))));
  for (int i = 0; i < 100; ++i) {
    u64 d = 1 + rng() % 50, c = rng() % d;
    double theta = double(rng() >> 11) * 0x1.0p-53;
    worst_v = std::max(worst_v, vaughan_decompose(t, X, U, d, c, theta).residual);
  }
  double worst_r = 0;
  for (u64 q = 1; q <= 200; ++q) worst_r = std::max(worst_r, std::abs(ramanujan_sum(q, 1) - cplx(mobius_td(q), 0)));
  bool phi_ok = true;
  for (u64 b = 1; b <= 10'000; ++b) {
    auto r = b_over_phi(b);
    phi_ok = phi_ok && r.divisor_sum == r.closed_form;
  }
  auto bs = buchstab_and_app(t, DigitSystem(7, 4, 3), 100'000, 3.0);
  bool buch = bs.total == bs.S - bs.T;
  return {worst_v <= 1e-6 && worst_r <= 1e-9 && phi_ok && buch,
          "Vaughan residual " + fmt("%.3g", worst_v) + ", Ramanujan error " + fmt("%.3g", worst_r) +
              ", b/phi(b) " + (phi_ok ? "exact" : "MISMATCH") + ", Buchstab " + std::to_string(bs.total) + " = " +
              std::to_string(bs.S) + " - " + std::to_string(bs.T)};
}

// ---------------------------------------------------------------- 8
Outcome arcs(const PrimeTables& t) {
  u64 bad = 0, labelled = 0;
  double worst = 0;
  std::mt19937_64 rng(8);
  for (int b : {5, 10}) {
    u64 X = ipow(b, 4);
    double C = 2.0, L = std::pow(std::log(double(X)), C);
    for (u64 tt = 0; tt < X; ++tt) {
      // independent membership in each major set
      bool m[3] = {false, false, false};
      for (u64 q = 1; double(q) <= L; ++q)
        for (u64 a = 0; a < q; ++a) {
          if (std::gcd(a, q) != 1) continue;
          i64 num = i64(tt * q) - i64(a * X);
          if (X % q == 0) {
            i64 eta = num / i64(q);
            if (eta == 0) m[2] = true;
            else if (double(std::llabs(eta)) <= L) m[1] = true;
          } else if (double(std::llabs(num)) <= L * double(q)) {
            m[0] = true;
          }
        }
      ArcKind want = m[2] ? ArcKind::major3 : m[1] ? ArcKind::major2 : m[0] ? ArcKind::major1 : ArcKind::minor;
      auto lab = classify_arc(tt, X, C);
      if (lab.kind != want) ++bad;
      ++labelled;
    }
    DigitSystem ds(b, b == 10 ? 7 : 2, 3);
    for (int i = 0; i < 20; ++i) {
      u64 d = 1 + rng() % 40, c = rng() % d;
      worst = std::max(worst, arc_split(t, ds, X, d, c, 2.0).conservation_error);
    }
  }
  return {bad == 0 && worst <= 1e-5, std::to_string(labelled) + " labels, " + std::to_string(bad) +
                                         " mismatches; worst conservation error " + fmt("%.3g", worst)};
}

// ---------------------------------------------------------------- 9
Outcome two_squares(const PrimeTables& t) {
  const u64 N = 100'000;
  std::vector<char> hit(N + 1, 0);
  for (u64 x = 0; x * x <= N; ++x)
    for (u64 y = x; x * x + y * y <= N; ++y)
      if (std::gcd(x, y) == 1) hit[x * x + y * y] = 1;
  u64 bad = 0;
  for (u64 n = 1; n <= N; ++n)
    if (t.quadratic_class(n).in_B != bool(hit[n])) ++bad;
  return {bad == 0, std::to_string(bad) + " disagreements over n <= 1e5"};
}

// ---------------------------------------------------------------- 10
Outcome density() {
  PrimeTables big(10'000'000);
  auto d = count_missing_digit_primes(big, DigitSystem(10, 7), 10'000'000);
  bool ratio_ok = d.ratio >= 0.5 && d.ratio <= 2.0;
  std::vector<u64> app;
  for (int k = 4; k <= 6; ++k) app.push_back(buchstab_and_app(big, DigitSystem(7, 4, 3), ipow(7, k), 3.0).app_count);
  bool inc = app[0] > 0 && app[0] < app[1] && app[1] < app[2];
  std::string trend;
  DigitSystem ds(10, 7, 3);
  PrimeTables small(100'000);
  for (u64 D : {10, 30, 100}) {
    WeightSpec ws;
    ws.kind = WeightKind::abs_max_c;
    ws.D = D;
    trend += " D=" + std::to_string(D) + ":" + fmt("%.4g", weighted_discrepancy(small, ds, 100'000, ws).aggregate);
  }
  return {ratio_ok && inc, "count=" + std::to_string(d.count) + " ratio=" + fmt("%.4f", d.ratio) + "; app_count k=4..6: " +
                               std::to_string(app[0]) + "," + std::to_string(app[1]) + "," + std::to_string(app[2]) +
                               "; bv aggregate at X=1e5" + trend};
}

}  // namespace

int main() {
  PrimeTables t(200'000);
  run(1, "exact combinatorics", 10, exact_counts);
  run(2, "Fourier inversion", 30, fourier_inversion);
  run(3, "L1 statistic band", 120, l1_statistic);
  run(4, "sieve sandwich", 60, [&] { return sieve_sandwich(t); });
  run(5, "well-factorization", 60, [&] { return well_factorization(t); });
  run(6, "sieve numerics", 5, sieve_numerics);
  run(7, "identities", 120, [&] { return identities(t); });
  run(8, "arc machinery", 300, [&] { return arcs(t); });
  run(9, "two-squares classifier", 60, [&] { return two_squares(t); });
  run(10, "density diagnostics", 300, density);
  std::printf("%d of 10 criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
