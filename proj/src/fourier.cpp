#include "mdap/fourier.hpp"

#include <cmath>
#include <numeric>

namespace mdap {

namespace {

cplx digit_factor(const DigitSystem& ds, long double phase) {
  // sum over allowed digits of e(digit * phase), phase already reduced mod 1
  cplx acc = 0.0;
  for (int d : ds.digits()) acc += unit(double(std::fmod(phase * d, 1.0L)));
  return acc;
}

cplx digit_factor_frac(const DigitSystem& ds, const std::vector<cplx>& tw, u64 X, u64 s) {
  cplx acc = 0.0;
  u64 idx = 0;
  int next = 0;
  const auto& dig = ds.digits();
  for (int d = 0; d < ds.base(); ++d) {
    if (next < int(dig.size()) && dig[next] == d) {
      acc += tw[idx];
      ++next;
    }
    idx += s;
    if (idx >= X) idx -= X;
  }
  return acc;
}

int first_free_position(const DigitSystem& ds) { return ds.residue() ? 1 : 0; }

}  // namespace

cplx eval_hat(const DigitSystem& ds, int k, double theta) {
  require(k >= 1, "k must be positive");
  int b = ds.base();
  cplx prod = ds.residue() ? unit(double(std::fmod((long double)(*ds.residue()) * theta, 1.0L))) : 1.0;
  long double scale = 1.0L;
  for (int j = 0; j < k; ++j, scale *= b) {
    if (j < first_free_position(ds)) continue;
    long double ph = std::fmod(scale * (long double)theta, 1.0L);
    if (ph < 0) ph += 1.0L;
    prod *= digit_factor(ds, ph);
  }
  return prod;
}

cplx eval_hat_frac(const DigitSystem& ds, int k, u64 t) {
  u64 X = ds.modulus(k);
  t %= X;
  int b = ds.base();
  auto e_frac = [&](u64 num) {
    double ang = 2.0 * std::numbers::pi * (double(num % X) / double(X));
    return cplx(std::cos(ang), std::sin(ang));
  };
  cplx prod = ds.residue() ? e_frac((unsigned __int128)(*ds.residue()) * t % X) : 1.0;
  u64 s = t;  // b^j t mod X
  for (int j = 0; j < k; ++j) {
    if (j >= first_free_position(ds)) {
      cplx acc = 0.0;
      for (int d : ds.digits()) acc += e_frac((unsigned __int128)d * s % X);
      prod *= acc;
    }
    s = (unsigned __int128)s * b % X;
  }
  return prod;
}

std::vector<cplx> hat_table(const DigitSystem& ds, int k) {
  u64 X = ds.modulus(k);
  charge_budget(X * u64(k) * u64(ds.base()), "hat_table");
  auto tw = twiddles(X);
  int b = ds.base();
  std::vector<cplx> out(X);
  for (u64 t = 0; t < X; ++t) {
    cplx prod = ds.residue() ? tw[(unsigned __int128)(*ds.residue()) * t % X] : cplx(1.0);
    u64 s = t;
    for (int j = 0; j < k; ++j) {
      if (j >= first_free_position(ds)) prod *= digit_factor_frac(ds, tw, X, s);
      s = (unsigned __int128)s * b % X;
    }
    out[t] = prod;
  }
  return out;
}

double inversion_indicator(const std::vector<cplx>& table, const std::vector<cplx>& tw, u64 n) {
  u64 X = table.size();
  require(tw.size() == X, "twiddle table size mismatch");
  n %= X;
  cplx acc = 0.0;
  u64 idx = 0;  // n t mod X
  for (u64 t = 0; t < X; ++t) {
    acc += table[t] * std::conj(tw[idx]);
    idx += n;
    if (idx >= X) idx -= X;
  }
  return acc.real() / double(X);
}

double inversion_indicator(const DigitSystem& ds, int k, u64 n) {
  u64 X = ds.modulus(k);
  require(X <= 1'000'000, "inversion limited to X <= 1e6");
  require(n < X, "n must lie in [0, X)");
  return inversion_indicator(hat_table(ds, k), twiddles(X), n);
}

L1Stats l1_and_cb(const DigitSystem& ds, int k) {
  auto table = hat_table(ds, k);
  std::vector<double> mags(table.size());
  for (std::size_t i = 0; i < table.size(); ++i) mags[i] = std::abs(table[i]);
  double l1 = pairwise_sum(mags.data(), mags.size());
  double b = ds.base();
  double root = std::pow(l1, 1.0 / k);
  double cb = root / (b * std::log(b));
  double alpha = std::log(cb * b * std::log(b) / (b - 1)) / std::log(b);
  return {k, l1, cb, alpha};
}

HybridResult hybrid_sum(const DigitSystem& ds, int k, u64 Q, u64 B) {
  require(Q >= 1 && B >= 1, "Q and B must be positive");
  u64 X = ds.modulus(k);
  charge_budget(4 * Q * Q * (2 * B + 1) * u64(k) * u64(ds.base()), "hybrid_sum");
  std::vector<double> terms;
  for (u64 q = Q + 1; q <= 2 * Q; ++q) {
    for (u64 a = 1; a < q; ++a) {
      if (std::gcd(a, q) != 1) continue;
      // integers t with |t q - X a| < B q
      __int128 centre = (__int128)X * a;
      __int128 lo = centre - (__int128)B * q, hi = centre + (__int128)B * q;
      __int128 tmin = lo / q + 1;        // lo >= 0 here
      __int128 tmax = (hi + q - 1) / q - 1;
      for (__int128 t = tmin; t <= tmax; ++t) {
        u64 tr = u64(((t % X) + X) % X);
        terms.push_back(std::abs(eval_hat_frac(ds, k, tr)));
      }
    }
  }
  HybridResult r{};
  r.value = pairwise_sum(terms.data(), terms.size());
  r.points = terms.size();
  L1Stats st = l1_and_cb(ds, k);
  double b = ds.base();
  double q2b = double(Q) * double(Q) * double(B);
  r.bound = std::pow(b - 1, k) * std::pow(q2b, st.alpha_b_estimate) +
            q2b * std::pow(st.c_b_estimate * std::log(b), k);
  r.ratio = r.value / r.bound;
  return r;
}

LinfProbe linf_probe(const DigitSystem& ds, int k, u64 q, u64 a, double eps) {
  u64 X = ds.modulus(k);
  require(q >= 2, "q must exceed 1");
  require((unsigned __int128)q * q * q < X, "q must be below b^(k/3)");
  u64 q1 = q;
  for (u64 g; (g = std::gcd(q1, u64(ds.base()))) > 1;) q1 /= g;
  require(q1 > 1, "q needs a divisor q1 != 1 coprime to b");
  require(std::fabs(eps) < 0.5 / std::pow(double(ds.base()), 2.0 * k / 3.0),
          "|eps| must be below 1/(2 b^(2k/3))");
  require(std::gcd(a, q) == 1, "gcd(a, q) must be 1");
  LinfProbe p{};
  p.value = std::abs(eval_hat(ds, k, double(a % q) / double(q) + eps));
  p.trivial = double(ds.residue() ? ipow(ds.base() - 1, k - 1) : ipow(ds.base() - 1, k));
  p.cb_decay = -std::log(p.value / p.trivial) * std::log(double(q)) / k;
  return p;
}

}  // namespace mdap
