#include "mdap/sievenumerics.hpp"

#include <cmath>
#include <vector>

namespace mdap {

SieveFnKind parse_sieve_fn(const std::string& name) {
  if (name == "sem_F") return SieveFnKind::sem_F;
  if (name == "sem_f") return SieveFnKind::sem_f;
  if (name == "lin_F") return SieveFnKind::lin_F;
  if (name == "lin_f") return SieveFnKind::lin_f;
  throw PreconditionError("unknown sieve function: " + name);
}

double sieve_fn(SieveFnKind kind, double u) {
  const double eg = std::exp(kEulerGamma);
  const double pi = std::numbers::pi;
  switch (kind) {
    case SieveFnKind::sem_F:
      require(u > 0 && u <= 2, "sem_F defined on (0, 2]");
      return 2.0 * std::sqrt(eg / pi) / std::sqrt(u);
    case SieveFnKind::sem_f:
      require(u > 0 && u <= 3, "sem_f defined on (0, 3]");
      if (u <= 1) return 0.0;
      return std::sqrt(eg / (pi * u)) * std::log(1.0 + 2.0 * (u - 1.0) + 2.0 * std::sqrt(u * (u - 1.0)));
    case SieveFnKind::lin_F:
      require(u >= 1 && u <= 3, "lin_F defined on [1, 3]");
      return 2.0 * eg / u;
    case SieveFnKind::lin_f:
      require(u > 0 && u <= 2, "lin_f defined on (0, 2]");
      return 0.0;
  }
  throw PreconditionError("unknown sieve function");
}

namespace {
double simpson_rec(const std::function<double(double)>& f, double a, double b, double fa, double fm,
                   double fb, double whole, double tol, int depth) {
  double m = 0.5 * (a + b);
  double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  double flm = f(lm), frm = f(rm);
  double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  double diff = left + right - whole;
  if (std::fabs(diff) <= 15.0 * tol) return left + right + diff / 15.0;
  if (depth <= 0) throw CheckFailed("adaptive quadrature did not converge");
  return simpson_rec(f, a, m, fa, flm, fm, left, tol / 2, depth - 1) +
         simpson_rec(f, m, b, fm, frm, fb, right, tol / 2, depth - 1);
}
}  // namespace

double adaptive_simpson(const std::function<double(double)>& f, double a, double b, double tol,
                        int max_depth) {
  if (a == b) return 0.0;
  double fa = f(a), fb = f(b), fm = f(0.5 * (a + b));
  double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  return simpson_rec(f, a, b, fa, fm, fb, whole, tol, max_depth);
}

double I_sem(double rho, double alpha) {
  require(rho > 0 && alpha > 0, "rho and alpha must be positive");
  double u = alpha * rho;
  require(u >= 1.0 && u <= 3.0, "alpha * rho must lie in [1, 3]");
  return std::log(1.0 + 2.0 * (u - 1.0) + 2.0 * std::sqrt(u * (u - 1.0))) / std::sqrt(rho);
}

double lin_integral(double alpha) {
  require(alpha >= 2.0, "alpha must be at least 2");
  if (alpha == 2.0) return 0.0;
  // y = alpha (1 - s^2) removes the endpoint singularity at y = alpha
  auto g = [alpha](double s) {
    double w = 1.0 - s * s;
    return 2.0 * std::log(alpha * w - 1.0) / w;
  };
  double top = std::sqrt(1.0 - 2.0 / alpha);
  double coarse = adaptive_simpson(g, 0.0, top, 1e-10);
  double fine = adaptive_simpson(g, 0.0, top, 1e-10 / 16.0);
  if (std::fabs(coarse - fine) > 1e-8) throw CheckFailed("lin_integral: refinement disagrees");
  return fine;
}

double I_lin(double rho, double alpha) {
  require(rho > 0, "rho must be positive");
  return lin_integral(alpha) / rho;
}

EulerConstants euler_constants(const PrimeTables& t, u64 p_limit) {
  require(p_limit >= 1000 && p_limit <= t.limit(), "p_limit must lie in [1000, table limit]");
  std::vector<double> l1, l2, l3;
  for (auto p32 : t.primes()) {
    u64 p = p32;
    if (p > p_limit) break;
    double pm1 = double(p - 1);
    if (p % 4 == 1) {
      l1.push_back(std::log1p(-1.0 / (pm1 * pm1)));
    } else if (p % 4 == 3) {
      l2.push_back(0.5 * std::log1p(-1.0 / (double(p) * double(p))));
      l3.push_back(std::log1p(-1.0 / (pm1 * pm1)));
    }
  }
  double L = double(p_limit);
  double tail = 2.0 / L * (1.0 + 4.0 / (L * L));
  auto make = [tail](double v) { return Interval{v, v * std::exp(-tail), v}; };
  EulerConstants e{};
  e.p_limit = p_limit;
  e.C1 = make(std::exp(pairwise_sum(l1.data(), l1.size())));
  e.C2 = make(std::exp(pairwise_sum(l2.data(), l2.size())) / (2.0 * std::sqrt(2.0)));
  e.C3 = make(std::exp(pairwise_sum(l3.data(), l3.size())));
  e.singular = {e.C2.value * e.C3.value / 2.0, e.C2.lo * e.C3.lo / 2.0, e.C2.hi * e.C3.hi / 2.0};
  return e;
}

MertensResult mertens_3mod4(const PrimeTables& t, u64 y) {
  require(y >= 3 && y <= t.limit(), "y must lie in [3, table limit]");
  require(t.limit() >= 1000, "table limit must be at least 1000");
  std::vector<double> logs;
  for (auto p : t.primes()) {
    if (p > y) break;
    if (p % 4 == 3) logs.push_back(std::log1p(-1.0 / double(p - 1)));
  }
  MertensResult r{};
  r.product = std::exp(pairwise_sum(logs.data(), logs.size()));
  auto ec = euler_constants(t, t.limit());
  r.predicted = 2.0 * ec.C2.value * ec.C3.value *
                std::sqrt(std::numbers::pi * std::exp(-kEulerGamma) / std::log(double(y)));
  r.ratio = r.product / r.predicted;
  return r;
}

double t_weight(const PrimeTables& t, u64 n) {
  double w = 1.0;
  for (auto [p, e] : t.factorize(n))
    if (p > 2) w *= double(p - 1) / double(p - 2);
  return w;
}

TWeightResult t_weight_sum(const PrimeTables& t, double X, double alpha, u64 b) {
  require(alpha > 2.0, "alpha must exceed 2");
  require(X > 16, "X too small");
  require(b >= 2, "base must be at least 2");
  u64 n1_max = u64(std::floor(std::pow(X, 1.0 - 2.0 / alpha)));
  double p_lo = std::pow(X, 1.0 / alpha);
  u64 p_hi = u64(std::ceil(std::sqrt(X)));
  require(n1_max <= t.limit() && p_hi <= t.limit(), "X exceeds prime table");
  std::vector<double> terms;
  for (u64 n1 = 1; n1 <= n1_max; ++n1) {
    if (n1 % 2 == 0 || gcd_u(n1, b) != 1) continue;
    if (!t.quadratic_class(n1).in_Bcal) continue;
    double tn1 = t_weight(t, n1);
    double cap = std::sqrt(X / double(n1));
    for (auto p32 : t.primes()) {
      u64 p = p32;
      if (double(p) >= cap) break;
      if (double(p) < p_lo || p % 4 != 3 || b % p == 0) continue;
      double l = double(n1) * double(p);
      terms.push_back(tn1 * double(p - 1) / double(p - 2) / (l * std::log(X / l)));
    }
  }
  TWeightResult r{};
  r.value = pairwise_sum(terms.data(), terms.size());
  r.terms = terms.size();
  auto ec = euler_constants(t, t.limit());
  double local = 1.0;
  for (u64 p = 2, m = b; m > 1; ++p) {
    if (m % p) continue;
    while (m % p == 0) m /= p;
    if (p % 4 == 1) local /= 1.0 + 1.0 / double(p - 2);
  }
  r.predicted = ec.C2.value / (2.0 * ec.C1.value) * local * lin_integral(alpha) / std::sqrt(std::log(X));
  r.ratio = r.value / r.predicted;
  return r;
}

BOverPhi b_over_phi(u64 b) {
  require(b >= 1 && b <= 1'000'000'000'000ULL, "b must lie in [1, 1e12]");
  std::vector<u64> ps;
  u64 m = b;
  for (u64 p = 2; p * p <= m; ++p) {
    if (m % p) continue;
    ps.push_back(p);
    while (m % p == 0) m /= p;
  }
  if (m > 1) ps.push_back(m);
  Rational sum(0);
  std::size_t n = ps.size();
  for (u64 mask = 0; mask < (u64(1) << n); ++mask) {
    i64 phi = 1;
    for (std::size_t i = 0; i < n; ++i)
      if (mask >> i & 1) phi *= i64(ps[i] - 1);
    sum = sum + Rational(1, phi);
  }
  i64 phib = i64(b);
  for (u64 p : ps) phib -= phib / i64(p);
  BOverPhi r{sum, Rational(i64(b), phib)};
  if (!(r.divisor_sum == r.closed_form)) throw CheckFailed("b/phi(b) identity failed for b = " + std::to_string(b));
  return r;
}

}  // namespace mdap
