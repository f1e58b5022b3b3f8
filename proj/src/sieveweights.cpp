#include "mdap/sieveweights.hpp"

#include <algorithm>
#include <cmath>

namespace mdap {

namespace {
constexpr double kLogSlack = 1e-12;

// Prime factors of a squarefree d in decreasing order, or nullopt.
std::optional<std::vector<u64>> descending_primes(u64 d, const PrimeTables& t) {
  std::vector<u64> ps;
  for (auto [p, e] : t.factorize(d)) {
    if (e > 1) return std::nullopt;
    ps.push_back(p);
  }
  std::reverse(ps.begin(), ps.end());
  return ps;
}

bool checked_index(const SieveSpec& spec, std::size_t l) {
  // upper sides constrain odd prefix lengths, lower sides even ones
  return spec.side == SieveSide::upper ? (l % 2 == 1) : (l % 2 == 0);
}

bool prefix_ok(const SieveSpec& spec, double log_prefix_before, u64 p_l) {
  double lhs = log_prefix_before + (spec.degree + 1) * std::log(double(p_l));
  return lhs <= std::log(spec.level) + kLogSlack;
}

void validate(const SieveSpec& spec) {
  require(spec.degree == 1 || spec.degree == 2, "sieve degree must be 1 or 2");
  require(spec.level >= 1.0, "sieve level must be at least 1");
  require(spec.sift_limit > 0.0, "sifting limit must be positive");
  require(bool(spec.prime_set), "prime set predicate missing");
}
}  // namespace

PrimeSet all_primes() {
  return [](u64) { return true; };
}

PrimeSet primes_3mod4_not_dividing(u64 b) {
  return [b](u64 p) { return p % 4 == 3 && b % p != 0; };
}

bool support_member(u64 d, const SieveSpec& spec, const PrimeTables& t) {
  validate(spec);
  require(d >= 1, "d must be positive");
  if (d == 1) return true;
  if (std::log(double(d)) > std::log(spec.level) + kLogSlack) return false;
  auto ps = descending_primes(d, t);
  if (!ps) return false;
  double acc = 0.0;
  for (std::size_t i = 0; i < ps->size(); ++i) {
    u64 p = (*ps)[i];
    if (double(p) > spec.sift_limit || !spec.prime_set(p)) return false;
    if (checked_index(spec, i + 1) && !prefix_ok(spec, acc, p)) return false;
    acc += std::log(double(p));
  }
  return true;
}

int SieveWeight::at(u64 d) const {
  auto it = std::lower_bound(entries_.begin(), entries_.end(), std::make_pair(d, INT32_MIN));
  return it != entries_.end() && it->first == d ? it->second : 0;
}

SieveWeight build_weights(const SieveSpec& spec, const PrimeTables& t) {
  validate(spec);
  if (spec.side == SieveSide::lower)
    require(spec.level >= spec.sift_limit, "lower sieve needs level D >= sifting limit z");
  u64 zmax = u64(std::floor(spec.sift_limit));
  require(zmax <= t.limit(), "sifting limit exceeds prime table");
  std::vector<u64> ps;
  for (auto p : t.primes()) {
    if (p > zmax) break;
    if (spec.prime_set(p)) ps.push_back(p);
  }
  double logD = std::log(spec.level) + kLogSlack;
  std::vector<std::pair<u64, int>> out{{1, 1}};
  u64 work = 0;
  // depth-first over decreasing chains; idx bounds the next (smaller) prime
  auto dfs = [&](auto&& self, u64 d, double logd, std::size_t len, std::size_t idx, int mu) -> void {
    for (std::size_t i = idx; i-- > 0;) {
      u64 p = ps[i];
      charge_budget(++work, "build_weights");
      double lp = std::log(double(p));
      if (logd + lp > logD) continue;
      if (checked_index(spec, len + 1) && !prefix_ok(spec, logd, p)) continue;
      u64 nd = d * p;
      out.emplace_back(nd, -mu);
      self(self, nd, logd + lp, len + 1, i, -mu);
    }
  };
  dfs(dfs, 1, 0.0, 0, ps.size(), 1);
  std::sort(out.begin(), out.end());
  return SieveWeight(std::move(out));
}

SandwichResult sandwich_check(const SieveWeight& lower, const SieveWeight& upper, const PrimeTables& t,
                              double z, const PrimeSet& primes, u64 n_lo, u64 n_hi) {
  require(n_lo >= 1 && n_lo <= n_hi, "bad n range");
  require(n_hi <= t.limit(), "range exceeds prime table");
  u64 len = n_hi - n_lo + 1;
  charge_budget(len * 8, "sandwich_check");
  auto convolve = [&](const SieveWeight& w) {
    std::vector<i64> s(len, 0);
    for (auto [d, lam] : w.entries()) {
      u64 first = (n_lo + d - 1) / d * d;
      for (u64 n = first; n <= n_hi; n += d) s[n - n_lo] += lam;
    }
    return s;
  };
  auto lo = convolve(lower), hi = convolve(upper);
  SandwichResult r{true, len, {}, 0};
  for (u64 n = n_lo; n <= n_hi; ++n) {
    int ind = 1;
    for (auto [p, e] : t.factorize(n))
      if (double(p) <= z && primes(p)) { ind = 0; break; }
    i64 l = lo[n - n_lo], u = hi[n - n_lo];
    if (l > ind || ind > u) {
      r.ok = false;
      ++r.violation_count;
      if (r.violations.size() < 16) r.violations.push_back({n, l, ind, u});
    }
  }
  return r;
}

double sift_direct(const WeightSeq& c, const PrimeSet& primes, double z, const PrimeTables& t) {
  require(c.values.empty() || c.last() <= t.limit(), "sequence exceeds prime table");
  std::vector<double> kept;
  for (std::size_t i = 0; i < c.values.size(); ++i) {
    if (c.values[i] == 0.0) continue;
    u64 n = c.start + i;
    require(n >= 1, "sequence must live on positive integers");
    bool coprime = true;
    for (auto [p, e] : t.factorize(n))
      if (double(p) <= z && primes(p)) { coprime = false; break; }
    if (coprime) kept.push_back(c.values[i]);
  }
  return pairwise_sum(kept.data(), kept.size());
}

WellContract well_contract(int degree, double X, double delta, double eps) {
  require(degree == 1 || degree == 2, "sieve degree must be 1 or 2");
  require(X > 1, "X must exceed 1");
  WellContract c{};
  if (degree == 1) {
    c.rho = 3.0 * (1.0 - 4.0 * delta) / 7.0 - eps;
    c.z_max = std::pow(X, 1.0 / 3.0 - 2.0 * delta - 2.0 * eps * eps);
    c.D0_lo = c.z_max;
  } else {
    c.rho = 0.5 - 2.0 * delta - eps;
    c.z_max = std::sqrt(X);
    c.D0_lo = std::pow(X, 0.2);
  }
  c.D0_hi = std::pow(X, c.rho);
  c.d_lo = std::pow(X, 0.1);
  c.d_hi = c.D0_hi;
  return c;
}

WellSplit well_factor(u64 d, const SieveSpec& spec, double D0, double X, const PrimeTables& t) {
  WellContract c = well_contract(spec.degree, X, spec.delta, spec.eps);
  const double tol = 1.0 + 1e-12;
  require(spec.sift_limit <= c.z_max * tol, "sifting limit outside the well-factorization contract");
  require(D0 >= c.D0_lo / tol && D0 <= c.D0_hi * tol, "D0 outside its admissible interval");
  require(double(d) >= c.d_lo / tol && double(d) <= c.d_hi * tol, "d outside [X^(1/10), X^rho]");
  require(support_member(d, spec, t), "d is not in the sieve support");
  double target = std::pow(X, 1.0 - 4.0 * spec.delta - 2.0 * spec.eps * spec.eps) / D0;
  auto ps = *descending_primes(d, t);
  u64 d1 = 1;
  for (std::size_t j = 0; j < ps.size(); ++j) {
    d1 *= ps[j];
    u64 d2 = d / d1;
    double lhs = double(d1) * double(d2) * double(d2);
    if (double(d1) >= c.d_lo / tol && double(d1) <= D0 * tol && lhs <= target * tol)
      return {d1, d2, int(j + 1)};
  }
  throw CheckFailed("no admissible well-factorization split for d = " + std::to_string(d));
}

}  // namespace mdap
