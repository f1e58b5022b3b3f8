#include "mdap/circle.hpp"

#include <cmath>
#include <numeric>

#include "mdap/fourier.hpp"
#include "mdap/expsums.hpp"

namespace mdap {

const char* arc_name(ArcKind k) {
  switch (k) {
    case ArcKind::major1: return "major1";
    case ArcKind::major2: return "major2";
    case ArcKind::major3: return "major3";
    case ArcKind::minor: return "minor";
  }
  return "?";
}

ArcLabel classify_arc(u64 t, u64 X, double C) {
  require(X >= 2, "X must be at least 2");
  require(t < X, "t must lie in [0, X)");
  require(C > 0, "C must be positive");
  double L = std::pow(std::log(double(X)), C);
  u64 qmax = L >= double(X) ? X : u64(std::floor(L));

  // major3: t/X = a/q exactly; the reduced fraction is the only candidate
  {
    u64 g = std::gcd(t, X);
    u64 q = X / g, a = t / g;
    if (t == 0) q = 1, a = 0;
    if (double(q) <= L) return {ArcKind::major3, a, q, 0, C};
  }
  // major2: t = aX/q + eta, q | X, 0 < |eta| <= L
  for (u64 q = 1; q <= qmax; ++q) {
    if (X % q) continue;
    u64 step = X / q;
    double lo = (double(t) - L) / double(step), hi = (double(t) + L) / double(step);
    i64 a_lo = std::max<i64>(0, i64(std::ceil(lo)) - 1);
    i64 a_hi = std::min<i64>(i64(q) - 1, i64(std::floor(hi)) + 1);
    for (i64 a = a_lo; a <= a_hi; ++a) {
      if (std::gcd(u64(a), q) != 1) continue;
      i64 eta = i64(t) - a * i64(step);
      if (eta != 0 && double(std::llabs(eta)) <= L) return {ArcKind::major2, u64(a), q, eta, C};
    }
  }
  // major1: q not dividing X, 1 <= a < q, |t q - a X| <= L q
  for (u64 q = 2; q <= qmax; ++q) {
    if (X % q == 0) continue;
    double centre = double(t) * double(q) / double(X);
    double w = L * double(q) / double(X);
    i64 a_lo = std::max<i64>(1, i64(std::ceil(centre - w)) - 1);
    i64 a_hi = std::min<i64>(i64(q) - 1, i64(std::floor(centre + w)) + 1);
    for (i64 a = a_lo; a <= a_hi; ++a) {
      if (std::gcd(u64(a), q) != 1) continue;
      __int128 diff = (__int128)t * q - (__int128)a * X;
      if (diff < 0) diff = -diff;
      if (double(diff) <= L * double(q)) return {ArcKind::major1, u64(a), q, 0, C};
    }
  }
  return {ArcKind::minor, 0, 0, 0, C};
}

namespace {

int exponent_of(const DigitSystem& ds, u64 X) {
  u64 p = 1;
  for (int k = 0; k < 64; ++k) {
    if (p == X) return k;
    if (p > X / u64(ds.base())) break;
    p *= ds.base();
  }
  throw PreconditionError("X must be a power of the base");
}

double b_ratio(int b) { return double(b) / double(euler_phi_small(b)); }

struct Member {
  u64 n;
  double lam;
};

// prime powers n < X in the digit set (with residue, if any)
std::vector<Member> weighted_members(const PrimeTables& t, const DigitSystem& ds, u64 X) {
  require(X - 1 <= t.limit(), "X exceeds prime table");
  charge_budget(X, "weighted_members");
  std::vector<Member> out;
  u64 step = ds.residue() ? u64(ds.base()) : 1;
  u64 first = ds.residue() ? u64(*ds.residue()) : 0;
  for (u64 n = first; n < X; n += step) {
    if (n < 2) continue;
    double l = t.mangoldt(n);
    if (l != 0.0 && ds.contains(n)) out.push_back({n, l});
  }
  return out;
}

std::vector<double> buckets(const std::vector<Member>& ms, u64 d) {
  std::vector<std::vector<double>> parts(d);
  for (const auto& m : ms) parts[m.n % d].push_back(m.lam);
  std::vector<double> out(d);
  for (u64 c = 0; c < d; ++c) out[c] = pairwise_sum(parts[c].data(), parts[c].size());
  return out;
}

void require_discrepancy_setup(const DigitSystem& ds) {
  require(ds.residue().has_value(), "discrepancy needs a residue class r");
  require(std::gcd(*ds.residue(), ds.base()) == 1, "gcd(r, b) must be 1");
}

}  // namespace

double discrepancy_E(const PrimeTables& t, const DigitSystem& ds, u64 X, u64 d, u64 c) {
  require_discrepancy_setup(ds);
  int k = exponent_of(ds, X);
  require(d >= 1 && std::gcd(c, d) == 1, "gcd(c, d) must be 1");
  require(std::gcd(d, u64(ds.base())) == 1, "gcd(d, b) must be 1");
  auto ms = weighted_members(t, ds, X);
  std::vector<double> hit;
  for (const auto& m : ms)
    if (m.n % d == c % d) hit.push_back(m.lam);
  double main = b_ratio(ds.base()) * double(ds.count(k)) / double(euler_phi_small(d));
  return pairwise_sum(hit.data(), hit.size()) - main;
}

const char* weight_kind_name(WeightKind k) {
  switch (k) {
    case WeightKind::abs_max_c: return "abs_max_c";
    case WeightKind::fixed_c: return "fixed_c";
    case WeightKind::factorable_pair: return "factorable_pair";
    case WeightKind::well_factorable: return "well_factorable";
    case WeightKind::sieve_semi: return "sieve_semi";
    case WeightKind::sieve_lin: return "sieve_lin";
  }
  return "?";
}

WeightKind parse_weight_kind(const std::string& s) {
  for (auto k : {WeightKind::abs_max_c, WeightKind::fixed_c, WeightKind::factorable_pair,
                 WeightKind::well_factorable, WeightKind::sieve_semi, WeightKind::sieve_lin})
    if (s == weight_kind_name(k)) return k;
  throw PreconditionError("unknown weight kind: " + s);
}

std::vector<std::pair<u64, double>> well_factorable_xi(const std::vector<double>& xi1,
                                                       const std::vector<double>& xi2, u64 D) {
  std::vector<double> acc(D + 1, 0.0);
  for (u64 d1 = 1; d1 < xi1.size(); ++d1) {
    if (xi1[d1] == 0.0) continue;
    for (u64 d2 = 1; d2 < xi2.size() && d1 * d2 <= D; ++d2)
      if (xi2[d2] != 0.0 && std::gcd(d1, d2) == 1) acc[d1 * d2] += xi1[d1] * xi2[d2];
  }
  std::vector<std::pair<u64, double>> out;
  for (u64 d = 1; d <= D; ++d)
    if (acc[d] != 0.0) out.emplace_back(d, acc[d]);
  return out;
}

double recompute_aggregate(const DiscrepancyReport& rep) {
  std::vector<double> v;
  switch (rep.kind) {
    case WeightKind::abs_max_c:
    case WeightKind::fixed_c:
    case WeightKind::factorable_pair:
      for (const auto& r : rep.rows) v.push_back(std::fabs(r.E));
      return pairwise_sum(v.data(), v.size());
    default:
      for (const auto& r : rep.rows) v.push_back(r.weight * r.E);
      return std::fabs(pairwise_sum(v.data(), v.size()));
  }
}

DiscrepancyReport weighted_discrepancy(const PrimeTables& t, const DigitSystem& ds, u64 X,
                                       const WeightSpec& spec) {
  require_discrepancy_setup(ds);
  int k = exponent_of(ds, X);
  u64 b = ds.base();
  double count = double(ds.count(k));
  double br = b_ratio(int(b));
  auto main_for = [&](u64 d) { return br * count / double(euler_phi_small(d)); };
  DiscrepancyReport rep{spec.kind, X, int(b), *ds.residue(), {}, 0.0};

  switch (spec.kind) {
    case WeightKind::abs_max_c: {
      require(spec.D >= 1, "D must be positive");
      auto ms = weighted_members(t, ds, X);
      charge_budget(spec.D * (ms.size() + 1), "abs_max_c");
      for (u64 d = 1; d <= spec.D; ++d) {
        if (std::gcd(d, b) != 1) continue;
        auto bk = buckets(ms, d);
        double main = main_for(d);
        u64 best_c = 0;
        double best = -1.0, bestE = 0.0;
        for (u64 c = 0; c < d; ++c) {
          if (std::gcd(c, d) != 1) continue;
          double E = bk[c] - main;
          if (std::fabs(E) > best) best = std::fabs(E), bestE = E, best_c = c;
        }
        rep.rows.push_back({d, 0, 0, best_c, bestE, 1.0});
      }
      break;
    }
    case WeightKind::fixed_c: {
      require(spec.D >= 1, "D must be positive");
      auto ms = weighted_members(t, ds, X);
      charge_budget(spec.D * (ms.size() + 1), "fixed_c");
      for (u64 d = 1; d <= spec.D; ++d) {
        if (std::gcd(d, b) != 1 || std::gcd(d, spec.c) != 1) continue;
        auto bk = buckets(ms, d);
        rep.rows.push_back({d, 0, 0, spec.c % d, bk[spec.c % d] - main_for(d), 1.0});
      }
      break;
    }
    case WeightKind::factorable_pair: {
      require(spec.D1 >= 1 && spec.D2 >= 1, "D1 and D2 must be positive");
      auto ms = weighted_members(t, ds, X);
      charge_budget(spec.D1 * spec.D2 * (ms.size() + 1), "factorable_pair");
      for (u64 d1 = 1; d1 <= spec.D1; ++d1)
        for (u64 d2 = 1; d2 <= spec.D2; ++d2) {
          u64 d = d1 * d2;
          if (std::gcd(d, spec.c) != 1 || std::gcd(d, b) != 1 || std::gcd(d1, d2) != 1) continue;
          auto bk = buckets(ms, d);
          rep.rows.push_back({d, d1, d2, spec.c % d, bk[spec.c % d] - main_for(d), 1.0});
        }
      break;
    }
    case WeightKind::well_factorable: {
      auto ms = weighted_members(t, ds, X);
      charge_budget(spec.xi.size() * (ms.size() + 1), "well_factorable");
      for (auto [d, w] : spec.xi) {
        if (std::gcd(d, b) != 1 || std::gcd(d, spec.c) != 1) continue;
        auto bk = buckets(ms, d);
        rep.rows.push_back({d, 0, 0, spec.c % d, bk[spec.c % d] - main_for(d), w});
      }
      break;
    }
    case WeightKind::sieve_semi: {
      require(spec.sieve.has_value(), "sieve_semi needs sieve weights");
      auto all = weighted_members(t, ds, X);
      std::vector<Member> ms;
      for (const auto& m : all)
        if (m.n % 8 == 3) ms.push_back(m);
      charge_budget(spec.sieve->size() * (ms.size() + 1), "sieve_semi");
      for (auto [d, lam] : spec.sieve->entries()) {
        if (std::gcd(d, 2 * b) != 1) continue;
        std::vector<double> hit;
        for (const auto& m : ms)
          if (m.n % d == 1 % d) hit.push_back(m.lam);
        double E = pairwise_sum(hit.data(), hit.size()) - br * count / (4.0 * euler_phi_small(d));
        rep.rows.push_back({d, 0, 0, 1 % d, E, double(lam)});
      }
      break;
    }
    case WeightKind::sieve_lin: {
      require(spec.sieve.has_value(), "sieve_lin needs sieve weights");
      require(bool(spec.h) && spec.L >= 1, "sieve_lin needs h and L");
      require(X - 1 <= t.limit(), "X exceeds prime table");
      // records m = 2 l n + 1 in A_r with weight h(l) Lambda(n), l n = 1 mod 4
      std::vector<Member> recs;
      std::vector<u64> ls;
      for (u64 l = spec.L + 1; l <= 2 * spec.L; ++l) {
        if (std::gcd(l, 2 * b) != 1) continue;
        ls.push_back(l);
        double hl = spec.h(l);
        for (u64 n = 2; 2 * l * n + 1 < X; ++n) {
          if ((l * n) % 4 != 1) continue;
          double lam = t.mangoldt(n);
          if (lam == 0.0 || !ds.contains(2 * l * n + 1)) continue;
          recs.push_back({2 * l * n + 1, hl * lam});
        }
      }
      charge_budget(spec.sieve->size() * (recs.size() + ls.size() + 1), "sieve_lin");
      for (auto [d, lam] : spec.sieve->entries()) {
        if (std::gcd(d, 2 * b) != 1) continue;
        std::vector<double> hit, hsum;
        for (const auto& r : recs)
          if (r.n % d == 0) hit.push_back(r.lam);
        for (u64 l : ls)
          if (std::gcd(l, d) == 1) hsum.push_back(spec.h(l) / double(l));
        double main = br * count / (4.0 * euler_phi_small(d)) * pairwise_sum(hsum.data(), hsum.size());
        rep.rows.push_back({d, 0, 0, 0, pairwise_sum(hit.data(), hit.size()) - main, double(lam)});
      }
      break;
    }
  }
  rep.aggregate = recompute_aggregate(rep);
  return rep;
}

ArcSplit arc_split(const PrimeTables& t, const DigitSystem& ds, u64 X, u64 d, u64 c, double C) {
  int k = exponent_of(ds, X);
  require(X <= 100'000, "arc_split limited to X <= 1e5");
  require(d >= 1, "modulus must be positive");
  auto hat = hat_table(ds, k);
  auto lam = lambda_hat_table(t, X, d, c);
  std::array<std::vector<cplx>, 4> parts;
  for (u64 s = 0; s < X; ++s) parts[int(classify_arc(s, X, C).kind)].push_back(hat[s] * lam[s]);
  ArcSplit r{};
  for (int i = 0; i < 4; ++i) r.by_kind[i] = pairwise_sum(parts[i].data(), parts[i].size()) / double(X);
  r.major = r.by_kind[0] + r.by_kind[1] + r.by_kind[2];
  r.minor = r.by_kind[3];
  std::vector<double> hit;
  u64 first = c % d == 0 ? d : c % d;
  for (u64 n = first; n < X; n += d)
    if (ds.contains(n)) {
      double l = t.mangoldt(n);
      if (l != 0.0) hit.push_back(l);
    }
  r.direct = pairwise_sum(hit.data(), hit.size());
  r.main_term = b_ratio(ds.base()) * double(ds.count(k)) / double(euler_phi_small(d));
  r.conservation_error = std::abs(r.major + r.minor - r.direct) / std::max(1.0, std::fabs(r.direct));
  return r;
}

DensityResult count_missing_digit_primes(const PrimeTables& t, const DigitSystem& ds, u64 X) {
  require(X >= 3 && X - 1 <= t.limit(), "X must lie in [3, table limit + 1]");
  u64 count = 0;
  for (auto p : t.primes()) {
    if (p >= X) break;
    if (ds.contains_digits(p)) ++count;
  }
  DensityResult r{count, 0.0, 0.0};
  r.predicted = ds.kappa().to_double() * std::pow(double(X), ds.zeta()) / std::log(double(X));
  r.ratio = double(count) / r.predicted;
  return r;
}

BuchstabResult buchstab_and_app(const PrimeTables& t, const DigitSystem& ds, u64 X, double alpha) {
  require(ds.base() % 2 == 1, "base must be odd");
  require(ds.residue().has_value(), "residue class r required");
  i64 r = *ds.residue(), b = ds.base();
  require(std::gcd(r * (r - 1), b) == 1, "gcd(r(r-1), b) must be 1");
  require(alpha > 2.0, "alpha must exceed 2");
  require(X >= 16 && X - 1 <= t.limit(), "X must lie in [16, table limit + 1]");
  double z = std::pow(double(X), 1.0 / alpha);
  double root = std::sqrt(double(X));
  auto in_p3 = [b](u64 p) { return p % 4 == 3 && u64(b) % p != 0; };

  BuchstabResult out{};
  out.predicted_scale = std::pow(double(X), ds.zeta()) / std::pow(std::log(double(X)), 1.5);
  std::vector<u64> family;  // p - 1 for the sifted family
  for (auto p32 : t.primes()) {
    u64 p = p32;
    if (p >= X) break;
    if (!ds.contains(p)) continue;
    if (p % 8 == 3) family.push_back(p - 1);
    if (t.quadratic_class(p - 1).in_B) ++out.app_count;
  }
  out.family_size = family.size();

  // smallest sifting prime factor of each member (0 if none)
  std::vector<u64> least(family.size(), 0);
  for (std::size_t i = 0; i < family.size(); ++i)
    for (auto [p, e] : t.factorize(family[i]))
      if (in_p3(p)) { least[i] = p; break; }

  for (std::size_t i = 0; i < family.size(); ++i) {
    double s = least[i] == 0 ? INFINITY : double(least[i]);
    if (s > z) ++out.S;
    if (s > root) {
      ++out.total;
      if (!t.quadratic_class(family[i]).in_B)
        throw CheckFailed("sifted member p-1 = " + std::to_string(family[i]) + " outside B");
    }
  }
  // T, accumulated prime by prime
  for (auto p32 : t.primes()) {
    u64 p1 = p32;
    if (double(p1) > root) break;
    if (double(p1) <= z || !in_p3(p1)) continue;
    for (std::size_t i = 0; i < family.size(); ++i)
      if (family[i] % p1 == 0 && least[i] == p1) ++out.T;
  }
  if (out.total != out.S - out.T) throw CheckFailed("Buchstab identity failed");
  if (out.app_count < out.total) throw CheckFailed("sifted count exceeds application count");
  return out;
}

cplx ramanujan_sum(u64 q, u64 a) {
  require(q >= 1, "q must be positive");
  std::vector<cplx> terms;
  for (u64 m = 1; m <= q; ++m) {
    if (std::gcd(m, q) != 1) continue;
    u64 r = u64((unsigned __int128)m * a % q);
    terms.push_back(std::conj(unit(double(r) / double(q))));
  }
  return pairwise_sum(terms.data(), terms.size());
}

}  // namespace mdap
