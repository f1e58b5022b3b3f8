#include "mdap/expsums.hpp"

#include <cmath>
#include <limits>
#include <numeric>

namespace mdap {

namespace {

// e(v a/q + v beta), rational part reduced exactly
cplx phase(u64 v, const ThetaApprox& ta) {
  u64 r = u64((unsigned __int128)v * ta.a % ta.q);
  long double x = (long double)r / ta.q + (long double)v * ta.beta;
  x -= std::floor(x);
  return unit(double(x));
}

cplx phase_real(u64 n, double theta) {
  long double x = (long double)n * theta;
  x -= std::floor(x);
  return unit(double(x));
}

}  // namespace

ThetaApprox make_theta(u64 a, u64 q, double beta, double X) {
  require(q >= 1, "q must be positive");
  require(std::gcd(a, q) == 1, "a/q must be reduced");
  require(X >= 1, "X must be at least 1");
  return {double(a) / double(q) + beta, a, q, beta, X, 1.0 + std::fabs(beta) * X};
}

ThetaApprox dirichlet_approx(double theta, u64 Q, double X) {
  require(Q >= 1, "Q must be positive");
  require(std::isfinite(theta), "theta must be finite");
  double frac = theta - std::floor(theta);
  long double x = frac;
  // convergents h/k
  i64 h_prev = 1, h = 0, k_prev = 0, k = 1;
  long double ai = std::floor(x);
  h = i64(ai);
  long double rem = x - ai;
  for (;;) {
    double beta = double((long double)frac - (long double)h / k);
    if (std::fabs(beta) <= 1.0 / (double(k) * double(Q)) && u64(k) <= Q) {
      ThetaApprox ta{theta, u64(h), u64(k), beta, X, 1.0 + std::fabs(beta) * X};
      ta.theta = theta;
      return ta;
    }
    if (rem < 1e-15L) break;
    x = 1.0L / rem;
    ai = std::floor(x);
    rem = x - ai;
    i64 hn = i64(ai) * h + h_prev, kn = i64(ai) * k + k_prev;
    if (u64(kn) > Q) break;
    h_prev = h, h = hn, k_prev = k, k = kn;
  }
  // last convergent with k <= Q always qualifies in exact arithmetic; accept it
  double beta = double((long double)frac - (long double)h / k);
  return {theta, u64(h), u64(k), beta, X, 1.0 + std::fabs(beta) * X};
}

double dist_to_int(u64 m, const ThetaApprox& ta) {
  u64 r = u64((unsigned __int128)m * ta.a % ta.q);
  if (ta.beta == 0.0) return double(std::min(r, ta.q - r)) / double(ta.q);
  long double x = (long double)r / ta.q + (long double)m * ta.beta;
  x -= std::floor(x);
  return double(std::min(x, 1.0L - x));
}

cplx lambda_hat(const PrimeTables& t, u64 X, u64 d, u64 c, double theta) {
  require(d >= 1, "modulus must be positive");
  require(X >= 1 && X - 1 <= t.limit(), "X exceeds prime table");
  std::vector<cplx> terms;
  u64 first = c % d == 0 ? d : c % d;
  for (u64 n = first; n < X; n += d) {
    double l = t.mangoldt(n);
    if (l != 0.0) terms.push_back(l * phase_real(n, theta));
  }
  return pairwise_sum(terms.data(), terms.size());
}

std::vector<cplx> lambda_hat_table(const PrimeTables& t, u64 X, u64 d, u64 c,
                                   const std::function<bool(u64)>& extra) {
  require(d >= 1, "modulus must be positive");
  require(X >= 1 && X - 1 <= t.limit(), "X exceeds prime table");
  std::vector<std::pair<u64, double>> support;
  u64 first = c % d == 0 ? d : c % d;
  for (u64 n = first; n < X; n += d) {
    double l = t.mangoldt(n);
    if (l != 0.0 && (!extra || extra(n))) support.emplace_back(n, l);
  }
  charge_budget(X * (support.size() + 1), "lambda_hat_table");
  auto tw = twiddles(X);
  std::vector<cplx> out(X, 0.0);
  for (auto [n, l] : support) {
    u64 idx = 0;
    for (u64 s = 0; s < X; ++s) {
      out[s] += l * std::conj(tw[idx]);
      idx += n;
      if (idx >= X) idx -= X;
    }
  }
  return out;
}

MinSumResult min_sum(MinSumMode mode, u64 M, double cap, const ThetaApprox& ta) {
  require(M >= 1, "M must be positive");
  require(cap > 0, "cap must be positive");
  charge_budget(M, "min_sum");
  std::vector<double> terms(M);
  for (u64 m = 1; m <= M; ++m) {
    double first = mode == MinSumMode::linear ? cap : cap / double(m) + 1.0;
    double dist = dist_to_int(m, ta);
    terms[m - 1] = dist == 0.0 ? first : std::min(first, 1.0 / dist);
  }
  MinSumResult r{pairwise_sum(terms.data(), terms.size()), 0.0};
  double q = double(ta.q), Md = double(M), ab = std::fabs(ta.beta);
  double lg = std::log(2.0 * q * Md);
  if (mode == MinSumMode::linear) {
    r.bound = ab == 0.0 ? std::numeric_limits<double>::infinity()
                        : (Md + Md * cap * q * ab + 1.0 / (q * ab)) * lg;
  } else {
    double X = cap, H = ta.H;
    r.bound = X * (Md / X + q * H / X + 1.0 / (q * H)) * lg * lg;
  }
  return r;
}

double WeightSeq::l2() const {
  std::vector<double> sq(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) sq[i] = values[i] * values[i];
  return std::sqrt(pairwise_sum(sq.data(), sq.size()));
}

BilinearResult bilinear_sum(const WeightSeq& a1, const WeightSeq& a2, u64 X, const ThetaApprox& ta,
                            u64 d, u64 c) {
  require(d >= 1, "modulus must be positive");
  require(a1.start >= 1 && a2.start >= 1, "weights must live on positive integers");
  charge_budget(u64(a1.values.size()) * u64(a2.values.size()), "bilinear_sum");
  std::vector<cplx> terms;
  for (std::size_t i = 0; i < a1.values.size(); ++i) {
    if (a1.values[i] == 0.0) continue;
    u64 m = a1.start + i;
    for (std::size_t j = 0; j < a2.values.size(); ++j) {
      if (a2.values[j] == 0.0) continue;
      u64 n = a2.start + j;
      u64 v = m * n;
      if (v >= X) break;
      if (v % d != c % d) continue;
      terms.push_back(a1.values[i] * a2.values[j] * phase(v, ta));
    }
  }
  BilinearResult r{};
  r.value = pairwise_sum(terms.data(), terms.size());
  r.norm1 = a1.l2();
  r.norm2 = a2.l2();
  double Xd = double(X), q = double(ta.q), H = ta.H;
  double M = double(a1.last()), N = double(a2.last());
  r.bound = std::sqrt(Xd) * r.norm1 * r.norm2 *
            std::sqrt(M / Xd + N / Xd + q * H / Xd + 1.0 / (q * H)) * std::log(2.0 * q * Xd);
  r.ratio = r.bound > 0 ? std::abs(r.value) / r.bound : 0.0;
  return r;
}

VaughanParts vaughan_decompose(const PrimeTables& t, u64 X, u64 U, u64 d, u64 c, double theta) {
  require(X >= 2 && X - 1 <= t.limit(), "X must satisfy 2 <= X <= table limit + 1");
  require(U >= 1, "U must be positive");
  require(d >= 1, "modulus must be positive");
  charge_budget(X * 64, "vaughan_decompose");
  std::vector<double> lam(X, 0.0), lg(X, 0.0);
  std::vector<int> mu(X, 0);
  for (u64 n = 1; n < X; ++n) {
    lam[n] = t.mangoldt(n);
    mu[n] = t.mobius(n);
    lg[n] = std::log(double(n));
  }
  std::vector<double> A1(X, 0.0), A2(X, 0.0), A3(X, 0.0), A4(X, 0.0), A5(X, 0.0);
  std::vector<double> F(X, 0.0), G(X, 0.0);
  for (u64 n = 1; n < X && n <= U; ++n) A1[n] = lam[n];
  for (u64 b = 1; b <= U && b < X; ++b) {
    if (!mu[b]) continue;
    for (u64 m = 1; b * m < X; ++m) A2[b * m] += mu[b] * lg[m];
    for (u64 cc = 2; cc <= U && b * cc < X; ++cc)
      if (lam[cc] != 0.0) F[b * cc] += mu[b] * lam[cc];
  }
  for (u64 b = U + 1; b < X; ++b) {
    if (!mu[b]) continue;
    for (u64 cc = U + 1; b * cc < X; ++cc)
      if (lam[cc] != 0.0) G[b * cc] += mu[b] * lam[cc];
  }
  for (u64 m = 1; m < X; ++m) {
    if (F[m] != 0.0) {
      auto& dst = m <= U ? A3 : A4;
      for (u64 n = m; n < X; n += m) dst[n] += F[m];
    }
    if (G[m] != 0.0)
      for (u64 n = m; n < X; n += m) A5[n] += G[m];
  }
  const std::vector<double>* parts[5] = {&A1, &A2, &A3, &A4, &A5};
  VaughanParts out{};
  std::vector<std::vector<cplx>> terms(6);
  u64 first = c % d == 0 ? d : c % d;
  for (u64 n = first; n < X; n += d) {
    cplx e = phase_real(n, theta);
    for (int i = 0; i < 5; ++i)
      if ((*parts[i])[n] != 0.0) terms[i].push_back((*parts[i])[n] * e);
    if (lam[n] != 0.0) terms[5].push_back(lam[n] * e);
  }
  for (int i = 0; i < 5; ++i) out.S[i] = pairwise_sum(terms[i].data(), terms[i].size());
  out.direct = pairwise_sum(terms[5].data(), terms[5].size());
  cplx recon = out.S[0] + out.S[1] - out.S[2] - out.S[3] + out.S[4];
  out.residual = std::abs(out.direct - recon);
  return out;
}

MikawaResult mikawa_W(const PrimeTables& t, u64 M, u64 N, u64 X, const ThetaApprox& ta) {
  require(M >= 1 && N >= 1, "M and N must be positive");
  require(X >= 2, "X must be at least 2");
  require(2 * N <= t.limit(), "2N exceeds prime table");
  charge_budget(M * N, "mikawa_W");
  std::vector<double> terms;
  for (u64 m = M + 1; m <= 2 * M; ++m) {
    for (u64 n = N + 1; n <= 2 * N; ++n) {
      u64 v = m * m * n;
      double first = double(X) / double(v) + 1.0;
      double dist = dist_to_int(v, ta);
      double mn = dist == 0.0 ? first : std::min(first, 1.0 / dist);
      terms.push_back(double(t.tau(n, 3)) * mn);
    }
  }
  MikawaResult r{};
  r.W = double(M) * pairwise_sum(terms.data(), terms.size());
  double L = std::log(double(X)), q = double(ta.q), H = ta.H, Xd = double(X);
  r.bound = double(M) * double(M) * double(N) * L * L * L +
            Xd * std::pow(1.0 / double(M) + q * H / Xd + 1.0 / (q * H), 0.25) * std::pow(L, 8);
  r.ratio = r.W / r.bound;
  return r;
}

cplx typeI_sum(const TypeIWeights& w, TypeIMode mode, u64 M, const WeightSeq& alpha, int j, u64 X,
               double theta) {
  require(j == 0 || j == 1, "log power must be 0 or 1");
  require(M >= 1 && X >= 2, "M >= 1 and X >= 2 required");
  require(w.sigma.size() >= 2, "weights must cover at least d = 1");
  u64 D = w.sigma.size() - 1;
  if (mode == TypeIMode::fixed_residue) require(w.residue.size() == w.sigma.size(), "residue per d");
  charge_budget(X * (D + 16), "typeI_sum");
  // coefficient of each product v = m n
  std::vector<double> coef(X, 0.0);
  for (u64 m = 1; m <= M && m < X; ++m) {
    double am = alpha.at(m);
    if (am == 0.0) continue;
    for (u64 n = 1; m * n < X; ++n) coef[m * n] += am * (j ? std::log(double(n)) : 1.0);
  }
  std::vector<cplx> val(X, 0.0);
  for (u64 v = 1; v < X; ++v)
    if (coef[v] != 0.0) val[v] = coef[v] * phase_real(v, theta);
  std::vector<cplx> outer;
  std::vector<cplx> bucket;
  for (u64 d = 1; d <= D; ++d) {
    if (w.sigma[d] == 0.0) continue;
    bucket.assign(d, 0.0);
    for (u64 v = 1; v < X; ++v) bucket[v % d] += val[v];
    if (mode == TypeIMode::fixed_residue) {
      outer.push_back(w.sigma[d] * bucket[w.residue[d] % d]);
    } else {
      double best = 0.0;
      for (u64 cc = 0; cc < d; ++cc)
        if (std::gcd(cc, d) == 1) best = std::max(best, std::abs(bucket[cc]));
      outer.push_back(std::fabs(w.sigma[d]) * best);
    }
  }
  return pairwise_sum(outer.data(), outer.size());
}

}  // namespace mdap
