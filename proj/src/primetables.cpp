#include "mdap/primetables.hpp"

#include <algorithm>
#include <cmath>
#include <new>

namespace mdap {

namespace {
constexpr u64 kSegment = 1u << 18;
}

PrimeTables::PrimeTables(u64 limit) : limit_(limit) {
  require(limit >= 2, "prime table limit must be at least 2");
  require(limit < (u64(1) << 32), "prime table limit must fit in 32 bits");
  try {
    spf_.assign(limit + 1, 0);
  } catch (const std::bad_alloc&) {
    throw BudgetExceeded("out of memory allocating prime table of size " + std::to_string(limit));
  }

  u64 root = u64(std::sqrt(double(limit)));
  while ((root + 1) * (root + 1) <= limit) ++root;
  std::vector<std::uint32_t> base;
  {
    std::vector<bool> comp(root + 1, false);
    for (u64 i = 2; i <= root; ++i) {
      if (comp[i]) continue;
      base.push_back(std::uint32_t(i));
      for (u64 j = i * i; j <= root; j += i) comp[j] = true;
    }
  }

  // Base primes in increasing order, so the first writer is the smallest factor.
  for (u64 lo = 0; lo <= limit; lo += kSegment) {
    u64 hi = std::min(limit, lo + kSegment - 1);
    for (std::uint32_t p : base) {
      u64 pp = u64(p) * p;
      if (pp > hi) break;
      u64 start = std::max(pp, (lo + p - 1) / p * p);
      for (u64 j = start; j <= hi; j += p)
        if (spf_[j] == 0) spf_[j] = p;
    }
    for (u64 j = std::max<u64>(lo, 2); j <= hi; ++j)
      if (spf_[j] == 0) {
        spf_[j] = std::uint32_t(j);
        primes_.push_back(std::uint32_t(j));
      }
  }
}

void PrimeTables::check(u64 n) const {
  if (n > limit_)
    throw PreconditionError("argument " + std::to_string(n) + " exceeds table limit " +
                            std::to_string(limit_));
}

u64 PrimeTables::spf(u64 n) const {
  check(n);
  return spf_[n];
}

std::vector<std::pair<u64, int>> PrimeTables::factorize(u64 n) const {
  check(n);
  require(n >= 1, "factorize(0)");
  std::vector<std::pair<u64, int>> f;
  while (n > 1) {
    u64 p = spf_[n];
    int e = 0;
    while (n % p == 0) n /= p, ++e;
    f.emplace_back(p, e);
  }
  return f;
}

double PrimeTables::mangoldt(u64 n) const {
  check(n);
  if (n < 2) return 0.0;
  u64 p = spf_[n], m = n;
  while (m % p == 0) m /= p;
  return m == 1 ? std::log(double(p)) : 0.0;
}

int PrimeTables::mobius(u64 n) const {
  int mu = 1;
  for (auto [p, e] : factorize(n)) {
    if (e > 1) return 0;
    mu = -mu;
  }
  return mu;
}

u64 PrimeTables::totient(u64 n) const {
  u64 r = n;
  for (auto [p, e] : factorize(n)) r -= r / p;
  return r;
}

u64 PrimeTables::tau(u64 n, int h) const {
  require(h >= 1, "divisor function order must be positive");
  u64 r = 1;
  for (auto [p, e] : factorize(n)) {
    // binom(e + h - 1, h - 1)
    u64 c = 1;
    for (int i = 1; i <= h - 1; ++i) c = c * u64(e + i) / u64(i);
    r *= c;
  }
  return r;
}

Arith PrimeTables::arith(u64 n) const { return {mobius(n), totient(n)}; }

QuadraticClass PrimeTables::quadratic_class(u64 n) const {
  require(n >= 1, "quadratic_class(0)");
  QuadraticClass qc{true, true};
  for (auto [p, e] : factorize(n)) {
    if (p % 4 == 1) continue;
    qc.in_Bcal = false;
    if (p != 2 || e > 1) qc.in_B = false;
  }
  return qc;
}

double PrimeTables::psi_progression(u64 y, u64 d, u64 c, u64 q, u64 m, PsiVariant variant) const {
  require(d >= 1 && q >= 1, "moduli must be positive");
  check(y);
  double s = 0.0;
  u64 first = c % d;
  if (first == 0) first = d;
  for (u64 n = first; n <= y; n += d) {
    if (n % q != m % q) continue;
    if (variant == PsiVariant::three_mod_8 && n % 8 != 3) continue;
    s += mangoldt(n);
  }
  return s;
}

}  // namespace mdap
