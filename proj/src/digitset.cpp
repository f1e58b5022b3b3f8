#include "mdap/digitset.hpp"

#include <cmath>
#include <numeric>

namespace mdap {

int euler_phi_small(u64 n) {
  u64 r = n;
  for (u64 p = 2; p * p <= n; ++p) {
    if (n % p) continue;
    while (n % p == 0) n /= p;
    r -= r / p;
  }
  if (n > 1) r -= r / n;
  return int(r);
}

DigitSystem::DigitSystem(int base, int excluded, std::optional<int> residue)
    : b_(base), a0_(excluded), r_(residue) {
  require(b_ >= 3, "base must be at least 3");
  require(a0_ >= 0 && a0_ < b_, "excluded digit must lie in [0, b)");
  if (r_) {
    require(*r_ >= 0 && *r_ < b_, "residue must lie in [0, b)");
    require(*r_ != a0_, "residue digit equals the excluded digit");
  }
  for (int d = 0; d < b_; ++d)
    if (d != a0_) allowed_.push_back(d);
}

bool DigitSystem::contains_digits(u64 n) const {
  if (n == 0) return a0_ != 0;
  for (; n; n /= b_)
    if (int(n % b_) == a0_) return false;
  return true;
}

bool DigitSystem::contains(u64 n) const {
  if (r_ && int(n % b_) != *r_) return false;
  return contains_digits(n);
}

double DigitSystem::zeta() const { return std::log(double(b_ - 1)) / std::log(double(b_)); }

Rational DigitSystem::kappa() const {
  i64 phi = euler_phi_small(b_);
  i64 coprime = std::gcd(a0_, b_) == 1 ? 1 : 0;
  return Rational(i64(b_) * (phi - coprime), i64(b_ - 1) * phi);
}

u64 DigitSystem::count_closed(int k) const {
  return r_ ? ipow(b_ - 1, k - 1) : ipow(b_ - 1, k);
}

u64 DigitSystem::count(int k) const {
  require(k >= 1, "k must be positive");
  (void)modulus(k);  // X = b^k must be representable
  if (a0_ != 0) return count_closed(k);
  return enumerate(k).size();
}

u64 DigitSystem::unrank_fixed(int positions, u64 i) const {
  u64 n = 0, scale = 1;
  for (int p = 0; p < positions; ++p) {
    n += scale * u64(allowed_[i % (b_ - 1)]);
    i /= (b_ - 1);
    scale *= b_;
  }
  return n;
}

u64 DigitSystem::unrank(int k, u64 i) const {
  require(k >= 1, "k must be positive");
  (void)modulus(k);
  if (a0_ != 0) {
    if (i >= count_closed(k)) throw PreconditionError("index out of range");
    return r_ ? unrank_fixed(k - 1, i) * b_ + u64(*r_) : unrank_fixed(k, i);
  }
  // a0 = 0: members of length j = 1..k, shorter ones first.
  for (int j = 1; j <= k; ++j) {
    int free = r_ ? j - 1 : j;
    u64 block = ipow(b_ - 1, free);
    if (i < block) {
      u64 top = 0, scale = 1, idx = i;
      for (int p = 0; p < free; ++p) {
        top += scale * u64(idx % (b_ - 1) + 1);
        idx /= (b_ - 1);
        scale *= b_;
      }
      return r_ ? top * b_ + u64(*r_) : top;
    }
    i -= block;
  }
  throw PreconditionError("index out of range");
}

u64 DigitSystem::rank(int k, u64 n) const {
  require(k >= 1, "k must be positive");
  require(n < modulus(k) && contains(n), "rank of a non-member");
  u64 body = n;
  if (r_) body /= b_;
  if (a0_ != 0) {
    int positions = r_ ? k - 1 : k;
    u64 idx = 0, scale = 1;
    for (int p = 0; p < positions; ++p) {
      int d = int(body % b_);
      idx += scale * u64(d > a0_ ? d - 1 : d);
      body /= b_;
      scale *= (b_ - 1);
    }
    return idx;
  }
  int len = 0;
  for (u64 m = n; m; m /= b_) ++len;
  u64 idx = 0;
  for (int j = 1; j < len; ++j) idx += ipow(b_ - 1, r_ ? j - 1 : j);
  u64 scale = 1;
  for (; body; body /= b_) {
    idx += scale * u64(body % b_ - 1);
    scale *= (b_ - 1);
  }
  return idx;
}

std::vector<u64> DigitSystem::enumerate(int k) const {
  require(k >= 1, "k must be positive");
  (void)modulus(k);
  u64 total = 0;
  if (a0_ != 0) {
    total = count_closed(k);
  } else {
    for (int j = 1; j <= k; ++j) total += ipow(b_ - 1, r_ ? j - 1 : j);
  }
  charge_budget(total, "enumerate");
  std::vector<u64> out;
  out.reserve(total);
  for (u64 i = 0; i < total; ++i) out.push_back(unrank(k, i));
  return out;
}

}  // namespace mdap
