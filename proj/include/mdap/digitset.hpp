#pragma once

#include <optional>
#include <vector>

#include "mdap/common.hpp"

namespace mdap {

struct DensityConstants {
  double zeta;     // log(b-1)/log(b)
  Rational kappa;  // b(phi(b) - [gcd(a0,b)=1]) / ((b-1) phi(b))
};

// Integers whose base-b expansion avoids one digit, optionally restricted to
// a last-digit residue class mod b.
class DigitSystem {
 public:
  DigitSystem(int base, int excluded, std::optional<int> residue = std::nullopt);

  int base() const { return b_; }
  int excluded() const { return a0_; }
  const std::optional<int>& residue() const { return r_; }
  DigitSystem without_residue() const { return DigitSystem(b_, a0_); }

  bool contains(u64 n) const;
  bool contains_digits(u64 n) const;  // ignores the residue restriction

  u64 count(int k) const;
  std::vector<u64> enumerate(int k) const;
  u64 unrank(int k, u64 i) const;
  u64 rank(int k, u64 n) const;
  u64 modulus(int k) const { return ipow(b_, k); }

  double zeta() const;
  Rational kappa() const;
  DensityConstants density_constants() const { return {zeta(), kappa()}; }

  // Allowed digits in increasing order.
  const std::vector<int>& digits() const { return allowed_; }

 private:
  u64 count_closed(int k) const;
  u64 unrank_fixed(int positions, u64 i) const;  // a0 != 0 path

  int b_;
  int a0_;
  std::optional<int> r_;
  std::vector<int> allowed_;
};

int euler_phi_small(u64 n);

}  // namespace mdap
