#pragma once

#include <utility>
#include <vector>

#include "mdap/common.hpp"

namespace mdap {

struct QuadraticClass {
  bool in_B;     // n = 2^e m, e in {0,1}, every prime of m is 1 mod 4
  bool in_Bcal;  // every prime factor is 1 mod 4
};

struct Arith {
  int mu;
  u64 phi;
};

enum class PsiVariant { plain, three_mod_8 };

// Smallest-prime-factor table on [0, limit], built with a segmented sieve.
class PrimeTables {
 public:
  explicit PrimeTables(u64 limit);

  u64 limit() const { return limit_; }
  u64 spf(u64 n) const;
  bool is_prime(u64 n) const { return n >= 2 && spf(n) == n; }
  const std::vector<std::uint32_t>& primes() const { return primes_; }

  std::vector<std::pair<u64, int>> factorize(u64 n) const;
  double mangoldt(u64 n) const;
  int mobius(u64 n) const;
  u64 totient(u64 n) const;
  u64 tau(u64 n, int h) const;  // h-fold divisor function
  Arith arith(u64 n) const;
  QuadraticClass quadratic_class(u64 n) const;

  // Sum of Lambda(n) over n <= y with n = c mod d and n = m mod q.
  double psi_progression(u64 y, u64 d, u64 c, u64 q = 1, u64 m = 0,
                         PsiVariant variant = PsiVariant::plain) const;

 private:
  void check(u64 n) const;

  u64 limit_;
  std::vector<std::uint32_t> spf_;
  std::vector<std::uint32_t> primes_;
};

}  // namespace mdap
