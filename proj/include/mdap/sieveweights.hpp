#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "mdap/expsums.hpp"
#include "mdap/primetables.hpp"

namespace mdap {

enum class SieveSide { upper, lower };

using PrimeSet = std::function<bool(u64)>;

PrimeSet all_primes();
PrimeSet primes_3mod4_not_dividing(u64 b);

struct SieveSpec {
  int degree;          // 1 = semi-linear, 2 = linear
  SieveSide side;
  double level;        // D
  double sift_limit;   // z; sifting primes p <= z
  PrimeSet prime_set;  // predicate on primes
  double rho = 0.0;    // exponent: level = X^rho (well-factorization contract)
  double delta = 1e-3;
  double eps = 1e-6;
};

// Checks the chain condition on d = p1 p2 ... (p1 > p2 > ...).
bool support_member(u64 d, const SieveSpec& spec, const PrimeTables& t);

class SieveWeight {
 public:
  SieveWeight(std::vector<std::pair<u64, int>> entries) : entries_(std::move(entries)) {}
  int at(u64 d) const;
  const std::vector<std::pair<u64, int>>& entries() const { return entries_; }
  std::size_t size() const { return entries_.size(); }
  u64 max_d() const { return entries_.empty() ? 0 : entries_.back().first; }

 private:
  std::vector<std::pair<u64, int>> entries_;  // sorted by d
};

SieveWeight build_weights(const SieveSpec& spec, const PrimeTables& t);

struct SandwichViolation {
  u64 n;
  i64 lower;
  int indicator;
  i64 upper;
};

struct SandwichResult {
  bool ok;
  u64 checked;
  std::vector<SandwichViolation> violations;  // first few only
  u64 violation_count;
};

SandwichResult sandwich_check(const SieveWeight& lower, const SieveWeight& upper, const PrimeTables& t,
                              double z, const PrimeSet& primes, u64 n_lo, u64 n_hi);

// Sum of c(n) over n coprime to P(z) = prod of sifting primes p <= z.
double sift_direct(const WeightSeq& c, const PrimeSet& primes, double z, const PrimeTables& t);

struct WellSplit {
  u64 d1;
  u64 d2;
  int prefix_len;
};

// Contract intervals for the well-factorization split.
struct WellContract {
  double rho;
  double z_max;
  double D0_lo;
  double D0_hi;
  double d_lo;
  double d_hi;
};
WellContract well_contract(int degree, double X, double delta, double eps);

WellSplit well_factor(u64 d, const SieveSpec& spec, double D0, double X, const PrimeTables& t);

}  // namespace mdap
