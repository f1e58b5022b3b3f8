#pragma once

#include <map>
#include <utility>
#include <vector>

#include "mdap/digitset.hpp"

namespace mdap {

// Fourier transform of the indicator of the digit set on [0, b^k).
cplx eval_hat(const DigitSystem& ds, int k, double theta);
// Same at theta = t/X with X = b^k, phases computed exactly in integers.
cplx eval_hat_frac(const DigitSystem& ds, int k, u64 t);
// All values hat(t/X), t in [0, X).
std::vector<cplx> hat_table(const DigitSystem& ds, int k);

// (1/X) sum_t hat(t/X) e(-n t/X); the table must come from hat_table.
double inversion_indicator(const std::vector<cplx>& table, const std::vector<cplx>& tw, u64 n);
double inversion_indicator(const DigitSystem& ds, int k, u64 n);

struct L1Stats {
  int k;
  double l1_total;
  double c_b_estimate;
  double alpha_b_estimate;
};
L1Stats l1_and_cb(const DigitSystem& ds, int k);

struct HybridResult {
  double value;
  double bound;  // (b-1)^k (Q^2 B)^alpha + Q^2 B (c_b log b)^k with measured c_b, alpha
  double ratio;
  u64 points;
};
HybridResult hybrid_sum(const DigitSystem& ds, int k, u64 Q, u64 B);

struct FourierStats {
  std::vector<L1Stats> by_k;
  std::map<std::pair<u64, u64>, HybridResult> hybrid;
};

struct LinfProbe {
  double value;
  double trivial;   // count(k)
  double cb_decay;  // -log(value/trivial) * log q / k
};
LinfProbe linf_probe(const DigitSystem& ds, int k, u64 q, u64 a, double eps);

}  // namespace mdap
