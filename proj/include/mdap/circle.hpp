#pragma once

#include <array>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "mdap/digitset.hpp"
#include "mdap/primetables.hpp"
#include "mdap/sieveweights.hpp"

namespace mdap {

enum class ArcKind { major1, major2, major3, minor };
const char* arc_name(ArcKind k);

struct ArcLabel {
  ArcKind kind;
  u64 a = 0;
  u64 q = 0;
  i64 eta = 0;
  double C;
};

// Priority major3 > major2 > major1 > minor; smallest q, then smallest a.
ArcLabel classify_arc(u64 t, u64 X, double C);

// Sum of Lambda(n) 1_A(n) over n < X, n = c mod d, minus the expected share.
double discrepancy_E(const PrimeTables& t, const DigitSystem& ds, u64 X, u64 d, u64 c);

enum class WeightKind { abs_max_c, fixed_c, factorable_pair, well_factorable, sieve_semi, sieve_lin };
const char* weight_kind_name(WeightKind k);
WeightKind parse_weight_kind(const std::string& s);

struct WeightSpec {
  WeightKind kind = WeightKind::abs_max_c;
  u64 D = 0;
  u64 c = 1;
  u64 D1 = 0;
  u64 D2 = 0;
  std::vector<std::pair<u64, double>> xi;  // well_factorable coefficients
  std::optional<SieveWeight> sieve;        // sieve_semi / sieve_lin
  std::function<double(u64)> h;            // sieve_lin coefficients on l
  u64 L = 0;
};

struct DiscrepancyRow {
  u64 d;
  u64 d1;
  u64 d2;
  u64 c;
  double E;
  double weight;
};

struct DiscrepancyReport {
  WeightKind kind;
  u64 X;
  int b;
  int r;
  std::vector<DiscrepancyRow> rows;
  double aggregate;
};

DiscrepancyReport weighted_discrepancy(const PrimeTables& t, const DigitSystem& ds, u64 X,
                                       const WeightSpec& spec);
double recompute_aggregate(const DiscrepancyReport& rep);

// Coprime convolution xi = xi1 * xi2 restricted to d <= D.
std::vector<std::pair<u64, double>> well_factorable_xi(const std::vector<double>& xi1,
                                                       const std::vector<double>& xi2, u64 D);

struct ArcSplit {
  cplx major;
  cplx minor;
  std::array<cplx, 4> by_kind;  // indexed by ArcKind
  double direct;
  double main_term;
  double conservation_error;  // |major + minor - direct| / max(1, |direct|)
};
ArcSplit arc_split(const PrimeTables& t, const DigitSystem& ds, u64 X, u64 d, u64 c, double C);

struct DensityResult {
  u64 count;
  double predicted;
  double ratio;
};
DensityResult count_missing_digit_primes(const PrimeTables& t, const DigitSystem& ds, u64 X);

struct BuchstabResult {
  u64 total;
  u64 S;
  u64 T;
  u64 app_count;
  double predicted_scale;
  u64 family_size;
};
BuchstabResult buchstab_and_app(const PrimeTables& t, const DigitSystem& ds, u64 X, double alpha);

cplx ramanujan_sum(u64 q, u64 a);

}  // namespace mdap
