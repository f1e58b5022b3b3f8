#pragma once

#include <functional>
#include <string>

#include "mdap/primetables.hpp"

namespace mdap {

inline constexpr double kEulerGamma = 0.57721566490153286061;

enum class SieveFnKind { sem_F, sem_f, lin_F, lin_f };
SieveFnKind parse_sieve_fn(const std::string& name);
double sieve_fn(SieveFnKind kind, double u);

// Adaptive Simpson on [a, b]; throws if the recursion cannot reach tol.
double adaptive_simpson(const std::function<double(double)>& f, double a, double b, double tol,
                        int max_depth = 50);

// (1/sqrt(rho)) * log(1 + 2(u-1) + 2 sqrt(u(u-1))), u = alpha rho
double I_sem(double rho, double alpha);
// int_2^alpha log(y-1) / (y sqrt(1 - y/alpha)) dy
double lin_integral(double alpha);
double I_lin(double rho, double alpha);

struct Interval {
  double value;
  double lo;
  double hi;
};

struct EulerConstants {
  Interval C1, C2, C3, singular;  // singular = C2 C3 / 2
  u64 p_limit;
};
EulerConstants euler_constants(const PrimeTables& t, u64 p_limit);

struct MertensResult {
  double product;
  double predicted;
  double ratio;
};
MertensResult mertens_3mod4(const PrimeTables& t, u64 y);

double t_weight(const PrimeTables& t, u64 n);

struct TWeightResult {
  double value;
  double predicted;
  double ratio;
  u64 terms;
};
TWeightResult t_weight_sum(const PrimeTables& t, double X, double alpha, u64 b);

struct BOverPhi {
  Rational divisor_sum;  // sum_{q | b} mu^2(q)/phi(q)
  Rational closed_form;  // b / phi(b)
};
BOverPhi b_over_phi(u64 b);

}  // namespace mdap
