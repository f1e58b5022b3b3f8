#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

namespace mdap {

using u64 = std::uint64_t;
using i64 = std::int64_t;
using cplx = std::complex<double>;

// Exit-code carrying error types. The CLI maps them onto 2/3/4.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
  virtual int exit_code() const noexcept { return 4; }
  virtual const char* kind() const noexcept { return "internal"; }
};

class PreconditionError : public Error {
 public:
  using Error::Error;
  int exit_code() const noexcept override { return 2; }
  const char* kind() const noexcept override { return "precondition"; }
};

class BudgetExceeded : public Error {
 public:
  using Error::Error;
  int exit_code() const noexcept override { return 3; }
  const char* kind() const noexcept override { return "budget"; }
};

class CheckFailed : public Error {
 public:
  using Error::Error;
  int exit_code() const noexcept override { return 4; }
  const char* kind() const noexcept override { return "check_failed"; }
};

inline void require(bool ok, const std::string& msg) {
  if (!ok) throw PreconditionError(msg);
}

// Scan budget, in elementary loop iterations. MDAP_SCAN_BUDGET overrides.
u64 scan_budget();
void charge_budget(u64 work, const char* what);

// Exact rational with int64 parts, always normalized (den > 0).
class Rational {
 public:
  Rational(i64 num = 0, i64 den = 1);
  i64 num() const { return num_; }
  i64 den() const { return den_; }
  double to_double() const { return double(num_) / double(den_); }
  std::string str() const;

  friend Rational operator+(const Rational& x, const Rational& y);
  friend Rational operator-(const Rational& x, const Rational& y);
  friend Rational operator*(const Rational& x, const Rational& y);
  friend Rational operator/(const Rational& x, const Rational& y);
  friend bool operator==(const Rational& x, const Rational& y) = default;
  friend std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

 private:
  i64 num_;
  i64 den_;
};

// e(x) = exp(2 pi i x), argument reduced mod 1 first.
inline cplx unit(double x) {
  double f = x - std::floor(x);
  double ang = 2.0 * std::numbers::pi * f;
  return {std::cos(ang), std::sin(ang)};
}

// Table of e(j/X) for j in [0, X).
std::vector<cplx> twiddles(u64 X);

// Pairwise (cascade) summation, used for long reductions.
double pairwise_sum(const double* v, std::size_t n);
cplx pairwise_sum(const cplx* v, std::size_t n);

u64 ipow(u64 base, int exp);  // throws PreconditionError on overflow
u64 gcd_u(u64 a, u64 b);

}  // namespace mdap
