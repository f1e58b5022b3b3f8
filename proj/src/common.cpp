#include "mdap/common.hpp"

#include <cmath>
#include <cstdlib>
#include <numeric>

namespace mdap {

namespace {
constexpr u64 kDefaultBudget = 4'000'000'000ULL;

i64 checked_mul(i64 a, i64 b) {
  __int128 p = (__int128)a * b;
  if (p > INT64_MAX || p < INT64_MIN) throw PreconditionError("rational overflow");
  return (i64)p;
}
}  // namespace

u64 scan_budget() {
  if (const char* s = std::getenv("MDAP_SCAN_BUDGET")) {
    char* end = nullptr;
    double v = std::strtod(s, &end);
    if (end != s && v > 0) return (u64)v;
  }
  return kDefaultBudget;
}

void charge_budget(u64 work, const char* what) {
  if (work > scan_budget())
    throw BudgetExceeded(std::string(what) + ": scan of " + std::to_string(work) +
                         " exceeds budget " + std::to_string(scan_budget()));
}

Rational::Rational(i64 num, i64 den) {
  if (den == 0) throw PreconditionError("rational with zero denominator");
  if (den < 0) num = -num, den = -den;
  i64 g = std::gcd(num < 0 ? -num : num, den);
  if (g == 0) g = 1;
  num_ = num / g;
  den_ = den / g;
}

std::string Rational::str() const {
  return den_ == 1 ? std::to_string(num_) : std::to_string(num_) + "/" + std::to_string(den_);
}

Rational operator+(const Rational& x, const Rational& y) {
  i64 g = std::gcd(x.den_, y.den_);
  i64 l = checked_mul(x.den_ / g, y.den_);
  return Rational(checked_mul(x.num_, l / x.den_) + checked_mul(y.num_, l / y.den_), l);
}
Rational operator-(const Rational& x, const Rational& y) { return x + Rational(-y.num_, y.den_); }
Rational operator*(const Rational& x, const Rational& y) {
  Rational a(x.num_, y.den_), b(y.num_, x.den_);
  return Rational(checked_mul(a.num_, b.num_), checked_mul(a.den_, b.den_));
}
Rational operator/(const Rational& x, const Rational& y) {
  if (y.num_ == 0) throw PreconditionError("rational division by zero");
  return x * Rational(y.den_, y.num_);
}

std::vector<cplx> twiddles(u64 X) {
  std::vector<cplx> w(X);
  for (u64 j = 0; j < X; ++j) {
    double ang = 2.0 * std::numbers::pi * (double(j) / double(X));
    w[j] = {std::cos(ang), std::sin(ang)};
  }
  return w;
}

template <class T>
static T pairwise_impl(const T* v, std::size_t n) {
  if (n <= 32) {
    T s{};
    for (std::size_t i = 0; i < n; ++i) s += v[i];
    return s;
  }
  std::size_t h = n / 2;
  return pairwise_impl(v, h) + pairwise_impl(v + h, n - h);
}

double pairwise_sum(const double* v, std::size_t n) { return pairwise_impl(v, n); }
cplx pairwise_sum(const cplx* v, std::size_t n) { return pairwise_impl(v, n); }

u64 ipow(u64 base, int exp) {
  u64 r = 1;
  for (int i = 0; i < exp; ++i) {
    if (base != 0 && r > UINT64_MAX / base) throw PreconditionError("integer power overflows 64 bits");
    r *= base;
  }
  return r;
}

u64 gcd_u(u64 a, u64 b) { return std::gcd(a, b); }

}  // namespace mdap
