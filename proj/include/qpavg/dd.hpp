#pragma once

// Double-double arithmetic: a real number stored as the unevaluated sum
// hi + lo of two doubles with |lo| <= ulp(hi)/2, giving about 31 significant
// decimal digits. Basic operations are built from error-free transformations
// and rely on a correctly rounded fused multiply-add.

#include <cmath>
#include <cstdint>
#include <limits>
#include <string>
#include <string_view>
#include <tuple>
#include <utility>

namespace qpavg {

namespace eft {

/// s + e == a + b exactly.
inline std::pair<double, double> two_sum(double a, double b) noexcept {
  double s = a + b;
  double bb = s - a;
  double e = (a - (s - bb)) + (b - bb);
  return {s, e};
}

/// As two_sum, requires |a| >= |b| (or a == 0).
inline std::pair<double, double> quick_two_sum(double a, double b) noexcept {
  double s = a + b;
  double e = b - (s - a);
  return {s, e};
}

/// p + e == a * b exactly (barring over/underflow).
inline std::pair<double, double> two_prod(double a, double b) noexcept {
  double p = a * b;
  double e = std::fma(a, b, -p);
  return {p, e};
}

}  // namespace eft

struct DD {
  double hi = 0.0;
  double lo = 0.0;

  constexpr DD() = default;
  constexpr DD(double h) : hi(h), lo(0.0) {}  // NOLINT: implicit by design of the numeric tower
  constexpr DD(double h, double l) : hi(h), lo(l) {}
  constexpr DD(int v) : hi(static_cast<double>(v)), lo(0.0) {}  // NOLINT
  constexpr DD(long v) : hi(static_cast<double>(v)), lo(0.0) {}  // NOLINT
  constexpr DD(long long v) : hi(static_cast<double>(v)), lo(0.0) {}  // NOLINT
  constexpr DD(unsigned long v) : hi(static_cast<double>(v)), lo(0.0) {}  // NOLINT
  constexpr DD(unsigned long long v) : hi(static_cast<double>(v)), lo(0.0) {}  // NOLINT

  explicit constexpr operator double() const { return hi; }

  /// Renormalizes an arbitrary pair so that |lo| <= ulp(hi)/2.
  static DD normalized(double h, double l) noexcept {
    auto [s, e] = eft::two_sum(h, l);
    return {s, e};
  }
};

inline DD operator-(const DD& a) noexcept { return {-a.hi, -a.lo}; }

inline DD operator+(const DD& a, const DD& b) noexcept {
  auto [s1, s2] = eft::two_sum(a.hi, b.hi);
  auto [t1, t2] = eft::two_sum(a.lo, b.lo);
  s2 += t1;
  std::tie(s1, s2) = eft::quick_two_sum(s1, s2);
  s2 += t2;
  std::tie(s1, s2) = eft::quick_two_sum(s1, s2);
  return {s1, s2};
}

inline DD operator+(const DD& a, double b) noexcept {
  auto [s1, s2] = eft::two_sum(a.hi, b);
  s2 += a.lo;
  std::tie(s1, s2) = eft::quick_two_sum(s1, s2);
  return {s1, s2};
}

inline DD operator+(double a, const DD& b) noexcept { return b + a; }
inline DD operator-(const DD& a, const DD& b) noexcept { return a + (-b); }
inline DD operator-(const DD& a, double b) noexcept { return a + (-b); }
inline DD operator-(double a, const DD& b) noexcept { return (-b) + a; }

inline DD operator*(const DD& a, const DD& b) noexcept {
  auto [p1, p2] = eft::two_prod(a.hi, b.hi);
  p2 = std::fma(a.hi, b.lo, p2);
  p2 = std::fma(a.lo, b.hi, p2);
  std::tie(p1, p2) = eft::quick_two_sum(p1, p2);
  return {p1, p2};
}

inline DD operator*(const DD& a, double b) noexcept {
  auto [p1, p2] = eft::two_prod(a.hi, b);
  p2 = std::fma(a.lo, b, p2);
  std::tie(p1, p2) = eft::quick_two_sum(p1, p2);
  return {p1, p2};
}

inline DD operator*(double a, const DD& b) noexcept { return b * a; }

inline DD operator/(const DD& a, const DD& b) noexcept {
  double q1 = a.hi / b.hi;
  DD r = a - b * q1;
  double q2 = r.hi / b.hi;
  r = r - b * q2;
  double q3 = r.hi / b.hi;
  auto [s, e] = eft::quick_two_sum(q1, q2);
  return DD{s, e} + q3;
}

inline DD operator/(const DD& a, double b) noexcept { return a / DD{b}; }
inline DD operator/(double a, const DD& b) noexcept { return DD{a} / b; }

inline DD& operator+=(DD& a, const DD& b) noexcept { return a = a + b; }
inline DD& operator-=(DD& a, const DD& b) noexcept { return a = a - b; }
inline DD& operator*=(DD& a, const DD& b) noexcept { return a = a * b; }
inline DD& operator/=(DD& a, const DD& b) noexcept { return a = a / b; }

inline bool operator==(const DD& a, const DD& b) noexcept { return a.hi == b.hi && a.lo == b.lo; }
inline bool operator!=(const DD& a, const DD& b) noexcept { return !(a == b); }
inline bool operator<(const DD& a, const DD& b) noexcept {
  return a.hi < b.hi || (a.hi == b.hi && a.lo < b.lo);
}
inline bool operator>(const DD& a, const DD& b) noexcept { return b < a; }
inline bool operator<=(const DD& a, const DD& b) noexcept { return !(b < a); }
inline bool operator>=(const DD& a, const DD& b) noexcept { return !(a < b); }

// Mixed comparisons; without these the implicit DD(double) conversion makes
// `x < 0.5` ambiguous against the built-in operator via explicit double().
inline bool operator==(const DD& a, double b) noexcept { return a == DD{b}; }
inline bool operator<(const DD& a, double b) noexcept { return a < DD{b}; }
inline bool operator>(const DD& a, double b) noexcept { return DD{b} < a; }
inline bool operator<=(const DD& a, double b) noexcept { return !(DD{b} < a); }
inline bool operator>=(const DD& a, double b) noexcept { return !(a < DD{b}); }
inline bool operator<(double a, const DD& b) noexcept { return DD{a} < b; }
inline bool operator>(double a, const DD& b) noexcept { return b < DD{a}; }
inline bool operator<=(double a, const DD& b) noexcept { return !(b < DD{a}); }
inline bool operator>=(double a, const DD& b) noexcept { return !(DD{a} < b); }

inline DD abs(const DD& a) noexcept { return a.hi < 0.0 ? -a : a; }
inline DD fabs(const DD& a) noexcept { return abs(a); }
inline bool isfinite(const DD& a) noexcept { return std::isfinite(a.hi) && std::isfinite(a.lo); }
inline bool isnan(const DD& a) noexcept { return std::isnan(a.hi) || std::isnan(a.lo); }
inline DD ldexp(const DD& a, int e) noexcept { return {std::ldexp(a.hi, e), std::ldexp(a.lo, e)}; }

inline DD floor(const DD& a) noexcept {
  double h = std::floor(a.hi);
  if (h != a.hi) return {h, 0.0};
  return DD::normalized(h, std::floor(a.lo));
}

/// Round to nearest integer, halfway cases away from zero.
inline DD round(const DD& a) noexcept {
  return a.hi < 0.0 ? -floor(-a + 0.5) : floor(a + 0.5);
}

inline DD sqr(const DD& a) noexcept { return a * a; }

DD sqrt(const DD& a);
DD exp(const DD& a);
DD log(const DD& a);
DD sin(const DD& a);
DD cos(const DD& a);
std::pair<DD, DD> sincos(const DD& a);
DD atan2(const DD& y, const DD& x);
DD pow(const DD& a, int n);

/// Parses a decimal literal ("-0.607", "1e-5", "0.711511344577763622646812066970")
/// without intermediate rounding to double. Throws ConfigError on bad syntax.
DD dd_from_string(std::string_view text);

/// Scientific notation with `digits` significant decimal digits.
std::string to_string(const DD& a, int digits = 32);

namespace dd_const {
inline constexpr DD pi{3.141592653589793, 1.2246467991473532e-16};
inline constexpr DD two_pi{6.283185307179586, 2.4492935982947064e-16};
inline constexpr DD half_pi{1.5707963267948966, 6.123233995736766e-17};
inline constexpr DD ln2{0.6931471805599453, 2.3190468138462996e-17};
}  // namespace dd_const

}  // namespace qpavg

template <>
class std::numeric_limits<qpavg::DD> {
 public:
  static constexpr bool is_specialized = true;
  static constexpr int digits = 106;
  static constexpr int digits10 = 31;
  static constexpr qpavg::DD epsilon() noexcept { return {4.93038065763132e-32, 0.0}; }  // 2^-104
  static constexpr qpavg::DD min() noexcept { return {2.0041683600089728e-292, 0.0}; }   // 2^-969
  static constexpr qpavg::DD max() noexcept {
    return {1.79769313486231570815e+308, 9.97920154767359795037e+291};
  }
  static constexpr qpavg::DD infinity() noexcept { return {std::numeric_limits<double>::infinity(), 0.0}; }
  static constexpr qpavg::DD quiet_NaN() noexcept {
    return {std::numeric_limits<double>::quiet_NaN(), std::numeric_limits<double>::quiet_NaN()};
  }
};
