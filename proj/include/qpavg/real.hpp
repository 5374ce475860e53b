#pragma once

// Scalar helpers shared by double and DD so the numerical modules can be
// written once. Generic code calls these unqualified (or via `using std::sin`)
// and overload resolution picks the right precision.

#include <cmath>
#include <cstddef>
#include <limits>
#include <string>
#include <string_view>
#include <utility>

#include "qpavg/dd.hpp"

namespace qpavg {

template <class T>
concept RealScalar = std::is_same_v<T, double> || std::is_same_v<T, DD>;

enum class Precision { double_, dd };

template <RealScalar Real>
constexpr Real eps() {
  return std::numeric_limits<Real>::epsilon();
}

inline double to_double(double x) { return x; }
inline double to_double(const DD& x) { return x.hi + x.lo; }

template <RealScalar Real>
Real pi() {
  if constexpr (std::is_same_v<Real, DD>) {
    return dd_const::pi;
  } else {
    return 3.14159265358979323846;
  }
}

template <RealScalar Real>
Real two_pi() {
  if constexpr (std::is_same_v<Real, DD>) {
    return dd_const::two_pi;
  } else {
    return 6.28318530717958647692;
  }
}

/// Parses a decimal literal at the requested precision.
template <RealScalar Real>
Real parse_real(std::string_view text);

template <>
inline DD parse_real<DD>(std::string_view text) {
  return dd_from_string(text);
}

template <>
double parse_real<double>(std::string_view text);

/// Round-trip decimal text: 17 significant digits for double, 32 for DD.
std::string format_real(double x);
std::string format_real(const DD& x, int digits = 32);

/// x - floor(x), in [0, 1).
inline double frac(double x) {
  double f = x - std::floor(x);
  return f >= 1.0 ? 0.0 : f;
}

inline DD frac(const DD& x) {
  DD f = x - floor(x);
  if (f.hi >= 1.0) return DD{0.0};
  if (f.hi < 0.0) return f + 1.0;
  return f;
}

/// Fractional part of n * r with the product formed exactly (double) or to
/// full DD precision, so phases stay accurate for n in the millions.
inline double frac_mul(std::size_t n, double r) {
  const double nd = static_cast<double>(n);
  auto [p, e] = eft::two_prod(nd, r);
  // p - floor(p) is exact; the tail e is below half an ulp of p.
  double f = (p - std::floor(p)) + e;
  return frac(f);
}

inline DD frac_mul(std::size_t n, const DD& r) { return frac(r * static_cast<double>(n)); }

/// x reduced into [0, period).
template <RealScalar Real>
Real wrap(const Real& x, const Real& period) {
  using std::floor;
  Real r = x - period * floor(x / period);
  if (r < Real{0.0}) r += period;
  if (r >= period) r -= period;
  if (r < Real{0.0}) r = Real{0.0};
  return r;
}

/// sin and cos of 2*pi*t. The reduction happens in turns, which is exact, so
/// accuracy does not degrade with |t|.
inline std::pair<double, double> sincos_2pi(double t) {
  double f = t - std::nearbyint(t);  // [-1/2, 1/2]
  const double q = std::nearbyint(4.0 * f);
  const double r = f - 0.25 * q;  // exact, |r| <= 1/8
  const double a = 6.28318530717958647692 * r;
  const double s = std::sin(a);
  const double c = std::cos(a);
  switch ((static_cast<int>(q) % 4 + 4) % 4) {
    case 0:
      return {s, c};
    case 1:
      return {c, -s};
    case 2:
      return {-s, -c};
    default:
      return {-c, s};
  }
}

inline std::pair<DD, DD> sincos_2pi(const DD& t) {
  DD f = t - round(t);
  const double q = std::nearbyint(4.0 * f.hi);
  const DD r = f - 0.25 * q;
  auto [s, c] = sincos(dd_const::two_pi * r);
  switch ((static_cast<int>(q) % 4 + 4) % 4) {
    case 0:
      return {s, c};
    case 1:
      return {c, -s};
    case 2:
      return {-s, -c};
    default:
      return {-c, s};
  }
}

template <RealScalar Real>
Real sin_2pi(const Real& t) {
  return sincos_2pi(t).first;
}

template <RealScalar Real>
Real cos_2pi(const Real& t) {
  return sincos_2pi(t).second;
}

/// atan2(y, x) in turns, mapped to [0, 1).
template <RealScalar Real>
Real atan2_turns(const Real& y, const Real& x) {
  using std::atan2;
  Real a = atan2(y, x) / two_pi<Real>();
  return frac(a);
}

}  // namespace qpavg
