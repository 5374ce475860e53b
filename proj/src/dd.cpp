#include "qpavg/dd.hpp"

#include <array>
#include <cctype>
#include <cstdio>
#include <cmath>
#include <string>

#include "qpavg/errors.hpp"

namespace qpavg {

namespace {

// Three-part splits for argument reduction; each part is an exact double.
constexpr double kTwoPi1 = 6.283185307179586;
constexpr double kTwoPi2 = 2.4492935982947064e-16;
constexpr double kTwoPi3 = -5.989539619436679e-33;
constexpr double kHalfPi1 = 1.5707963267948966;
constexpr double kHalfPi2 = 6.123233995736766e-17;
constexpr double kHalfPi3 = -1.4973849048591698e-33;

// Relative size below which a Taylor term no longer affects a DD sum.
constexpr double kTaylorCut = 1e-34;

// x - k * (c1 + c2 + c3) with each k*ci formed exactly.
DD reduce(const DD& x, double k, double c1, double c2, double c3) {
  auto [p1, e1] = eft::two_prod(k, c1);
  auto [p2, e2] = eft::two_prod(k, c2);
  DD r = x - DD{p1, e1};
  r = r - DD{p2, e2};
  r = r - k * c3;
  return r;
}

// Taylor series on |x| <= pi/4.
DD sin_taylor(const DD& x) {
  if (x.hi == 0.0) return x;
  const DD x2 = x * x;
  DD term = x;
  DD sum = x;
  for (int i = 1; i < 40; ++i) {
    term = term * x2 / static_cast<double>((2 * i) * (2 * i + 1));
    term = -term;
    sum += term;
    if (std::fabs(term.hi) < kTaylorCut * std::fabs(sum.hi)) break;
  }
  return sum;
}

DD cos_taylor(const DD& x) {
  const DD x2 = x * x;
  DD term{1.0};
  DD sum{1.0};
  for (int i = 1; i < 40; ++i) {
    term = term * x2 / static_cast<double>((2 * i - 1) * (2 * i));
    term = -term;
    sum += term;
    if (std::fabs(term.hi) < kTaylorCut) break;
  }
  return sum;
}

}  // namespace

DD sqrt(const DD& a) {
  if (a.hi <= 0.0) {
    if (a.hi == 0.0) return DD{0.0};
    return std::numeric_limits<DD>::quiet_NaN();
  }
  double s = std::sqrt(a.hi);
  auto [p, e] = eft::two_prod(s, s);
  double r = ((a.hi - p) - e + a.lo) / (2.0 * s);
  auto [h, l] = eft::quick_two_sum(s, r);
  return {h, l};
}

DD exp(const DD& a) {
  if (a.hi > 709.7) return std::numeric_limits<DD>::infinity();
  if (a.hi < -745.2) return DD{0.0};
  if (a.hi == 0.0 && a.lo == 0.0) return DD{1.0};

  constexpr int kScale = 9;
  const double k = std::nearbyint(a.hi / dd_const::ln2.hi);
  DD r = a - dd_const::ln2 * k;
  r = ldexp(r, -kScale);

  // expm1 on the scaled argument, then undo the scaling by squaring.
  DD term = r;
  DD sum = r;
  for (int i = 2; i < 30; ++i) {
    term = term * r / static_cast<double>(i);
    sum += term;
    if (std::fabs(term.hi) < kTaylorCut * std::fabs(sum.hi)) break;
  }
  for (int i = 0; i < kScale; ++i) sum = sum * (sum + 2.0);
  return ldexp(sum + 1.0, static_cast<int>(k));
}

DD log(const DD& a) {
  if (a.hi <= 0.0) return std::numeric_limits<DD>::quiet_NaN();
  if (a.hi == 1.0 && a.lo == 0.0) return DD{0.0};
  DD x{std::log(a.hi)};
  for (int i = 0; i < 2; ++i) x = x + a * exp(-x) - 1.0;
  return x;
}

std::pair<DD, DD> sincos(const DD& a) {
  if (!isfinite(a)) {
    auto nan = std::numeric_limits<DD>::quiet_NaN();
    return {nan, nan};
  }
  if (std::fabs(a.hi) > 0x1p30) throw NumericalError("dd sin/cos: argument " + to_string(a, 17) + " outside |x| <= 2^30");
  DD r = a;
  if (std::fabs(r.hi) > kTwoPi1 / 2.0) {
    const double k = std::nearbyint(r.hi / kTwoPi1);
    r = reduce(r, k, kTwoPi1, kTwoPi2, kTwoPi3);
  }
  const double q = std::nearbyint(r.hi / kHalfPi1);
  if (q != 0.0) r = reduce(r, q, kHalfPi1, kHalfPi2, kHalfPi3);
  DD s = sin_taylor(r);
  DD c = cos_taylor(r);
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

DD sin(const DD& a) { return sincos(a).first; }
DD cos(const DD& a) { return sincos(a).second; }

DD atan2(const DD& y, const DD& x) {
  if (x.hi == 0.0 && y.hi == 0.0) return DD{0.0};
  DD z{std::atan2(y.hi, x.hi)};
  const DD r = sqrt(x * x + y * y);
  const DD xr = x / r;
  const DD yr = y / r;
  // One Newton step on sin(z) = y/r (or cos(z) = x/r) doubles the digits.
  auto [s, c] = sincos(z);
  if (std::fabs(xr.hi) > std::fabs(yr.hi)) {
    z = z + (yr - s) / c;
  } else {
    z = z - (xr - c) / s;
  }
  return z;
}

DD pow(const DD& a, int n) {
  DD result{1.0};
  DD base = a;
  unsigned m = n < 0 ? static_cast<unsigned>(-n) : static_cast<unsigned>(n);
  while (m) {
    if (m & 1u) result *= base;
    base = base * base;
    m >>= 1;
  }
  return n < 0 ? DD{1.0} / result : result;
}

DD dd_from_string(std::string_view text) {
  std::size_t i = 0;
  while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
  std::size_t end = text.size();
  while (end > i && std::isspace(static_cast<unsigned char>(text[end - 1]))) --end;

  bool negative = false;
  if (i < end && (text[i] == '+' || text[i] == '-')) {
    negative = text[i] == '-';
    ++i;
  }
  DD value{0.0};
  int exponent = 0;
  int digits = 0;
  bool seen_point = false;
  for (; i < end; ++i) {
    const char ch = text[i];
    if (std::isdigit(static_cast<unsigned char>(ch))) {
      value = value * 10.0 + static_cast<double>(ch - '0');
      if (seen_point) --exponent;
      ++digits;
    } else if (ch == '.' && !seen_point) {
      seen_point = true;
    } else {
      break;
    }
  }
  if (digits == 0) throw ConfigError("invalid decimal literal: '" + std::string(text) + "'");
  if (i < end) {
    if (text[i] != 'e' && text[i] != 'E') {
      throw ConfigError("invalid decimal literal: '" + std::string(text) + "'");
    }
    ++i;
    bool neg_exp = false;
    if (i < end && (text[i] == '+' || text[i] == '-')) {
      neg_exp = text[i] == '-';
      ++i;
    }
    int e = 0;
    int e_digits = 0;
    for (; i < end && std::isdigit(static_cast<unsigned char>(text[i])); ++i, ++e_digits) {
      e = e * 10 + (text[i] - '0');
      if (e > 10000) throw ConfigError("decimal exponent out of range: '" + std::string(text) + "'");
    }
    if (e_digits == 0 || i != end) {
      throw ConfigError("invalid decimal literal: '" + std::string(text) + "'");
    }
    exponent += neg_exp ? -e : e;
  }
  if (exponent > 0) {
    value *= pow(DD{10.0}, exponent);
  } else if (exponent < 0) {
    value /= pow(DD{10.0}, -exponent);
  }
  return negative ? -value : value;
}

std::string to_string(const DD& a, int digits) {
  if (std::isnan(a.hi)) return "nan";
  if (std::isinf(a.hi)) return a.hi > 0 ? "inf" : "-inf";
  if (digits < 1) digits = 1;
  std::string out;
  if (a.hi < 0.0) out += '-';
  DD x = abs(a);
  if (x.hi == 0.0) {
    out += "0." + std::string(static_cast<std::size_t>(digits - 1), '0') + "e+00";
    return out;
  }

  int e10 = static_cast<int>(std::floor(std::log10(x.hi)));
  DD r = e10 >= 0 ? x / pow(DD{10.0}, e10) : x * pow(DD{10.0}, -e10);
  while (r >= 10.0) {
    r /= 10.0;
    ++e10;
  }
  while (r < 1.0) {
    r *= 10.0;
    --e10;
  }

  std::string mant(static_cast<std::size_t>(digits + 1), '0');
  for (int i = 0; i <= digits; ++i) {
    int d = static_cast<int>(floor(r).hi);
    if (d < 0) d = 0;
    if (d > 9) d = 9;
    mant[static_cast<std::size_t>(i)] = static_cast<char>('0' + d);
    r = (r - static_cast<double>(d)) * 10.0;
    // Digit extraction can lag by one when r is a hair below an integer.
    if (r.hi < 0.0) r = DD{0.0};
  }
  // Round on the guard digit, propagating carries.
  if (mant.back() >= '5') {
    int j = digits - 1;
    while (j >= 0) {
      if (mant[static_cast<std::size_t>(j)] == '9') {
        mant[static_cast<std::size_t>(j)] = '0';
        --j;
      } else {
        ++mant[static_cast<std::size_t>(j)];
        break;
      }
    }
    if (j < 0) {
      mant.insert(mant.begin(), '1');
      ++e10;
    }
  }
  mant.resize(static_cast<std::size_t>(digits));

  out += mant[0];
  if (digits > 1) {
    out += '.';
    out.append(mant, 1, std::string::npos);
  }
  char buf[16];
  std::snprintf(buf, sizeof buf, "e%+03d", e10);
  out += buf;
  return out;
}

}  // namespace qpavg
