#pragma once

#include <array>
#include <cmath>
#include <string>
#include <string_view>

#include "qpavg/errors.hpp"
#include "qpavg/real.hpp"

namespace qpavg {

template <class Real, std::size_t D>
using Vec = std::array<Real, D>;

template <class Real, std::size_t D>
using Mat = std::array<std::array<Real, D>, D>;

enum class SystemKind { standard_map, torus2d_map, vdp_flow, three_body_flow };

std::string_view system_name(SystemKind k);

/// Accepts the canonical names and the short CLI spellings
/// ("standard", "torus2d", "vdp", "three_body").
SystemKind parse_system(std::string_view name);

constexpr std::size_t state_dim(SystemKind k) { return k == SystemKind::three_body_flow ? 4 : 2; }
constexpr bool is_discrete(SystemKind k) { return k == SystemKind::standard_map || k == SystemKind::torus2d_map; }

// ---------------------------------------------------------------------------
// Standard map on [0, 2pi)^2:  y' = y + sin x,  x' = x + y'.

/// One step without reduction; the pair returned is the lift.
template <RealScalar Real>
Vec<Real, 2> standard_map_step_lifted(const Vec<Real, 2>& s) {
  using std::sin;
  const Real y = s[1] + sin(s[0]);
  return {s[0] + y, y};
}

template <RealScalar Real>
Vec<Real, 2> standard_map_step(const Vec<Real, 2>& s) {
  auto r = standard_map_step_lifted(s);
  const Real tp = two_pi<Real>();
  return {wrap(r[0], tp), wrap(r[1], tp)};
}

template <RealScalar Real>
Mat<Real, 2> standard_map_jacobian(const Vec<Real, 2>& s) {
  using std::cos;
  const Real c = cos(s[0]);
  return {{{1.0 + c, Real{1.0}}, {c, Real{1.0}}}};
}

// ---------------------------------------------------------------------------
// Two-dimensional torus map on [0,1)^2:
//   x' = x + w1 + eps/(2 pi) P1(x, y),  y' = y + w2 + eps/(2 pi) P2(x, y),
//   Pi = sum_j a_ij sin(2 pi (r_j x + s_j y + b_ij)).

template <RealScalar Real>
struct TorusMapCoefficients {
  Real epsilon;
  Real omega1;
  Real omega2;
  std::array<Real, 4> a1, a2, b1, b2;
  // Mode pairs (r_j, s_j): (1,0), (0,1), (1,1), (1,-1).
  std::array<int, 4> r{1, 0, 1, 1};
  std::array<int, 4> s{0, 1, 1, -1};

  static TorusMapCoefficients defaults();
};

/// Decimal text of the default coefficients, parsed at the target
/// precision so DD runs see every digit.
struct TorusMapDefaults {
  static constexpr std::string_view epsilon = "0.4234823";
  static constexpr std::string_view omega1 = "0.71151134457776362264681206697006238";
  static constexpr std::string_view omega2 = "0.87735009811261456100917086672849971";
  static constexpr std::string_view a1[4] = {"-0.268", "-0.9106", "0.3", "-0.04"};
  static constexpr std::string_view a2[4] = {"0.08", "-0.56", "0.947", "-0.4003"};
  // Second entry: 0.504 (the source digits are ambiguous).
  static constexpr std::string_view b1[4] = {"0.985", "0.504", "0.947", "0.2334"};
  static constexpr std::string_view b2[4] = {"0.99", "0.33", "0.29", "0.155"};
};

template <RealScalar Real>
TorusMapCoefficients<Real> TorusMapCoefficients<Real>::defaults() {
  TorusMapCoefficients c;
  c.epsilon = parse_real<Real>(TorusMapDefaults::epsilon);
  c.omega1 = parse_real<Real>(TorusMapDefaults::omega1);
  c.omega2 = parse_real<Real>(TorusMapDefaults::omega2);
  for (int j = 0; j < 4; ++j) {
    c.a1[j] = parse_real<Real>(TorusMapDefaults::a1[j]);
    c.a2[j] = parse_real<Real>(TorusMapDefaults::a2[j]);
    c.b1[j] = parse_real<Real>(TorusMapDefaults::b1[j]);
    c.b2[j] = parse_real<Real>(TorusMapDefaults::b2[j]);
  }
  return c;
}

namespace detail {

// e^{2 pi i m t} for small integer m from the unit phasor of t.
template <RealScalar Real>
std::pair<Real, Real> phasor_power(const std::pair<Real, Real>& base, int m) {
  Real c{1.0}, s{0.0};
  Real bc = base.second, bs = m < 0 ? Real{-base.first} : base.first;
  for (int k = m < 0 ? -m : m; k > 0; --k) {
    const Real nc = c * bc - s * bs;
    s = s * bc + c * bs;
    c = nc;
  }
  return {s, c};
}

template <RealScalar Real>
struct TorusTerms {
  std::array<Real, 4> sin1, cos1, sin2, cos2;  // of 2 pi alpha_{1j}, 2 pi alpha_{2j}
};

template <RealScalar Real>
TorusTerms<Real> torus_terms(const Vec<Real, 2>& st, const TorusMapCoefficients<Real>& c) {
  const auto ex = sincos_2pi(st[0]);
  const auto ey = sincos_2pi(st[1]);
  TorusTerms<Real> t;
  for (int j = 0; j < 4; ++j) {
    const auto px = phasor_power(ex, c.r[j]);
    const auto py = phasor_power(ey, c.s[j]);
    // sin and cos of 2 pi (r x + s y)
    const Real sxy = px.first * py.second + px.second * py.first;
    const Real cxy = px.second * py.second - px.first * py.first;
    const auto e1 = sincos_2pi(c.b1[j]);
    const auto e2 = sincos_2pi(c.b2[j]);
    t.sin1[j] = sxy * e1.second + cxy * e1.first;
    t.cos1[j] = cxy * e1.second - sxy * e1.first;
    t.sin2[j] = sxy * e2.second + cxy * e2.first;
    t.cos2[j] = cxy * e2.second - sxy * e2.first;
  }
  return t;
}

}  // namespace detail

/// Unreduced displacement T(x) - x; this is exactly the lifted increment.
template <RealScalar Real>
Vec<Real, 2> torus2d_increment(const Vec<Real, 2>& st, const TorusMapCoefficients<Real>& c) {
  const auto t = detail::torus_terms(st, c);
  Real p1{0.0}, p2{0.0};
  for (int j = 0; j < 4; ++j) {
    p1 += c.a1[j] * t.sin1[j];
    p2 += c.a2[j] * t.sin2[j];
  }
  const Real k = c.epsilon / two_pi<Real>();
  return {c.omega1 + k * p1, c.omega2 + k * p2};
}

template <RealScalar Real>
Vec<Real, 2> torus2d_step(const Vec<Real, 2>& st, const TorusMapCoefficients<Real>& c) {
  const auto d = torus2d_increment(st, c);
  return {frac(st[0] + d[0]), frac(st[1] + d[1])};
}

template <RealScalar Real>
Mat<Real, 2> torus2d_jacobian(const Vec<Real, 2>& st, const TorusMapCoefficients<Real>& c) {
  const auto t = detail::torus_terms(st, c);
  Real d1x{0.0}, d1y{0.0}, d2x{0.0}, d2y{0.0};
  for (int j = 0; j < 4; ++j) {
    d1x += c.a1[j] * t.cos1[j] * static_cast<double>(c.r[j]);
    d1y += c.a1[j] * t.cos1[j] * static_cast<double>(c.s[j]);
    d2x += c.a2[j] * t.cos2[j] * static_cast<double>(c.r[j]);
    d2y += c.a2[j] * t.cos2[j] * static_cast<double>(c.s[j]);
  }
  // d/dx of (eps/2pi) sin(2 pi alpha) is eps * cos(2 pi alpha) * r.
  const Real& e = c.epsilon;
  return {{{1.0 + e * d1x, e * d1y}, {e * d2x, 1.0 + e * d2y}}};
}

// ---------------------------------------------------------------------------
// Forced van der Pol oscillator: x'' = 0.2 (1 - x^2) x' - 20 x^3 + F sin(0.83 t).

/// Forcing frequency 0.83, exact to the working precision.
template <RealScalar Real>
const Real& vdp_frequency() {
  static const Real w = parse_real<Real>("0.83");
  return w;
}

template <RealScalar Real>
Vec<Real, 2> vdp_field(const Real& t, const Vec<Real, 2>& s, const Real& F) {
  using std::sin;
  const Real& x = s[0];
  const Real& v = s[1];
  static const Real damping = parse_real<Real>("0.2");
  const Real x2 = x * x;
  return {v, damping * (1.0 - x2) * v - 20.0 * x2 * x + F * sin(vdp_frequency<Real>() * t)};
}

/// Period of the forcing, 2 pi / 0.83.
template <RealScalar Real>
Real vdp_period() {
  return two_pi<Real>() / vdp_frequency<Real>();
}

// ---------------------------------------------------------------------------
// Planar circular restricted three-body problem in the rotating frame.
// State (q1, q2, p1, p2); planet of mass 1 - mu at (-mu, 0), moon of mass mu
// at (1 - mu, 0).

inline constexpr double kCollisionDistance = 1e-8;

template <RealScalar Real>
struct PrimaryDistances {
  Real moon;
  Real planet;
};

template <RealScalar Real>
PrimaryDistances<Real> primary_distances(const Vec<Real, 4>& s, const Real& mu) {
  using std::sqrt;
  const Real dxm = s[0] - 1.0 + mu;
  const Real dxp = s[0] + mu;
  const Real q22 = s[1] * s[1];
  PrimaryDistances<Real> d{sqrt(dxm * dxm + q22), sqrt(dxp * dxp + q22)};
  if (d.moon < kCollisionDistance || d.planet < kCollisionDistance) {
    throw CollisionError("three-body state within " + std::to_string(kCollisionDistance) +
                         " of a primary (q1=" + format_real(to_double(s[0])) +
                         ", q2=" + format_real(to_double(s[1])) + ")");
  }
  return d;
}

template <RealScalar Real>
Vec<Real, 4> three_body_field(const Vec<Real, 4>& s, const Real& mu) {
  const auto d = primary_distances(s, mu);
  const Real gm = mu / (d.moon * d.moon * d.moon);
  const Real gp = (1.0 - mu) / (d.planet * d.planet * d.planet);
  const Real& q1 = s[0];
  const Real& q2 = s[1];
  const Real& p1 = s[2];
  const Real& p2 = s[3];
  return {p1 + q2, p2 - q1, p2 - gm * (q1 - 1.0 + mu) - gp * (q1 + mu), -p1 - gm * q2 - gp * q2};
}

/// Conserved energy of three_body_field. The mass-weighted potential pairs mu
/// with the moon distance, matching the equations of motion.
template <RealScalar Real>
Real hamiltonian(const Vec<Real, 4>& s, const Real& mu) {
  const auto d = primary_distances(s, mu);
  const Real kinetic = 0.5 * (s[2] * s[2] + s[3] * s[3]);
  const Real coriolis = s[1] * s[2] - s[0] * s[3];
  const Real potential = mu / d.moon + (1.0 - mu) / d.planet;
  return kinetic + coriolis - potential;
}

/// Momentum p2 placing (q1, 0, p1, p2) on the energy level H with
/// dq2/dt = p2 - q1 > 0. Throws ConfigError if the level is not reachable.
template <RealScalar Real>
Real three_body_p2_on_section(const Real& q1, const Real& p1, const Real& H, const Real& mu) {
  using std::sqrt;
  // H = p1^2/2 + p2^2/2 - q1 p2 - U  =>  (p2 - q1)^2 = q1^2 - p1^2 + 2 (H + U)
  const Vec<Real, 4> probe{q1, Real{0.0}, p1, Real{0.0}};
  const auto d = primary_distances(probe, mu);
  const Real U = mu / d.moon + (1.0 - mu) / d.planet;
  const Real disc = q1 * q1 - p1 * p1 + 2.0 * (H + U);
  if (disc <= 0.0) {
    throw ConfigError("energy level H=" + format_real(to_double(H)) + " not reachable at q1=" +
                      format_real(to_double(q1)) + ", p1=" + format_real(to_double(p1)));
  }
  return q1 + sqrt(disc);
}

// ---------------------------------------------------------------------------
// Map adaptors with step() and jacobian(), consumed by the Lyapunov driver.

template <RealScalar Real>
struct StandardMap {
  static constexpr std::size_t dim = 2;
  Vec<Real, 2> step(const Vec<Real, 2>& s) const { return standard_map_step(s); }
  Mat<Real, 2> jacobian(const Vec<Real, 2>& s) const { return standard_map_jacobian(s); }
};

template <RealScalar Real>
struct TorusMap {
  static constexpr std::size_t dim = 2;
  TorusMapCoefficients<Real> coeffs = TorusMapCoefficients<Real>::defaults();
  Vec<Real, 2> step(const Vec<Real, 2>& s) const { return torus2d_step(s, coeffs); }
  Mat<Real, 2> jacobian(const Vec<Real, 2>& s) const { return torus2d_jacobian(s, coeffs); }
};

/// x -> A x with a constant matrix.
template <RealScalar Real, std::size_t D>
struct LinearMap {
  static constexpr std::size_t dim = D;
  Mat<Real, D> A;
  Vec<Real, D> step(const Vec<Real, D>& s) const {
    Vec<Real, D> out{};
    for (std::size_t i = 0; i < D; ++i) {
      for (std::size_t j = 0; j < D; ++j) out[i] += A[i][j] * s[j];
    }
    return out;
  }
  Mat<Real, D> jacobian(const Vec<Real, D>&) const { return A; }
};

/// Rigid rotation theta -> theta + rho mod 1.
template <RealScalar Real>
struct RigidRotation {
  static constexpr std::size_t dim = 1;
  Real rho;
  Vec<Real, 1> step(const Vec<Real, 1>& s) const { return {frac(s[0] + rho)}; }
  Mat<Real, 1> jacobian(const Vec<Real, 1>&) const { return {{{Real{1.0}}}}; }
};

}  // namespace qpavg
