#pragma once

// End-to-end drivers shared by the CLI, the Python module and the tests:
// generate an orbit of one of the built-in systems and turn it into angles,
// rotation numbers and conjugacy samples.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <optional>
#include <vector>

#include "qpavg/averaging.hpp"
#include "qpavg/flows.hpp"
#include "qpavg/fourier.hpp"
#include "qpavg/kernels.hpp"
#include "qpavg/rotation.hpp"
#include "qpavg/systems.hpp"

namespace qpavg {

/// `count` points of the standard map starting at ic (ic reduced mod 2 pi
/// first), after `burn_in` discarded iterates.
template <RealScalar Real>
std::vector<Vec<Real, 2>> standard_map_orbit(const Vec<Real, 2>& ic, std::size_t count, std::size_t burn_in = 0) {
  const Real tp = two_pi<Real>();
  Vec<Real, 2> s{wrap(ic[0], tp), wrap(ic[1], tp)};
  for (std::size_t i = 0; i < burn_in; ++i) s = standard_map_step(s);
  std::vector<Vec<Real, 2>> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    out.push_back(s);
    s = standard_map_step(s);
  }
  return out;
}

/// Moves each coordinate of periodic points to the representative nearest
/// its circular mean, so a curve crossing the 0/period seam stays in one piece.
template <RealScalar Real>
void unwrap_about_circular_mean(std::vector<Vec<Real, 2>>& pts, const Real& period) {
  using std::atan2;
  using std::cos;
  using std::floor;
  using std::sin;
  if (pts.empty()) return;
  const Real scale = two_pi<Real>() / period;
  for (std::size_t c = 0; c < 2; ++c) {
    CompensatedSum<Real> s, co;
    for (const auto& p : pts) {
      s.add(sin(p[c] * scale));
      co.add(cos(p[c] * scale));
    }
    const Real m = atan2(s.value(), co.value()) / scale;
    for (auto& p : pts) {
      const Real d = p[c] - m;
      p[c] = m + (d - period * floor(d / period + 0.5));
    }
  }
}

template <RealScalar Real>
std::vector<Vec<Real, 2>> torus_orbit(const TorusMapCoefficients<Real>& c, const Vec<Real, 2>& ic, std::size_t count,
                                      std::size_t burn_in = 0) {
  Vec<Real, 2> s{frac(ic[0]), frac(ic[1])};
  for (std::size_t i = 0; i < burn_in; ++i) s = torus2d_step(s, c);
  std::vector<Vec<Real, 2>> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    out.push_back(s);
    s = torus2d_step(s, c);
  }
  return out;
}

/// Rotation vector of the torus map from its exact lifted increments,
/// streamed so that N = 10^7 needs no orbit storage.
template <RealScalar Real>
RotationEstimate<Real> torus_rotation(const TorusMapCoefficients<Real>& c, const Vec<Real, 2>& ic, std::size_t N,
                                      Kernel kind, std::size_t burn_in = 0) {
  RotationAccumulator<Real> acc(kind, N, 2);
  Vec<Real, 2> s{frac(ic[0]), frac(ic[1])};
  for (std::size_t i = 0; i < burn_in; ++i) s = torus2d_step(s, c);
  for (std::size_t n = 0; n < N; ++n) {
    const auto d = torus2d_increment(s, c);
    acc.push(d);
    s = {frac(s[0] + d[0]), frac(s[1] + d[1])};
  }
  return acc.result();
}

template <RealScalar Real>
struct VdpField {
  Real F;
  Vec<Real, 2> operator()(const Real& t, const Vec<Real, 2>& s) const { return vdp_field(t, s, F); }
};

/// Stroboscopic samples (x, x') at t_k = k 2 pi / 0.83 after burn-in.
template <RealScalar Real>
std::vector<Vec<Real, 2>> vdp_stroboscopic(const Real& F, const Vec<Real, 2>& ic, std::size_t count,
                                           std::size_t burn_in, const IntegratorConfig<Real>& cfg) {
  return stroboscopic_orbit<Real, 2>(VdpField<Real>{F}, ic, vdp_period<Real>(), count, cfg, burn_in);
}

template <RealScalar Real>
struct ThreeBodyField {
  Real mu;
  Vec<Real, 4> operator()(const Real&, const Vec<Real, 4>& s) const { return three_body_field(s, mu); }
};

/// Section points of the three-body flow on q2 = 0, dq2/dt > 0.
template <RealScalar Real>
std::vector<SectionEvent<Real, 4>> three_body_sections(const Vec<Real, 4>& ic, const Real& mu, std::size_t count,
                                                       const IntegratorConfig<Real>& cfg, const Real& tol) {
  PoincareTracker<Real, 4, ThreeBodyField<Real>> tr(ThreeBodyField<Real>{mu}, ic, cfg, tol);
  std::vector<SectionEvent<Real, 4>> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) out.push_back(tr.next());
  return out;
}

struct CircleOptions {
  /// Center the lift on the circular mean increment instead of 0, so
  /// rotation numbers near 1/2 are unwrapped consistently.
  bool center_lift = true;
  /// Reverse the angle orientation (clockwise motion counted positive).
  bool clockwise = false;
  /// Points used for the cyclic-order check (0 disables it).
  std::size_t order_check_points = 20000;
};

template <RealScalar Real>
struct CircleRotation {
  RotationEstimate<Real> estimate;
  std::vector<Real> angles;
  std::vector<Real> lifted;
  Real reference_increment{0.0};
};

/// Rotation number of an orbit on an invariant circle: centroid angle, order
/// check, lift, weighted average of increments. points.size() = N + 1.
template <RealScalar Real>
CircleRotation<Real> circle_rotation(const std::vector<Vec<Real, 2>>& points, Kernel kind,
                                     const CircleOptions& opt = {},
                                     std::optional<Vec<Real, 2>> center = std::nullopt) {
  if (points.size() < 3) throw ConfigError("circle_rotation: need at least 3 points");
  CircleRotation<Real> out;
  out.angles = circle_angle(points, center);
  if (opt.clockwise) {
    for (auto& a : out.angles) a = frac(1.0 - a);
  }
  if (opt.order_check_points > 0) {
    const std::size_t m = std::min(opt.order_check_points, out.angles.size());
    std::vector<Real> head(out.angles.begin(), out.angles.begin() + static_cast<std::ptrdiff_t>(m));
    check_circle_order(head, "circle_rotation");
  }
  if (opt.center_lift) out.reference_increment = mean_increment(out.angles);
  out.lifted = lift(out.angles, out.reference_increment);
  const std::size_t N = points.size() - 1;
  RotationAccumulator<Real> acc(kind, N, 1);
  for (std::size_t n = 0; n < N; ++n) {
    const Real d[1] = {out.lifted[n + 1] - out.lifted[n]};
    acc.push(d);
  }
  out.estimate = acc.result();
  return out;
}

}  // namespace qpavg
