#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "qpavg/averaging.hpp"
#include "qpavg/errors.hpp"
#include "qpavg/kernels.hpp"
#include "qpavg/real.hpp"
#include "qpavg/systems.hpp"

namespace qpavg {

/// Angles in [0,1) of points about a center (default: their mean).
template <RealScalar Real>
std::vector<Real> circle_angle(const std::vector<Vec<Real, 2>>& points,
                               std::optional<Vec<Real, 2>> center = std::nullopt) {
  if (points.empty()) return {};
  Vec<Real, 2> c;
  if (center) {
    c = *center;
  } else {
    CompensatedSum<Real> sx, sy;
    for (const auto& p : points) {
      sx.add(p[0]);
      sy.add(p[1]);
    }
    const double n = static_cast<double>(points.size());
    c = {sx.value() / n, sy.value() / n};
  }
  std::vector<Real> out;
  out.reserve(points.size());
  for (std::size_t n = 0; n < points.size(); ++n) {
    const Real dx = points[n][0] - c[0];
    const Real dy = points[n][1] - c[1];
    if (dx == 0.0 && dy == 0.0) {
      throw NumericalError("circle_angle: point " + std::to_string(n) + " coincides with the center");
    }
    out.push_back(atan2_turns(dy, dx));
  }
  return out;
}

/// Representative of d mod 1 in (ref - 1/2, ref + 1/2].
template <RealScalar Real>
Real nearest_increment(const Real& d, const Real& ref = Real{0.0}) {
  using std::ceil;
  Real x = d - ref;
  // x - ceil(x - 1/2) lies in (-1/2, 1/2]
  x = x - ceil(to_double(x) - 0.5);
  if (x > 0.5) x -= 1.0;
  if (x <= -0.5) x += 1.0;
  return x + ref;
}

/// Unwraps angles so each step is the representative of the raw difference
/// in (-1/2, 1/2], or in (ref - 1/2, ref + 1/2] when a reference increment
/// is given.
template <RealScalar Real>
std::vector<Real> lift(const std::vector<Real>& angles, const Real& ref = Real{0.0}) {
  std::vector<Real> out;
  out.reserve(angles.size());
  if (angles.empty()) return out;
  out.push_back(angles[0]);
  for (std::size_t n = 1; n < angles.size(); ++n) {
    out.push_back(out.back() + nearest_increment<Real>(angles[n] - angles[n - 1], ref));
  }
  return out;
}

/// Circular mean of the raw increments, used as the lift reference when the
/// rotation number may sit near 1/2. Returns a value in [0,1).
template <RealScalar Real>
Real mean_increment(const std::vector<Real>& angles) {
  double sx = 0.0, sy = 0.0;
  for (std::size_t n = 1; n < angles.size(); ++n) {
    const auto [s, c] = sincos_2pi(to_double(angles[n] - angles[n - 1]));
    sx += c;
    sy += s;
  }
  if (sx == 0.0 && sy == 0.0) return Real{0.0};
  return Real{frac(std::atan2(sy, sx) / 6.28318530717958647692)};
}

/// Number of cyclic descents of the successor map when points are visited
/// in angular order. An orbit on an invariant circle with an
/// orientation-preserving parameterization has exactly one (zero if every
/// successor shares one value).
template <RealScalar Real>
std::size_t circle_order_violations(const std::vector<Real>& angles) {
  if (angles.size() < 3) return 0;
  const std::size_t m = angles.size() - 1;
  std::vector<std::size_t> idx(m);
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return angles[a] < angles[b]; });
  std::size_t descents = 0;
  for (std::size_t i = 0; i < m; ++i) {
    const Real& cur = angles[idx[i] + 1];
    const Real& nxt = angles[idx[(i + 1) % m] + 1];
    if (nxt < cur) ++descents;
  }
  return descents;
}

/// Throws NumericalError unless the angle sequence is consistent with a
/// circle homeomorphism.
template <RealScalar Real>
void check_circle_order(const std::vector<Real>& angles, const std::string& what) {
  const std::size_t v = circle_order_violations(angles);
  if (v > 1) {
    throw NumericalError(what + ": angle parameterization is not a circle map (" + std::to_string(v) +
                         " cyclic order violations over " + std::to_string(angles.size()) +
                         " points); the orbit is not on a star-shaped invariant circle about the centroid");
  }
}

template <RealScalar Real>
struct PartialEstimate {
  std::size_t N = 0;
  std::vector<Real> rho;
};

template <RealScalar Real>
struct RotationEstimate {
  std::vector<Real> rho;  // each component in [0,1)
  std::size_t N = 0;
  Kernel kernel = Kernel::exp;
  std::vector<PartialEstimate<Real>> diagnostics;  // N/8, N/4, N/2, N
};

/// Streaming rotation vector: push lifted increments y_{n+1} - y_n for
/// n = 0 .. N-1. Partial estimates over the first N/8, N/4, N/2 increments
/// use their own normalized weights.
template <RealScalar Real>
class RotationAccumulator {
 public:
  RotationAccumulator(Kernel kind, std::size_t N, std::size_t dim) : kind_(kind), N_(N), dim_(dim) {
    if (N < 2) throw ConfigError("rotation: N must be at least 2");
    for (std::size_t div : {8, 4, 2}) {
      if (N / div >= 2) parts_.emplace_back(kind, N / div, dim);
    }
    parts_.emplace_back(kind, N, dim);
  }

  template <class Vec_>
  void push(const Vec_& increment) {
    for (auto& p : parts_) p.push(increment);
  }

  bool full() const { return parts_.back().full(); }

  RotationEstimate<Real> result() const {
    RotationEstimate<Real> out;
    out.N = N_;
    out.kernel = kind_;
    for (const auto& p : parts_) {
      PartialEstimate<Real> pe{p.N(), p.value()};
      for (auto& r : pe.rho) r = frac(r);
      out.diagnostics.push_back(std::move(pe));
    }
    out.rho = out.diagnostics.back().rho;
    return out;
  }

  /// Weighted mean increment before reduction mod 1.
  std::vector<Real> raw() const { return parts_.back().value(); }

 private:
  Kernel kind_;
  std::size_t N_;
  std::size_t dim_;
  std::vector<StreamingAverage<Real>> parts_;
};

/// Rotation vector from a lifted sequence of N+1 points (row-major, `dim`
/// components each) and N weights.
template <RealScalar Real>
RotationEstimate<Real> rotation_vector(const OrbitSample<Real>& lifted, const WeightSequence<Real>& weights) {
  const std::size_t N = weights.size();
  if (lifted.size() != N + 1) {
    throw ConfigError("rotation_vector: lifted sequence has " + std::to_string(lifted.size()) +
                      " points, expected N+1=" + std::to_string(N + 1));
  }
  const std::size_t d = lifted.dim;
  OrbitSample<Real> inc{d, std::vector<Real>(N * d)};
  for (std::size_t n = 0; n < N; ++n) {
    for (std::size_t i = 0; i < d; ++i) inc.values[n * d + i] = lifted.at(n + 1, i) - lifted.at(n, i);
  }
  RotationEstimate<Real> out;
  out.N = N;
  out.kernel = weights.kind;
  for (std::size_t div : {8, 4, 2, 1}) {
    const std::size_t Ni = N / div;
    if (Ni < 2) continue;
    PartialEstimate<Real> pe;
    pe.N = Ni;
    if (Ni == N) {
      pe.rho = weighted_average(inc, weights).value;
    } else {
      OrbitSample<Real> head{d, std::vector<Real>(inc.values.begin(), inc.values.begin() + Ni * d)};
      pe.rho = weighted_average(head, normalized_weights<Real>(weights.kind, Ni)).value;
    }
    for (auto& r : pe.rho) r = frac(r);
    out.diagnostics.push_back(std::move(pe));
  }
  out.rho = out.diagnostics.back().rho;
  return out;
}

}  // namespace qpavg
