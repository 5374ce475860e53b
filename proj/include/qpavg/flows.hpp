#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

#include "qpavg/errors.hpp"
#include "qpavg/real.hpp"
#include "qpavg/systems.hpp"

namespace qpavg {

template <RealScalar Real>
struct IntegratorConfig {
  Real step{1e-3};
  std::size_t max_steps = 4'000'000'000ULL;
};

/// Cooper-Verner 8th order explicit Runge-Kutta, 11 stages. Coefficients are
/// the closed forms in sqrt(21), evaluated once at the working precision.
template <RealScalar Real>
struct CooperVerner8 {
  static constexpr int kStages = 11;
  std::array<Real, kStages> c{};
  std::array<Real, kStages> b{};
  std::array<std::array<Real, kStages>, kStages> a{};

  static const CooperVerner8& get() {
    static const CooperVerner8 t = make();
    return t;
  }

 private:
  static CooperVerner8 make() {
    using std::sqrt;
    CooperVerner8 t;
    const Real s = sqrt(Real{21.0});
    auto q = [](double num, double den) { return Real{num} / Real{den}; };
    auto lin = [&s](double p, double r, double den) { return (Real{p} + r * s) / Real{den}; };

    t.c = {Real{0.0}, q(1, 2), q(1, 2), lin(7, 1, 14), lin(7, 1, 14), q(1, 2),
           lin(7, -1, 14), lin(7, -1, 14), q(1, 2), lin(7, 1, 14), Real{1.0}};
    t.b = {q(1, 20), Real{0.0}, Real{0.0}, Real{0.0}, Real{0.0}, Real{0.0}, Real{0.0},
           q(49, 180), q(16, 45), q(49, 180), q(1, 20)};

    auto& a = t.a;
    a[1][0] = q(1, 2);
    a[2][0] = q(1, 4);
    a[2][1] = q(1, 4);
    a[3][0] = q(1, 7);
    a[3][1] = lin(-7, -3, 98);
    a[3][2] = lin(21, 5, 49);
    a[4][0] = lin(11, 1, 84);
    a[4][2] = lin(18, 4, 63);
    a[4][3] = lin(21, -1, 252);
    a[5][0] = lin(5, 1, 48);
    a[5][2] = lin(9, 1, 36);
    a[5][3] = lin(-231, 14, 360);
    a[5][4] = lin(63, -7, 80);
    a[6][0] = lin(10, -1, 42);
    a[6][2] = lin(-432, 92, 315);
    a[6][3] = lin(633, -145, 90);
    a[6][4] = lin(-504, 115, 70);
    a[6][5] = lin(63, -13, 35);
    a[7][0] = q(1, 14);
    a[7][4] = lin(14, -3, 126);
    a[7][5] = lin(13, -3, 63);
    a[7][6] = q(1, 9);
    a[8][0] = q(1, 32);
    a[8][4] = lin(91, -21, 576);
    a[8][5] = q(11, 72);
    a[8][6] = lin(-385, -75, 1152);
    a[8][7] = lin(63, 13, 128);
    a[9][0] = q(1, 14);
    a[9][4] = q(1, 9);
    a[9][5] = lin(-733, -147, 2205);
    a[9][6] = lin(515, 111, 504);
    a[9][7] = lin(-51, -11, 56);
    a[9][8] = lin(132, 28, 245);
    a[10][4] = lin(-42, 7, 18);
    a[10][5] = lin(-18, 28, 45);
    a[10][6] = lin(-273, -53, 72);
    a[10][7] = lin(301, 53, 72);
    a[10][8] = lin(28, -28, 45);
    a[10][9] = lin(49, -7, 18);
    return t;
  }
};

/// One Cooper-Verner step of size h from (t, y).
template <RealScalar Real, std::size_t D, class Field>
Vec<Real, D> rk8_step(const Field& f, const Real& t, const Vec<Real, D>& y, const Real& h) {
  const auto& tab = CooperVerner8<Real>::get();
  std::array<Vec<Real, D>, CooperVerner8<Real>::kStages> k;
  for (int i = 0; i < CooperVerner8<Real>::kStages; ++i) {
    Vec<Real, D> yi = y;
    for (int j = 0; j < i; ++j) {
      const Real& aij = tab.a[i][j];
      if (aij == 0.0) continue;
      for (std::size_t d = 0; d < D; ++d) yi[d] += h * aij * k[j][d];
    }
    k[i] = f(t + tab.c[i] * h, yi);
  }
  Vec<Real, D> out = y;
  for (std::size_t d = 0; d < D; ++d) {
    Real acc{0.0};
    for (int i = 0; i < CooperVerner8<Real>::kStages; ++i) {
      if (tab.b[i] == 0.0) continue;
      acc += tab.b[i] * k[i][d];
    }
    out[d] += h * acc;
  }
  return out;
}

/// Fixed-step integration from t0 to t1; the last step is shortened to land
/// exactly on t1.
template <RealScalar Real, std::size_t D, class Field>
Vec<Real, D> rk8_integrate(const Field& f, const Vec<Real, D>& y0, const Real& t0, const Real& t1,
                           const IntegratorConfig<Real>& cfg) {
  if (!(cfg.step > 0.0)) throw ConfigError("rk8_integrate: step must be positive");
  if (t1 < t0) throw ConfigError("rk8_integrate: t1 < t0");
  const Real span = t1 - t0;
  const double full = std::floor(to_double(span / cfg.step));
  if (full + 1.0 > static_cast<double>(cfg.max_steps)) {
    throw NumericalError("rk8_integrate: " + format_real(full + 1.0) + " steps exceed max_steps=" +
                         std::to_string(cfg.max_steps));
  }
  const auto n = static_cast<std::size_t>(full);
  Vec<Real, D> y = y0;
  for (std::size_t i = 0; i < n; ++i) {
    y = rk8_step<Real, D>(f, t0 + cfg.step * static_cast<double>(i), y, cfg.step);
  }
  const Real tn = t0 + cfg.step * static_cast<double>(n);
  const Real rest = t1 - tn;
  if (rest > 0.0) y = rk8_step<Real, D>(f, tn, y, rest);
  return y;
}

/// States at t0 + k * period, k = 0 .. count-1, after discarding `burn_in`
/// periods. The sampling times are formed as t0 + k * period rather than
/// accumulated, so they do not drift.
template <RealScalar Real, std::size_t D, class Field>
std::vector<Vec<Real, D>> stroboscopic_orbit(const Field& f, const Vec<Real, D>& y0, const Real& period,
                                             std::size_t count, const IntegratorConfig<Real>& cfg,
                                             std::size_t burn_in = 0, const Real& t0 = Real{0.0}) {
  if (!(period > 0.0)) throw ConfigError("stroboscopic_orbit: period must be positive");
  std::vector<Vec<Real, D>> out;
  out.reserve(count);
  Vec<Real, D> y = y0;
  Real t = t0;
  for (std::size_t k = 0; k < burn_in + count; ++k) {
    if (k >= burn_in) out.push_back(y);
    if (k + 1 == burn_in + count) break;
    const Real tn = t0 + period * static_cast<double>(k + 1);
    y = rk8_integrate<Real, D>(f, y, t, tn, cfg);
    t = tn;
  }
  return out;
}

// ---------------------------------------------------------------------------
// Poincare section q2 = 0 (component 1 of the state), crossing upward.

template <RealScalar Real, std::size_t D>
struct SectionEvent {
  Vec<Real, D> state;
  Real time;
  Real residual;  // |q2| at the refined crossing
};

/// Integrates on a fixed grid and reports each upward crossing of the
/// hyperplane y[axis] = 0. The refined crossing never perturbs the grid: the
/// orbit continues from the step end, so results do not depend on tol.
template <RealScalar Real, std::size_t D, class Field>
class PoincareTracker {
 public:
  PoincareTracker(Field f, const Vec<Real, D>& y0, const IntegratorConfig<Real>& cfg, Real tol = Real{1e-13},
                  std::size_t axis = 1, const Real& t0 = Real{0.0})
      : f_(std::move(f)), y_(y0), t0_(t0), cfg_(cfg), tol_(tol), axis_(axis) {
    if (!(cfg.step > 0.0)) throw ConfigError("PoincareTracker: step must be positive");
    if (!(tol > 0.0)) throw ConfigError("PoincareTracker: tol must be positive");
  }

  /// Advances to the next upward crossing. A start point lying exactly on
  /// the section is not reported.
  SectionEvent<Real, D> next() {
    const std::size_t limit = steps_ + cfg_.max_steps;
    while (steps_ < limit) {
      const Real t = time();
      Vec<Real, D> y1 = rk8_step<Real, D>(f_, t, y_, cfg_.step);
      if (y_[axis_] < 0.0 && y1[axis_] >= 0.0) {
        SectionEvent<Real, D> ev = refine(t, y_, y1);
        y_ = y1;
        ++steps_;
        if (f_(ev.time, ev.state)[axis_] > 0.0) return ev;
        continue;
      }
      y_ = y1;
      ++steps_;
    }
    throw NoCrossingError("no upward crossing of the section within " + std::to_string(cfg_.max_steps) +
                          " steps (t=" + format_real(to_double(time())) + ")");
  }

  const Vec<Real, D>& state() const noexcept { return y_; }
  Real time() const { return t0_ + cfg_.step * static_cast<double>(steps_); }
  std::size_t steps() const noexcept { return steps_; }

 private:
  // Bisection on the substep length tau in [0, h], re-integrating from the
  // step start, then Newton using the field's dq2/dt.
  SectionEvent<Real, D> refine(const Real& t, const Vec<Real, D>& ya, const Vec<Real, D>& yb) {
    using std::fabs;
    Real lo{0.0}, hi = cfg_.step;
    Real qlo = ya[axis_], qhi = yb[axis_];
    // Bracket down to a few percent of the step before switching to Newton.
    for (int i = 0; i < 6; ++i) {
      const Real mid = 0.5 * (lo + hi);
      const Real qm = rk8_step<Real, D>(f_, t, ya, mid)[axis_];
      if (qm < 0.0) {
        lo = mid;
        qlo = qm;
      } else {
        hi = mid;
        qhi = qm;
      }
    }
    // Secant start inside the bracket.
    Real tau = lo - qlo * (hi - lo) / (qhi - qlo);
    Vec<Real, D> y = rk8_step<Real, D>(f_, t, ya, tau);
    Real best = fabs(y[axis_]);
    for (int it = 0; it < 30 && best > 0.0; ++it) {
      const Real v = f_(t + tau, y)[axis_];
      Real next = v != 0.0 ? Real{tau - y[axis_] / v} : Real{0.5 * (lo + hi)};
      if (!(next >= lo && next <= hi)) next = 0.5 * (lo + hi);
      const Vec<Real, D> yn = rk8_step<Real, D>(f_, t, ya, next);
      const Real r = fabs(yn[axis_]);
      if (!(r < best)) break;
      tau = next;
      y = yn;
      best = r;
    }
    if (!(best <= tol_)) {
      throw StagnationError("section refinement stalled at |q2|=" + format_real(to_double(best)) +
                            " (tol " + format_real(to_double(tol_)) + ", t=" + format_real(to_double(t)) + ")");
    }
    return {y, t + tau, best};
  }

  Field f_;
  Vec<Real, D> y_;
  Real t0_;
  IntegratorConfig<Real> cfg_;
  Real tol_;
  std::size_t axis_;
  std::size_t steps_ = 0;
};

template <RealScalar Real, std::size_t D, class Field>
SectionEvent<Real, D> poincare_return_map(const Field& f, const Vec<Real, D>& y0, const IntegratorConfig<Real>& cfg,
                                          const Real& tol = Real{1e-13}) {
  PoincareTracker<Real, D, Field> tr(f, y0, cfg, tol);
  return tr.next();
}

}  // namespace qpavg
