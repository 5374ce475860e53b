#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <string>
#include <vector>

#include "qpavg/averaging.hpp"
#include "qpavg/errors.hpp"
#include "qpavg/kernels.hpp"
#include "qpavg/real.hpp"

namespace qpavg {

/// g(theta) = b[0]/2 + sum_k b[k] cos(2 pi k theta) + c[k] sin(2 pi k theta).
/// c[0] is always zero.
template <RealScalar Real>
struct FourierSpectrum1D {
  int kmax = 0;
  std::vector<Real> b;
  std::vector<Real> c;
};

/// Complex coefficients of the families exp(2 pi i (j x + k y)) and
/// exp(2 pi i (j x - k y)), j = 0..jmax, k = 0..kmax, stored row-major in j.
template <RealScalar Real>
struct FourierSpectrum2D {
  int jmax = 0;
  int kmax = 0;
  std::vector<Real> plus_re, plus_im, minus_re, minus_im;

  std::size_t index(int j, int k) const { return static_cast<std::size_t>(j) * (kmax + 1) + k; }
  std::complex<double> plus(int j, int k) const {
    return {to_double(plus_re[index(j, k)]), to_double(plus_im[index(j, k)])};
  }
  std::complex<double> minus(int j, int k) const {
    return {to_double(minus_re[index(j, k)]), to_double(minus_im[index(j, k)])};
  }
};

namespace detail {

// Harmonic phasors e^{2 pi i k theta}, k = 0..kmax, by repeated rotation
// reseeded from a direct evaluation every 16 harmonics to bound drift.
template <RealScalar Real>
void harmonics(const Real& theta, int kmax, std::vector<Real>& cs, std::vector<Real>& sn) {
  cs.assign(static_cast<std::size_t>(kmax) + 1, Real{0.0});
  sn.assign(static_cast<std::size_t>(kmax) + 1, Real{0.0});
  cs[0] = 1.0;
  if (kmax == 0) return;
  const auto [s1, c1] = sincos_2pi(theta);
  cs[1] = c1;
  sn[1] = s1;
  for (int k = 2; k <= kmax; ++k) {
    if (k % 16 == 0) {
      const auto [s, c] = sincos_2pi(frac(theta * static_cast<double>(k)));
      cs[k] = c;
      sn[k] = s;
    } else {
      cs[k] = cs[k - 1] * c1 - sn[k - 1] * s1;
      sn[k] = sn[k - 1] * c1 + cs[k - 1] * s1;
    }
  }
}

}  // namespace detail

/// Coefficients of f along an orbit whose conjugate angle is theta_n = n rho
/// (theta_0 = 0): b_k = 2 WB(f cos 2 pi k theta), c_k = 2 WB(f sin 2 pi k theta).
template <RealScalar Real>
FourierSpectrum1D<Real> fourier_coeffs_1d(const std::vector<Real>& values, const Real& rho, int kmax,
                                          const WeightSequence<Real>& weights) {
  const std::size_t N = values.size();
  if (N != weights.size()) {
    throw ConfigError("fourier_coeffs_1d: " + std::to_string(N) + " values but " + std::to_string(weights.size()) +
                      " weights");
  }
  if (kmax < 0 || 2 * static_cast<std::size_t>(kmax) >= N) {
    throw ConfigError("fourier_coeffs_1d: kmax=" + std::to_string(kmax) + " must satisfy 0 <= kmax < N/2");
  }
  const auto K = static_cast<std::size_t>(kmax) + 1;
  std::vector<CompensatedSum<Real>> sb(K), sc(K);
  std::vector<Real> cs, sn;
  for (std::size_t n = 0; n < N; ++n) {
    if (weights[n] == 0.0) continue;
    const Real wf = weights[n] * values[n];
    detail::harmonics(frac_mul(n, rho), kmax, cs, sn);
    for (std::size_t k = 0; k < K; ++k) {
      sb[k].add(wf * cs[k]);
      sc[k].add(wf * sn[k]);
    }
  }
  FourierSpectrum1D<Real> out;
  out.kmax = kmax;
  out.b.resize(K);
  out.c.resize(K);
  for (std::size_t k = 0; k < K; ++k) {
    out.b[k] = 2.0 * sb[k].value();
    out.c[k] = k == 0 ? Real{0.0} : Real{2.0 * sc[k].value()};
  }
  return out;
}

/// Complex projections of f(x_n) onto both exponential families at
/// (x, y) = (n rho1, n rho2) mod 1.
template <RealScalar Real>
FourierSpectrum2D<Real> fourier_coeffs_2d(const std::vector<Real>& values, const Real& rho1, const Real& rho2,
                                          int jmax, int kmax, const WeightSequence<Real>& weights) {
  const std::size_t N = values.size();
  if (N != weights.size()) throw ConfigError("fourier_coeffs_2d: values and weights differ in length");
  if (jmax < 0 || kmax < 0 || 2 * static_cast<std::size_t>(std::max(jmax, kmax)) >= N) {
    throw ConfigError("fourier_coeffs_2d: jmax and kmax must lie in [0, N/2)");
  }
  FourierSpectrum2D<Real> out;
  out.jmax = jmax;
  out.kmax = kmax;
  const std::size_t M = static_cast<std::size_t>(jmax + 1) * (kmax + 1);
  std::vector<CompensatedSum<Real>> pr(M), pi_(M), mr(M), mi(M);
  std::vector<Real> cx, sx, cy, sy;
  for (std::size_t n = 0; n < N; ++n) {
    if (weights[n] == 0.0) continue;
    const Real wf = weights[n] * values[n];
    detail::harmonics(frac_mul(n, rho1), jmax, cx, sx);
    detail::harmonics(frac_mul(n, rho2), kmax, cy, sy);
    for (int j = 0; j <= jmax; ++j) {
      for (int k = 0; k <= kmax; ++k) {
        const std::size_t i = out.index(j, k);
        // f * exp(-2 pi i (j x +- k y))
        const Real cp = cx[j] * cy[k] - sx[j] * sy[k];
        const Real sp = sx[j] * cy[k] + cx[j] * sy[k];
        const Real cm = cx[j] * cy[k] + sx[j] * sy[k];
        const Real sm = sx[j] * cy[k] - cx[j] * sy[k];
        pr[i].add(wf * cp);
        pi_[i].add(-(wf * sp));
        mr[i].add(wf * cm);
        mi[i].add(-(wf * sm));
      }
    }
  }
  out.plus_re.resize(M);
  out.plus_im.resize(M);
  out.minus_re.resize(M);
  out.minus_im.resize(M);
  for (std::size_t i = 0; i < M; ++i) {
    out.plus_re[i] = pr[i].value();
    out.plus_im[i] = pi_[i].value();
    out.minus_re[i] = mr[i].value();
    out.minus_im[i] = mi[i].value();
  }
  return out;
}

/// Truncated series evaluated at theta_m = m / M.
template <RealScalar Real>
std::vector<Real> reconstruct_conjugacy(const FourierSpectrum1D<Real>& sp, std::size_t M) {
  std::vector<Real> g(M);
  std::vector<Real> cs, sn;
  for (std::size_t m = 0; m < M; ++m) {
    detail::harmonics(Real{static_cast<double>(m)} / static_cast<double>(M), sp.kmax, cs, sn);
    CompensatedSum<Real> acc;
    acc.add(0.5 * sp.b[0]);
    for (int k = 1; k <= sp.kmax; ++k) {
      acc.add(sp.b[k] * cs[k]);
      acc.add(sp.c[k] * sn[k]);
    }
    g[m] = acc.value();
  }
  return g;
}

/// Periodic part g_n = y_n - n rho of a lifted orbit, with theta_0 = 0.
template <RealScalar Real>
std::vector<Real> conjugacy_samples(const std::vector<Real>& lifted, const Real& rho) {
  std::vector<Real> g(lifted.size());
  for (std::size_t n = 0; n < lifted.size(); ++n) g[n] = lifted[n] - rho * static_cast<double>(n);
  return g;
}

struct DecayFit {
  double alpha = 0.0;
  double beta = 0.0;
  double residual = 0.0;  // RMS of log-magnitude residuals
  std::size_t used = 0;
};

/// Least-squares fit log sqrt(b_k^2 + c_k^2) = log alpha - beta k over k >= 1
/// with magnitude above `floor` (default 10 machine epsilons).
template <RealScalar Real>
DecayFit decay_fit(const FourierSpectrum1D<Real>& sp, double floor = -1.0) {
  if (floor < 0.0) floor = 10.0 * to_double(eps<Real>());
  std::vector<double> ks, ls;
  for (int k = 1; k <= sp.kmax; ++k) {
    const double b = to_double(sp.b[k]);
    const double c = to_double(sp.c[k]);
    const double m = std::hypot(b, c);
    if (m > floor) {
      ks.push_back(k);
      ls.push_back(std::log(m));
    }
  }
  if (ks.size() < 8) {
    throw FitError("decay_fit: only " + std::to_string(ks.size()) + " coefficients above the noise floor " +
                   format_real(floor) + " (need 8)");
  }
  const double n = static_cast<double>(ks.size());
  double mk = 0.0, ml = 0.0;
  for (std::size_t i = 0; i < ks.size(); ++i) {
    mk += ks[i];
    ml += ls[i];
  }
  mk /= n;
  ml /= n;
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < ks.size(); ++i) {
    sxx += (ks[i] - mk) * (ks[i] - mk);
    sxy += (ks[i] - mk) * (ls[i] - ml);
  }
  const double slope = sxy / sxx;
  const double icpt = ml - slope * mk;
  double rss = 0.0;
  for (std::size_t i = 0; i < ks.size(); ++i) {
    const double r = ls[i] - (icpt + slope * ks[i]);
    rss += r * r;
  }
  return {std::exp(icpt), -slope, std::sqrt(rss / n), ks.size()};
}

struct SensitivityInput {
  std::size_t N = 0;
  std::vector<int> k;
  std::vector<double> delta_rho;
  int m = 0;
  double diophantine_beta = 0.0;
};

/// Leading term pi N |k . delta_rho| of the coefficient error caused by an
/// error delta_rho in the rotation vector. The N^{-m} remainder has no
/// computable constant and is not included.
double sensitivity_bound(const SensitivityInput& in);

/// Circular shift s maximizing sum_m a[m] b[m + s]; b shifted by s is then
/// phase-aligned with a.
std::size_t best_circular_shift(const std::vector<double>& a, const std::vector<double>& b);

/// Relative change |(b1', c1') - (b1, c1)| / |(b1, c1)| of harmonic k.
template <RealScalar Real>
double relative_coefficient_change(const FourierSpectrum1D<Real>& ref, const FourierSpectrum1D<Real>& test, int k) {
  const double db = to_double(test.b[k] - ref.b[k]);
  const double dc = to_double(test.c[k] - ref.c[k]);
  return std::hypot(db, dc) / std::hypot(to_double(ref.b[k]), to_double(ref.c[k]));
}

}  // namespace qpavg
