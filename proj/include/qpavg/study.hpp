#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "qpavg/errors.hpp"
#include "qpavg/kernels.hpp"
#include "qpavg/real.hpp"

namespace qpavg {

template <RealScalar Real>
struct ConvergenceRow {
  Kernel kernel;
  std::size_t N;
  Real value;
  Real error;  // |value - reference|
};

template <RealScalar Real>
struct ConvergenceTable {
  std::vector<ConvergenceRow<Real>> rows;
  Real reference{0.0};
  std::size_t n_star = 0;
  Kernel reference_kernel = Kernel::exp;

  std::vector<ConvergenceRow<Real>> for_kernel(Kernel k) const {
    std::vector<ConvergenceRow<Real>> out;
    for (const auto& r : rows) {
      if (r.kernel == k) out.push_back(r);
    }
    return out;
  }
};

struct SlopeFit {
  Kernel kernel = Kernel::exp;
  double slope = 0.0;
  double intercept = 0.0;
  std::size_t n_min = 0;
  std::size_t n_max = 0;
  std::size_t points = 0;
};

/// Least-squares line through (log N, log error); needs at least 4 points.
SlopeFit fit_log_log(const std::vector<double>& log_n, const std::vector<double>& log_err, Kernel kernel,
                     std::size_t n_min, std::size_t n_max);

/// Geometric grid 2^lo .. 2^hi.
std::vector<std::size_t> power_of_two_grid(int lo, int hi);

/// error(N) = |value(kernel, N) - value(exp, N*)| with N* = 4 max(N_grid)
/// unless given. The exp-kernel run at N* is the shared reference for all
/// kernels.
template <RealScalar Real>
ConvergenceTable<Real> convergence_study(const std::function<Real(Kernel, std::size_t)>& quantity,
                                         const std::vector<Kernel>& kernels, std::vector<std::size_t> n_grid,
                                         std::size_t n_star = 0) {
  using std::fabs;
  if (n_grid.empty()) throw ConfigError("convergence_study: empty N grid");
  std::sort(n_grid.begin(), n_grid.end());
  n_grid.erase(std::unique(n_grid.begin(), n_grid.end()), n_grid.end());
  if (n_star == 0) n_star = 4 * n_grid.back();
  if (n_star < n_grid.back()) throw ConfigError("convergence_study: N* must be at least max(N_grid)");
  ConvergenceTable<Real> t;
  t.n_star = n_star;
  t.reference = quantity(Kernel::exp, n_star);
  for (Kernel k : kernels) {
    for (std::size_t N : n_grid) {
      const Real v = quantity(k, N);
      t.rows.push_back({k, N, v, fabs(v - t.reference)});
    }
  }
  return t;
}

/// Least-squares slope of log error against log N for one kernel, using
/// only points whose error exceeds floor_factor * eps * |reference|.
template <RealScalar Real>
SlopeFit fit_slope(const ConvergenceTable<Real>& t, Kernel kernel, double floor_factor = 100.0) {
  const double floor = floor_factor * to_double(eps<Real>()) * std::fabs(to_double(t.reference));
  std::vector<double> xs, ys;
  std::size_t nmin = 0, nmax = 0;
  for (const auto& r : t.rows) {
    if (r.kernel != kernel) continue;
    const double e = to_double(r.error);
    if (!(e > floor)) continue;
    xs.push_back(std::log(static_cast<double>(r.N)));
    ys.push_back(std::log(e));
    if (nmin == 0) nmin = r.N;
    nmax = r.N;
  }
  return fit_log_log(xs, ys, kernel, nmin, nmax);
}

}  // namespace qpavg
