#include "qpavg/fourier.hpp"

#include <cmath>
#include <numbers>

namespace qpavg {

double sensitivity_bound(const SensitivityInput& in) {
  if (in.k.size() != in.delta_rho.size() || in.k.empty()) {
    throw ConfigError("sensitivity_bound: k and delta_rho must be non-empty and of equal length");
  }
  if (in.N == 0) throw ConfigError("sensitivity_bound: N must be positive");
  if (in.diophantine_beta < 0.0) throw ConfigError("sensitivity_bound: Diophantine exponent must be >= 0");
  double dot = 0.0;
  for (std::size_t i = 0; i < in.k.size(); ++i) dot += static_cast<double>(in.k[i]) * in.delta_rho[i];
  const double x = static_cast<double>(in.N) * std::fabs(dot);
  if (!(x < 0.1)) {
    throw ConfigError("sensitivity_bound: N |k.delta_rho| = " + format_real(x) +
                      " is outside the small-perturbation regime (< 0.1)");
  }
  return std::numbers::pi * x;
}

std::size_t best_circular_shift(const std::vector<double>& a, const std::vector<double>& b) {
  if (a.size() != b.size()) throw ConfigError("best_circular_shift: length mismatch");
  const std::size_t M = a.size();
  std::size_t best = 0;
  double best_val = -INFINITY;
  for (std::size_t s = 0; s < M; ++s) {
    double acc = 0.0;
    for (std::size_t m = 0; m < M; ++m) acc += a[m] * b[(m + s) % M];
    if (acc > best_val) {
      best_val = acc;
      best = s;
    }
  }
  return best;
}

}  // namespace qpavg
