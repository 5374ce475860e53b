#include "qpavg/study.hpp"

namespace qpavg {

std::vector<std::size_t> power_of_two_grid(int lo, int hi) {
  if (lo < 1 || hi < lo || hi > 40) throw ConfigError("power_of_two_grid: need 1 <= lo <= hi <= 40");
  std::vector<std::size_t> out;
  for (int e = lo; e <= hi; ++e) out.push_back(std::size_t{1} << e);
  return out;
}

SlopeFit fit_log_log(const std::vector<double>& xs, const std::vector<double>& ys, Kernel kernel, std::size_t n_min,
                     std::size_t n_max) {
  if (xs.size() < 4) {
    throw FitError("fit_slope(" + std::string(kernel_name(kernel)) + "): " + std::to_string(xs.size()) +
                   " points above the floating-point floor, need 4");
  }
  const double n = static_cast<double>(xs.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    mx += xs[i];
    my += ys[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxx += (xs[i] - mx) * (xs[i] - mx);
    sxy += (xs[i] - mx) * (ys[i] - my);
  }
  SlopeFit f;
  f.kernel = kernel;
  f.slope = sxy / sxx;
  f.intercept = my - f.slope * mx;
  f.n_min = n_min;
  f.n_max = n_max;
  f.points = xs.size();
  return f;
}

}  // namespace qpavg
