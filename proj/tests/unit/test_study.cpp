#include <doctest.h>

#include <cmath>

#include "qpavg/averaging.hpp"
#include "qpavg/errors.hpp"
#include "qpavg/study.hpp"

using namespace qpavg;

namespace {

std::vector<Kernel> all_kernels() { return std::vector<Kernel>(std::begin(kAllKernels), std::end(kAllKernels)); }

double golden_cos_average(Kernel k, std::size_t N) {
  const double rho = (std::sqrt(5.0) - 1.0) / 2.0;
  StreamingAverage<double> s(k, N, 1);
  for (std::size_t n = 0; n < N; ++n) s.push_scalar(cos_2pi(frac_mul(n, rho)));
  return s.value()[0];
}

}  // namespace

TEST_CASE("slope fit of synthetic power laws") {
  const auto grid = power_of_two_grid(4, 12);
  REQUIRE(grid.size() == 9);
  CHECK(grid.front() == 16);
  CHECK(grid.back() == 4096);
  std::vector<double> x, y;
  for (std::size_t N : grid) {
    x.push_back(std::log(static_cast<double>(N)));
    y.push_back(std::log(3.0 * std::pow(static_cast<double>(N), -2.0)));
  }
  const auto f = fit_log_log(x, y, Kernel::quad, grid.front(), grid.back());
  CHECK(f.slope == doctest::Approx(-2.0).epsilon(1e-6));
  CHECK(f.intercept == doctest::Approx(std::log(3.0)).epsilon(1e-6));
  CHECK(f.points == 9);
  std::vector<double> flat(x.size(), -4.0);
  CHECK(fit_log_log(x, flat, Kernel::exp, 16, 4096).slope == doctest::Approx(0.0).scale(1.0).epsilon(1e-12));
  CHECK_THROWS_AS(fit_log_log({1.0, 2.0, 3.0}, {1.0, 2.0, 3.0}, Kernel::exp, 1, 3), FitError);
}

TEST_CASE("study of a synthetic quantity") {
  const auto q = [](Kernel, std::size_t N) { return 1.0 + 1.0 / (static_cast<double>(N) * static_cast<double>(N)); };
  const auto t = convergence_study<double>(q, {Kernel::equal}, {512, 16, 64, 256, 32, 128, 64});
  CHECK(t.n_star == 2048);
  const auto rows = t.for_kernel(Kernel::equal);
  REQUIRE(rows.size() == 6);
  for (std::size_t i = 1; i < rows.size(); ++i) CHECK(rows[i].N > rows[i - 1].N);
  for (const auto& r : rows) CHECK(r.error >= 0.0);
  // The reference itself carries 1/N*^2, so the fit is close to but not exactly -2.
  CHECK(fit_slope(t, Kernel::equal).slope == doctest::Approx(-2.0).epsilon(0.05));
  CHECK_THROWS_AS(convergence_study<double>(q, {Kernel::equal}, {}), ConfigError);
  CHECK_THROWS_AS(convergence_study<double>(q, {Kernel::equal}, {64, 128}, 100), ConfigError);
}

TEST_CASE("rigid rotation average reaches the floor") {
  const auto t = convergence_study<double>(golden_cos_average, all_kernels(), power_of_two_grid(8, 14));
  for (const auto& r : t.for_kernel(Kernel::exp)) {
    if (r.N >= 8192) CHECK(r.error < 1e-14);
  }
  // Constant observable: every error is exactly zero, so nothing is above the floor.
  const auto c = convergence_study<double>([](Kernel, std::size_t) { return 0.5; }, all_kernels(), power_of_two_grid(4, 8));
  for (const auto& r : c.rows) CHECK(r.error == 0.0);
  CHECK_THROWS_AS(fit_slope(c, Kernel::exp), FitError);
  // Equal weights decay roughly like 1/N.
  CHECK(fit_slope(t, Kernel::equal).slope < -0.8);
}

TEST_CASE("studies are reproducible") {
  const auto a = convergence_study<double>(golden_cos_average, {Kernel::sin2}, power_of_two_grid(6, 10));
  const auto b = convergence_study<double>(golden_cos_average, {Kernel::sin2}, power_of_two_grid(6, 10));
  REQUIRE(a.rows.size() == b.rows.size());
  for (std::size_t i = 0; i < a.rows.size(); ++i) CHECK(a.rows[i].value == b.rows[i].value);
  CHECK(a.reference == b.reference);
}
