#include <doctest.h>

#include <cmath>
#include <limits>
#include <vector>

#include "qpavg/averaging.hpp"
#include "qpavg/dd.hpp"
#include "qpavg/errors.hpp"

using namespace qpavg;

namespace {

template <class Real>
Real golden() {
  using std::sqrt;
  return (sqrt(Real{5.0}) - 1.0) / 2.0;
}

template <class Real>
Real cos_average(Kernel k, std::size_t N) {
  const Real rho = golden<Real>();
  std::vector<Real> v(N);
  for (std::size_t n = 0; n < N; ++n) v[n] = cos_2pi(frac_mul(n, rho));
  return weighted_average(OrbitSample<Real>::scalar(v), normalized_weights<Real>(k, N)).value[0];
}

double slope(const std::vector<double>& x, const std::vector<double>& y) {
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= x.size();
  my /= y.size();
  double sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  return sxy / sxx;
}

}  // namespace

TEST_CASE("weighted average of simple sequences") {
  for (Kernel k : kAllKernels) {
    const auto w = normalized_weights<double>(k, 50);
    const auto r = weighted_average(OrbitSample<double>::scalar(std::vector<double>(50, 3.25)), w);
    CHECK(r.value[0] == doctest::Approx(3.25).epsilon(1e-15));
    CHECK(r.N == 50);
    CHECK(r.kernel == k);
  }
  const auto eq = weighted_average(OrbitSample<double>::scalar({1, 2, 3, 4}), normalized_weights<double>(Kernel::equal, 4));
  CHECK(eq.value[0] == 2.5);
}

TEST_CASE("weighted average errors") {
  const auto w = normalized_weights<double>(Kernel::exp, 4);
  CHECK_THROWS_AS(weighted_average(OrbitSample<double>::scalar({1, 2, 3}), w), ConfigError);
  CHECK_THROWS_AS(weighted_average(OrbitSample<double>::scalar({1, NAN, 3, 4}), w), ConfigError);
}

TEST_CASE("cos along a golden rotation averages to zero") {
  CHECK(std::fabs(cos_average<double>(Kernel::exp, 10000)) <= 1e-15);
  CHECK(std::fabs(to_double(cos_average<DD>(Kernel::exp, 10000))) <= 1e-25);
}

TEST_CASE("convergence rate of each kernel on a rigid rotation") {
  // N = 10^2, 10^2.5, ..., 10^5
  std::vector<std::size_t> Ns;
  for (int i = 0; i <= 6; ++i) Ns.push_back(static_cast<std::size_t>(std::llround(std::pow(10.0, 2.0 + 0.5 * i))));
  const std::pair<Kernel, double> limits[] = {
      {Kernel::equal, -0.8}, {Kernel::quad, -1.8}, {Kernel::sin2, -2.7}};
  for (auto [k, bound] : limits) {
    std::vector<double> x, y;
    for (std::size_t N : Ns) {
      const double e = std::fabs(cos_average<double>(k, N));
      if (e <= 1e-14) continue;  // floating-point floor
      x.push_back(std::log(static_cast<double>(N)));
      y.push_back(std::log(e));
    }
    REQUIRE(x.size() >= 2);
    CAPTURE(kernel_name(k));
    CHECK(slope(x, y) <= bound);
  }
  // The exp kernel hits the floor almost immediately.
  CHECK(std::fabs(cos_average<double>(Kernel::exp, 100)) <= 1e-8);
  for (std::size_t N : Ns) {
    if (N >= 300) CHECK(std::fabs(cos_average<double>(Kernel::exp, N)) <= 1e-15);
  }
}

TEST_CASE("compensated summation") {
  const std::vector<double> c = {1e16, 1.0, -1e16};
  CHECK(compensated_sum(c) == 1.0);
  CHECK(compensated_sum(std::vector<double>(10, 0.0)) == 0.0);
  // Exact sum of 10^6 copies of double(0.1) is 100000.0000000000055511...,
  // which rounds to 100000.
  CHECK(compensated_sum(std::vector<double>(1000000, 0.1)) == 100000.0);
}

TEST_CASE("weighted average is linear") {
  const std::size_t N = 777;
  std::vector<double> f(N), g(N), h(N);
  const double a = 2.5, b = -0.75;
  for (std::size_t n = 0; n < N; ++n) {
    f[n] = std::sin(0.1 * n);
    g[n] = std::cos(0.37 * n) + 1.0;
    h[n] = a * f[n] + b * g[n];
  }
  const double eps = std::numeric_limits<double>::epsilon();
  for (Kernel k : kAllKernels) {
    const auto w = normalized_weights<double>(k, N);
    const double lhs = weighted_average(OrbitSample<double>::scalar(h), w).value[0];
    const double rhs = a * weighted_average(OrbitSample<double>::scalar(f), w).value[0] +
                       b * weighted_average(OrbitSample<double>::scalar(g), w).value[0];
    CHECK(std::fabs(lhs - rhs) <= 8 * eps * (std::fabs(a) * 1.0 + std::fabs(b) * 2.0));
  }
}

TEST_CASE("streaming average matches the stored-weight average") {
  const std::size_t N = 5000;
  std::vector<double> v(N);
  for (std::size_t n = 0; n < N; ++n) v[n] = std::sin(0.3 * n) + 0.5 * std::cos(0.11 * n);
  for (Kernel k : kAllKernels) {
    StreamingAverage<double> s(k, N, 1);
    for (double x : v) s.push_scalar(x);
    const double direct = weighted_average(OrbitSample<double>::scalar(v), normalized_weights<double>(k, N)).value[0];
    CHECK(s.value()[0] == doctest::Approx(direct).epsilon(1e-14));
  }
  StreamingAverage<double> partial(Kernel::exp, 10, 1);
  partial.push_scalar(1.0);
  CHECK_THROWS_AS(partial.value(), ConfigError);
}

TEST_CASE("multi-component observables average componentwise") {
  const std::size_t N = 64;
  OrbitSample<double> s{2, {}};
  for (std::size_t n = 0; n < N; ++n) {
    s.values.push_back(1.0);
    s.values.push_back(-2.0);
  }
  const auto r = weighted_average(s, normalized_weights<double>(Kernel::sin2, N));
  REQUIRE(r.value.size() == 2);
  CHECK(r.value[0] == doctest::Approx(1.0));
  CHECK(r.value[1] == doctest::Approx(-2.0));
}
