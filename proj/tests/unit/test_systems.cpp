#include <doctest.h>

#include <cmath>
#include <random>

#include "qpavg/dd.hpp"
#include "qpavg/errors.hpp"
#include "qpavg/systems.hpp"

using namespace qpavg;

namespace {

template <class F>
Mat<double, 2> finite_difference(F step, const Vec<double, 2>& s, double h = 1e-6) {
  Mat<double, 2> J{};
  for (std::size_t j = 0; j < 2; ++j) {
    Vec<double, 2> a = s, b = s;
    a[j] += h;
    b[j] -= h;
    const auto fa = step(a), fb = step(b);
    for (std::size_t i = 0; i < 2; ++i) J[i][j] = (fa[i] - fb[i]) / (2 * h);
  }
  return J;
}

void check_close(const Mat<double, 2>& A, const Mat<double, 2>& B, double tol) {
  double scale = 0.0, diff = 0.0;
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) {
      scale = std::max(scale, std::fabs(A[i][j]));
      diff = std::max(diff, std::fabs(A[i][j] - B[i][j]));
    }
  }
  CHECK(diff <= tol * std::max(scale, 1.0));
}

}  // namespace

TEST_CASE("standard map fixed points and substitution") {
  auto z = standard_map_step<double>({0.0, 0.0});
  CHECK(z[0] == 0.0);
  CHECK(z[1] == 0.0);
  auto p = standard_map_step<double>({M_PI, 0.0});
  CHECK(p[0] == doctest::Approx(M_PI));
  CHECK(std::fabs(p[1]) < 1e-15);
  auto q = standard_map_step<double>({M_PI, 1.5});
  CHECK(q[0] == doctest::Approx(M_PI + 1.5));
  CHECK(q[1] == doctest::Approx(1.5));
  // Output reduced to [0, 2pi).
  auto r = standard_map_step<double>({6.0, 6.0});
  CHECK(r[0] >= 0.0);
  CHECK(r[0] < 2 * M_PI);
  CHECK(r[1] >= 0.0);
  CHECK(r[1] < 2 * M_PI);
}

TEST_CASE("standard map Jacobian") {
  const auto J0 = standard_map_jacobian<double>({0.0, 0.0});
  CHECK(J0[0][0] == 2.0);
  CHECK(J0[0][1] == 1.0);
  CHECK(J0[1][0] == 1.0);
  CHECK(J0[1][1] == 1.0);
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(0.0, 2 * M_PI);
  for (int i = 0; i < 100; ++i) {
    const Vec<double, 2> s{u(rng), u(rng)};
    const auto J = standard_map_jacobian(s);
    CHECK(std::fabs(J[0][0] * J[1][1] - J[0][1] * J[1][0] - 1.0) <= 1e-14);
    check_close(J, finite_difference([](const Vec<double, 2>& x) { return standard_map_step_lifted(x); }, s), 1e-8);
  }
}

TEST_CASE("torus map reference values") {
  const auto c = TorusMapCoefficients<double>::defaults();
  const auto a = torus2d_step<double>({0.0, 0.0}, c);
  CHECK(a[0] == doctest::Approx(0.70546262529920505765).epsilon(1e-14));
  CHECK(a[1] == doctest::Approx(0.88344386557361035826).epsilon(1e-14));
  const auto b = torus2d_step<double>({0.3, 0.7}, c);
  CHECK(b[0] == doctest::Approx(0.93077982741126407785).epsilon(1e-14));
  CHECK(b[1] == doctest::Approx(0.66428871617930352087).epsilon(1e-14));
  const auto cd = TorusMapCoefficients<DD>::defaults();
  const auto d = torus2d_step<DD>({DD{0.3}, DD{0.7}}, cd);
  // DD{0.3} is the double nearest 0.3, so compare in double.
  CHECK(to_double(d[0]) == doctest::Approx(0.93077982741126407785).epsilon(1e-15));
}

TEST_CASE("torus map with zero coupling is a rigid rotation") {
  auto c = TorusMapCoefficients<double>::defaults();
  c.epsilon = 0.0;
  const auto a = torus2d_step<double>({0.25, 0.5}, c);
  CHECK(a[0] == doctest::Approx(frac(0.25 + c.omega1)));
  CHECK(a[1] == doctest::Approx(frac(0.5 + c.omega2)));
  const auto J = torus2d_jacobian<double>({0.1, 0.9}, c);
  CHECK(J[0][0] == 1.0);
  CHECK(J[0][1] == 0.0);
  CHECK(J[1][0] == 0.0);
  CHECK(J[1][1] == 1.0);
}

TEST_CASE("torus map periodicity and Jacobian") {
  const auto c = TorusMapCoefficients<double>::defaults();
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 100; ++i) {
    const Vec<double, 2> s{u(rng), u(rng)};
    const auto a = torus2d_step(s, c);
    const auto bx = torus2d_step<double>({s[0] + 1.0, s[1]}, c);
    const auto by = torus2d_step<double>({s[0], s[1] - 1.0}, c);
    for (int k = 0; k < 2; ++k) {
      const double dx = std::fabs(a[k] - bx[k]), dy = std::fabs(a[k] - by[k]);
      CHECK(std::min(dx, 1.0 - dx) <= 1e-14);
      CHECK(std::min(dy, 1.0 - dy) <= 1e-14);
    }
    const auto lifted = [&](const Vec<double, 2>& x) {
      const auto d = torus2d_increment(x, c);
      return Vec<double, 2>{x[0] + d[0], x[1] + d[1]};
    };
    check_close(torus2d_jacobian(s, c), finite_difference(lifted, s), 1e-8);
  }
}

TEST_CASE("van der Pol field") {
  auto a = vdp_field<double>(0.0, {0.0, 0.0}, 5.0);
  CHECK(a[0] == 0.0);
  CHECK(a[1] == 0.0);
  auto b = vdp_field<double>(0.0, {1.0, 1.0}, 0.0);
  CHECK(b[0] == 1.0);
  CHECK(b[1] == doctest::Approx(-20.0));
  auto c = vdp_field<double>(M_PI / (2 * 0.83), {0.0, 0.0}, 5.0);
  CHECK(c[0] == 0.0);
  CHECK(c[1] == doctest::Approx(5.0).epsilon(1e-15));
  CHECK(vdp_period<double>() == doctest::Approx(2 * M_PI / 0.83).epsilon(1e-15));
}

TEST_CASE("three-body field and energy") {
  const double mu = 0.1;
  const auto f = three_body_field<double>({0.5, 0.0, 0.0, 0.5}, mu);
  CHECK(f[0] == 0.0);
  CHECK(f[1] == 0.0);
  CHECK(f[2] == doctest::Approx(-1.375).epsilon(1e-15));
  CHECK(f[3] == 0.0);
  // On q2 = 0 the q2-proportional gravity terms vanish: dp2/dt = -p1.
  const auto g = three_body_field<double>({0.3, 0.0, 0.7, -0.2}, mu);
  CHECK(g[3] == doctest::Approx(-0.7));
  CHECK(hamiltonian<double>({0.3, 0.2, -0.4, 1.1}, mu) == doctest::Approx(-1.8955750627582296934).epsilon(1e-15));
  CHECK(std::fabs(hamiltonian<double>({1e9, 0.0, 0.0, 0.0}, mu)) < 1e-8);
  CHECK(hamiltonian<double>({1e9, 0.0, 0.0, 0.0}, mu) < 0.0);
  CHECK_THROWS_AS(three_body_field<double>({-mu, 0.0, 1.0, 1.0}, mu), CollisionError);
  CHECK_THROWS_AS(hamiltonian<double>({1.0 - mu, 1e-9, 1.0, 1.0}, mu), CollisionError);
}

TEST_CASE("momentum solved on the section reproduces the energy") {
  const double mu = 0.1, H = -2.63;
  for (double q1 : {-0.3, 0.1, 0.2}) {
    const double p2 = three_body_p2_on_section(q1, 0.05, H, mu);
    CHECK(p2 - q1 > 0.0);
    CHECK(hamiltonian<double>({q1, 0.0, 0.05, p2}, mu) == doctest::Approx(H).epsilon(1e-14));
  }
  CHECK_THROWS_AS(three_body_p2_on_section(1.0, 2.0, H, mu), ConfigError);
}

TEST_CASE("system names") {
  CHECK(parse_system("standard") == SystemKind::standard_map);
  CHECK(parse_system("torus2d") == SystemKind::torus2d_map);
  CHECK(parse_system("vdp") == SystemKind::vdp_flow);
  CHECK(parse_system("three_body") == SystemKind::three_body_flow);
  for (auto k : {SystemKind::standard_map, SystemKind::torus2d_map, SystemKind::vdp_flow, SystemKind::three_body_flow}) {
    CHECK(parse_system(system_name(k)) == k);
  }
  CHECK_THROWS_AS(parse_system("lorenz"), ConfigError);
}
