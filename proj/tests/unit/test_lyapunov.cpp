#include <doctest.h>

#include <cmath>

#include "qpavg/errors.hpp"
#include "qpavg/lyapunov.hpp"
#include "qpavg/systems.hpp"

using namespace qpavg;

TEST_CASE("rigid rotation has zero exponent") {
  const RigidRotation<double> m{0.3819660112501051};
  const auto r = lyapunov_exponents<double>(m, {0.1}, 1000, Kernel::exp);
  REQUIRE(r.exponents.size() == 1);
  CHECK(r.exponents[0] == 0.0);
  CHECK(r.N == 1000);
  CHECK(r.kernel == Kernel::exp);
}

TEST_CASE("constant diagonal Jacobian") {
  LinearMap<double, 2> m{};
  m.A = {{{0.5, 0.0}, {0.0, 2.0}}};
  for (Kernel k : kAllKernels) {
    const auto r = lyapunov_exponents<double>(m, {1.0, 1.0}, 200, k);
    CHECK(r.exponents[0] == doctest::Approx(std::log(2.0)).epsilon(1e-14));
    CHECK(r.exponents[1] == doctest::Approx(-std::log(2.0)).epsilon(1e-14));
  }
  // Stored and streamed weights agree.
  const auto a = lyapunov_exponents<double>(m, {1.0, 1.0}, normalized_weights<double>(Kernel::sin2, 300));
  const auto b = lyapunov_exponents<double>(m, {1.0, 1.0}, 300, Kernel::sin2);
  CHECK(a.exponents[0] == doctest::Approx(b.exponents[0]).epsilon(1e-14));
}

TEST_CASE("singular Jacobian reports its step") {
  LinearMap<double, 2> m{};
  m.A = {{{1.0, 0.0}, {0.0, 0.0}}};
  try {
    lyapunov_exponents<double>(m, {1.0, 1.0}, 10, Kernel::exp);
    FAIL("expected SingularJacobianError");
  } catch (const SingularJacobianError& e) {
    CHECK(e.step() == 0);
  }
}

TEST_CASE("Householder factors are orthogonal and triangular") {
  Mat<double, 3> A = {{{2.0, -1.0, 0.5}, {0.3, 4.0, 1.0}, {-1.2, 0.7, 3.0}}};
  const Mat<double, 3> A0 = A;
  Mat<double, 3> Q{};
  householder_qr<double, 3>(A, Q);
  for (std::size_t i = 0; i < 3; ++i) {
    CHECK(A[i][i] > 0.0);
    for (std::size_t j = 0; j < i; ++j) CHECK(std::fabs(A[i][j]) <= 1e-15);
    for (std::size_t j = 0; j < 3; ++j) {
      double qtq = 0.0, qr = 0.0;
      for (std::size_t k = 0; k < 3; ++k) {
        qtq += Q[k][i] * Q[k][j];
        qr += Q[i][k] * A[k][j];
      }
      CHECK(qtq == doctest::Approx(i == j ? 1.0 : 0.0).scale(1.0).epsilon(1e-15));
      CHECK(qr == doctest::Approx(A0[i][j]).scale(1.0).epsilon(1e-14));
    }
  }
}

TEST_CASE("area preservation of the standard map") {
  for (Vec<double, 2> s0 : {Vec<double, 2>{M_PI, 1.65}, Vec<double, 2>{0.3, 0.2}, Vec<double, 2>{2.0, 4.0}}) {
    const auto r = lyapunov_exponents<double>(StandardMap<double>{}, s0, 20000, Kernel::exp);
    CHECK(std::fabs(r.exponents[0] + r.exponents[1]) <= 1e-8);
    CHECK(r.exponents[0] >= r.exponents[1]);
  }
}

TEST_CASE("torus map exponents vanish and exp beats equal weights") {
  const TorusMap<double> m;
  const auto e = lyapunov_exponents<double>(m, {0.0, 0.0}, 100000, Kernel::exp);
  CHECK(std::fabs(e.exponents[0]) <= 1e-4);
  CHECK(std::fabs(e.exponents[1]) <= 1e-4);
  const auto q = lyapunov_exponents<double>(m, {0.0, 0.0}, 100000, Kernel::equal);
  const double exp_size = std::max(std::fabs(e.exponents[0]), std::fabs(e.exponents[1]));
  const double eq_size = std::max(std::fabs(q.exponents[0]), std::fabs(q.exponents[1]));
  CAPTURE(exp_size);
  CAPTURE(eq_size);
  CHECK(exp_size < eq_size);
}
