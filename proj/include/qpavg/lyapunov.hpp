#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <string>
#include <vector>

#include "qpavg/averaging.hpp"
#include "qpavg/errors.hpp"
#include "qpavg/kernels.hpp"
#include "qpavg/real.hpp"
#include "qpavg/systems.hpp"

namespace qpavg {

template <class M, class Real>
concept DiscreteMap = requires(const M& m, const Vec<Real, M::dim>& s) {
  { m.step(s) } -> std::convertible_to<Vec<Real, M::dim>>;
  { m.jacobian(s) } -> std::convertible_to<Mat<Real, M::dim>>;
};

template <RealScalar Real>
struct LyapunovResult {
  std::vector<Real> exponents;  // descending, nats per iterate
  std::size_t N = 0;
  Kernel kernel = Kernel::exp;
};

/// Householder QR of A in place: on return A holds R (positive diagonal) and
/// Q the orthogonal factor.
template <RealScalar Real, std::size_t D>
void householder_qr(Mat<Real, D>& A, Mat<Real, D>& Q) {
  using std::sqrt;
  for (std::size_t i = 0; i < D; ++i) {
    for (std::size_t j = 0; j < D; ++j) Q[i][j] = i == j ? Real{1.0} : Real{0.0};
  }
  for (std::size_t k = 0; k + 1 < D; ++k) {
    Real norm2{0.0};
    for (std::size_t i = k; i < D; ++i) norm2 += A[i][k] * A[i][k];
    if (norm2 == 0.0) continue;
    const Real norm = sqrt(norm2);
    const Real alpha = A[k][k] > 0.0 ? Real{-norm} : norm;
    Vec<Real, D> v{};
    for (std::size_t i = k; i < D; ++i) v[i] = A[i][k];
    v[k] -= alpha;
    Real vv{0.0};
    for (std::size_t i = k; i < D; ++i) vv += v[i] * v[i];
    if (vv == 0.0) continue;
    // A <- H A on rows k.., Q <- Q H on columns k..
    for (std::size_t j = 0; j < D; ++j) {
      Real dot{0.0};
      for (std::size_t i = k; i < D; ++i) dot += v[i] * A[i][j];
      const Real f = 2.0 * dot / vv;
      for (std::size_t i = k; i < D; ++i) A[i][j] -= f * v[i];
    }
    for (std::size_t i = 0; i < D; ++i) {
      Real dot{0.0};
      for (std::size_t j = k; j < D; ++j) dot += Q[i][j] * v[j];
      const Real f = 2.0 * dot / vv;
      for (std::size_t j = k; j < D; ++j) Q[i][j] -= f * v[j];
    }
  }
  for (std::size_t k = 0; k < D; ++k) {
    if (A[k][k] < 0.0) {
      for (std::size_t j = 0; j < D; ++j) A[k][j] = -A[k][j];
      for (std::size_t i = 0; i < D; ++i) Q[i][k] = -Q[i][k];
    }
  }
}

/// Propagates an orthonormal frame through the Jacobian cocycle with a QR
/// step at every iterate; `sink(n, log_r)` receives the log stretch factors.
template <RealScalar Real, class Map, class Sink>
Vec<Real, Map::dim> propagate_frame(const Map& map, Vec<Real, Map::dim> state, std::size_t N, Sink&& sink) {
  using std::log;
  constexpr std::size_t D = Map::dim;
  Mat<Real, D> Q{};
  for (std::size_t i = 0; i < D; ++i) Q[i][i] = 1.0;
  Vec<Real, D> logs{};
  for (std::size_t n = 0; n < N; ++n) {
    const Mat<Real, D> J = map.jacobian(state);
    Mat<Real, D> A{};
    for (std::size_t i = 0; i < D; ++i) {
      for (std::size_t j = 0; j < D; ++j) {
        Real acc{0.0};
        for (std::size_t k = 0; k < D; ++k) acc += J[i][k] * Q[k][j];
        A[i][j] = acc;
      }
    }
    householder_qr<Real, D>(A, Q);
    for (std::size_t i = 0; i < D; ++i) {
      if (!(A[i][i] > 0.0)) {
        throw SingularJacobianError("lyapunov: singular Jacobian product at step " + std::to_string(n), n);
      }
      logs[i] = log(A[i][i]);
    }
    sink(n, logs);
    state = map.step(state);
  }
  return state;
}

template <RealScalar Real>
void sort_descending(std::vector<Real>& v) {
  std::sort(v.begin(), v.end(), [](const Real& a, const Real& b) { return b < a; });
}

/// Weighted average of QR log-diagonals over N iterates with given weights.
template <RealScalar Real, class Map>
LyapunovResult<Real> lyapunov_exponents(const Map& map, const Vec<Real, Map::dim>& state0,
                                        const WeightSequence<Real>& weights) {
  constexpr std::size_t D = Map::dim;
  std::vector<CompensatedSum<Real>> acc(D);
  propagate_frame<Real>(map, state0, weights.size(), [&](std::size_t n, const Vec<Real, D>& logs) {
    for (std::size_t i = 0; i < D; ++i) acc[i].add(weights[n] * logs[i]);
  });
  LyapunovResult<Real> out;
  out.N = weights.size();
  out.kernel = weights.kind;
  for (auto& a : acc) out.exponents.push_back(a.value());
  sort_descending(out.exponents);
  return out;
}

/// Same, generating weights on the fly (no O(N) storage).
template <RealScalar Real, class Map>
LyapunovResult<Real> lyapunov_exponents(const Map& map, const Vec<Real, Map::dim>& state0, std::size_t N,
                                        Kernel kind) {
  constexpr std::size_t D = Map::dim;
  StreamingAverage<Real> avg(kind, N, D);
  propagate_frame<Real>(map, state0, N, [&](std::size_t, const Vec<Real, D>& logs) { avg.push(logs); });
  LyapunovResult<Real> out;
  out.N = N;
  out.kernel = kind;
  out.exponents = avg.value();
  sort_descending(out.exponents);
  return out;
}

}  // namespace qpavg
