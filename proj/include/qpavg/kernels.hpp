#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "qpavg/errors.hpp"
#include "qpavg/real.hpp"

namespace qpavg {

enum class Kernel { equal, quad, sin2, exp };

inline constexpr Kernel kAllKernels[] = {Kernel::equal, Kernel::quad, Kernel::sin2, Kernel::exp};

std::string_view kernel_name(Kernel k);

/// "equal", "quad", "sin2" or "exp"; throws ConfigError otherwise.
Kernel parse_kernel(std::string_view name);

/// Weight function w(t). Zero outside (0,1) except `equal`, which is 1 on
/// [0,1]. Evaluated on min(t, 1-t) so that w(t) == w(1-t) bit for bit.
template <RealScalar Real>
Real evaluate(Kernel kind, const Real& t) {
  using std::exp;
  using std::sin;
  if (kind == Kernel::equal) return (t >= 0.0 && t <= 1.0) ? Real{1.0} : Real{0.0};
  if (!(t > 0.0 && t < 1.0)) return Real{0.0};
  const Real u = t > 0.5 ? Real{1.0 - t} : t;
  const Real v = 1.0 - u;
  switch (kind) {
    case Kernel::quad:
      return u * v;
    case Kernel::sin2: {
      const Real s = sin(pi<Real>() * u);
      return s * s;
    }
    case Kernel::exp:
      return exp(-1.0 / (u * v));
    default:
      return Real{1.0};
  }
}

/// w(n/N) with the symmetric index min(n, N-n) so that sequences are exactly
/// palindromic about N/2.
template <RealScalar Real>
Real evaluate_at(Kernel kind, std::size_t n, std::size_t N) {
  if (kind == Kernel::equal) return Real{1.0};
  const std::size_t m = n <= N - n ? n : N - n;
  const Real t = Real{static_cast<double>(m)} / static_cast<double>(N);
  return evaluate<Real>(kind, t);
}

template <RealScalar Real>
struct WeightSequence {
  Kernel kind = Kernel::exp;
  std::vector<Real> weights;

  std::size_t size() const noexcept { return weights.size(); }
  const Real& operator[](std::size_t n) const { return weights[n]; }
};

/// Normalized weights w(n/N) / sum_j w(j/N), n = 0 .. N-1.
template <RealScalar Real>
WeightSequence<Real> normalized_weights(Kernel kind, std::size_t N) {
  if (N < 2) throw ConfigError("normalized_weights: N must be at least 2");
  WeightSequence<Real> out;
  out.kind = kind;
  out.weights.resize(N);
  Real total{0.0};
  double comp = 0.0;
  for (std::size_t n = 0; n < N; ++n) {
    out.weights[n] = evaluate_at<Real>(kind, n, N);
    if constexpr (std::is_same_v<Real, double>) {
      auto [s, e] = eft::two_sum(total, out.weights[n]);
      total = s;
      comp += e;
    } else {
      total += out.weights[n];
    }
  }
  total += comp;
  for (auto& w : out.weights) w /= total;
  return out;
}

}  // namespace qpavg
