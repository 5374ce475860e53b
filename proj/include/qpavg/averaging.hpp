#pragma once

#include <cmath>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "qpavg/errors.hpp"
#include "qpavg/kernels.hpp"
#include "qpavg/real.hpp"

namespace qpavg {

/// Neumaier summation for double. For DD the pair already carries the
/// rounding error of each addition, so plain accumulation is used.
template <RealScalar Real>
class CompensatedSum {
 public:
  void add(const Real& x) {
    if constexpr (std::is_same_v<Real, double>) {
      const double t = sum_ + x;
      if (std::fabs(sum_) >= std::fabs(x)) {
        comp_ += (sum_ - t) + x;
      } else {
        comp_ += (x - t) + sum_;
      }
      sum_ = t;
    } else {
      sum_ += x;
    }
  }

  Real value() const {
    if constexpr (std::is_same_v<Real, double>) {
      return sum_ + comp_;
    } else {
      return sum_;
    }
  }

 private:
  Real sum_{0.0};
  double comp_ = 0.0;
};

double compensated_sum(std::span<const double> terms);

/// N observations of a d-dimensional observable, stored row-major.
template <RealScalar Real>
struct OrbitSample {
  std::size_t dim = 1;
  std::vector<Real> values;

  std::size_t size() const noexcept { return dim == 0 ? 0 : values.size() / dim; }
  const Real& at(std::size_t n, std::size_t i) const { return values[n * dim + i]; }

  static OrbitSample scalar(std::vector<Real> v) { return {1, std::move(v)}; }
};

template <RealScalar Real>
struct AverageResult {
  std::vector<Real> value;
  std::size_t N = 0;
  Kernel kernel = Kernel::exp;
};

template <RealScalar Real>
AverageResult<Real> weighted_average(const OrbitSample<Real>& sample, const WeightSequence<Real>& weights) {
  const std::size_t N = sample.size();
  if (sample.dim == 0 || sample.values.size() != N * sample.dim) {
    throw ConfigError("weighted_average: ragged orbit sample");
  }
  if (N != weights.size()) {
    throw ConfigError("weighted_average: sample has " + std::to_string(N) + " points but weights have " +
                      std::to_string(weights.size()));
  }
  using std::isfinite;
  std::vector<CompensatedSum<Real>> acc(sample.dim);
  for (std::size_t n = 0; n < N; ++n) {
    for (std::size_t i = 0; i < sample.dim; ++i) {
      const Real& v = sample.at(n, i);
      if (!isfinite(v)) throw ConfigError("weighted_average: non-finite value at index " + std::to_string(n));
      acc[i].add(weights[n] * v);
    }
  }
  AverageResult<Real> out;
  out.N = N;
  out.kernel = weights.kind;
  out.value.reserve(sample.dim);
  for (auto& a : acc) out.value.push_back(a.value());
  return out;
}

/// WB_N computed on the fly for a fixed, known N: weights w(n/N) are
/// generated as values arrive and normalized at the end, so an orbit of 10^7
/// points never has to be stored.
template <RealScalar Real>
class StreamingAverage {
 public:
  StreamingAverage(Kernel kind, std::size_t N, std::size_t dim = 1) : kind_(kind), N_(N), acc_(dim) {
    if (N < 2) throw ConfigError("StreamingAverage: N must be at least 2");
  }

  /// Adds f(x_n) for the next index n; ignored once N values have been seen.
  template <class Vec>
  void push(const Vec& values) {
    if (n_ >= N_) return;
    const Real w = evaluate_at<Real>(kind_, n_, N_);
    total_.add(w);
    for (std::size_t i = 0; i < acc_.size(); ++i) acc_[i].add(w * values[i]);
    ++n_;
  }

  void push_scalar(const Real& v) {
    const Real a[1] = {v};
    push(a);
  }

  bool full() const noexcept { return n_ >= N_; }
  std::size_t count() const noexcept { return n_; }
  std::size_t N() const noexcept { return N_; }
  Kernel kernel() const noexcept { return kind_; }

  std::vector<Real> value() const {
    if (n_ != N_) {
      throw ConfigError("StreamingAverage: received " + std::to_string(n_) + " of " + std::to_string(N_) + " values");
    }
    const Real t = total_.value();
    std::vector<Real> out;
    out.reserve(acc_.size());
    for (const auto& a : acc_) out.push_back(a.value() / t);
    return out;
  }

 private:
  Kernel kind_;
  std::size_t N_;
  std::size_t n_ = 0;
  CompensatedSum<Real> total_;
  std::vector<CompensatedSum<Real>> acc_;
};

}  // namespace qpavg
