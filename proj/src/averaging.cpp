#include "qpavg/averaging.hpp"

namespace qpavg {

double compensated_sum(std::span<const double> terms) {
  CompensatedSum<double> acc;
  for (double t : terms) acc.add(t);
  return acc.value();
}

}  // namespace qpavg
