#include "qpavg/kernels.hpp"

#include <string>

namespace qpavg {

std::string_view kernel_name(Kernel k) {
  switch (k) {
    case Kernel::equal:
      return "equal";
    case Kernel::quad:
      return "quad";
    case Kernel::sin2:
      return "sin2";
    case Kernel::exp:
      return "exp";
  }
  return "unknown";
}

Kernel parse_kernel(std::string_view name) {
  for (Kernel k : kAllKernels) {
    if (kernel_name(k) == name) return k;
  }
  throw ConfigError("unknown kernel '" + std::string(name) + "' (expected equal, quad, sin2 or exp)");
}

}  // namespace qpavg
