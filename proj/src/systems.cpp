#include "qpavg/systems.hpp"

#include <string>

namespace qpavg {

std::string_view system_name(SystemKind k) {
  switch (k) {
    case SystemKind::standard_map:
      return "standard_map";
    case SystemKind::torus2d_map:
      return "torus2d_map";
    case SystemKind::vdp_flow:
      return "vdp_flow";
    case SystemKind::three_body_flow:
      return "three_body_flow";
  }
  return "unknown";
}

SystemKind parse_system(std::string_view name) {
  if (name == "standard" || name == "standard_map" || name == "stdmap") return SystemKind::standard_map;
  if (name == "torus2d" || name == "torus2d_map" || name == "torus") return SystemKind::torus2d_map;
  if (name == "vdp" || name == "vdp_flow" || name == "vanderpol") return SystemKind::vdp_flow;
  if (name == "three_body" || name == "three_body_flow" || name == "threebody" || name == "3body") {
    return SystemKind::three_body_flow;
  }
  throw ConfigError("unknown system '" + std::string(name) +
                    "' (expected standard, torus2d, vdp or three_body)");
}

}  // namespace qpavg
