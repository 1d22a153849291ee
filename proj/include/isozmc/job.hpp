#pragma once

#include <optional>
#include <string>

#include "isozmc/verify.hpp"

namespace isozmc {

inline constexpr const char* kToolName = "iso-zmc";
inline constexpr const char* kToolVersion = "1.0.0";

// One unit of CLI work: a family, its evaluation window, the numerical
// settings, the tolerance set, and where the outputs go.
struct JobConfig {
  WeierstrassFamily family;
  std::optional<GridSpec> grid;  // default_grid(family.tag) when unset
  NumericsConfig numerics;
  Tolerances tolerances;
  std::string out_path;
  std::string report_path;

  GridSpec resolved_grid() const {
    return grid ? *grid : default_grid(family.tag);
  }
  void validate() const {
    family.validate();
    resolved_grid().validate();
    tolerances.validate();
    if (numerics.quad.panels < 1 || numerics.quad.nodes < 2)
      throw std::invalid_argument("quadrature: panels >= 1 and order >= 2 required");
    if (numerics.fd_step_jet <= 0.0 || numerics.fd_step_affine <= 0.0)
      throw std::invalid_argument("fd steps must be positive");
  }
};

}  // namespace isozmc
