#include "ramsey/quadrature.hpp"

namespace ramsey {

void validate(const QuadratureConfig& cfg) {
  if (!(cfg.rel_tol > 0.0) || !(cfg.abs_tol > 0.0)) {
    throw ConfigError("quadrature tolerances must be positive");
  }
  if (cfg.max_subdivisions < 1) throw ConfigError("max_subdivisions must be at least 1");
}

}  // namespace ramsey
