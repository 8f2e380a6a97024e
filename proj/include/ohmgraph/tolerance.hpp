#pragma once

#include <algorithm>
#include <cmath>

namespace ohmgraph {

/// Mixed relative/absolute comparison used by every check in the library.
struct Tolerance {
  double relative = 1e-9;
  double absolute = 1e-12;

  bool close(double a, double b) const {
    const double scale = std::max(std::abs(a), std::abs(b));
    return std::abs(a - b) <= absolute + relative * scale;
  }

  /// Deviation measured in units of the allowed slack; <= 1 means close.
  double excess(double a, double b) const {
    const double scale = std::max(std::abs(a), std::abs(b));
    return std::abs(a - b) / (absolute + relative * scale);
  }
};

/// Reads OHMGRAPH_TOL (a relative tolerance) if set and parseable.
Tolerance tolerance_from_env();

}  // namespace ohmgraph
