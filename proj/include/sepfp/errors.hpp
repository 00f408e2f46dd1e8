#pragma once

#include <array>
#include <stdexcept>
#include <string>

namespace sepfp {

/// A coordinate map or its Jacobian degenerates at the requested point.
class CoordinateSingularity : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An iterative solver stopped without meeting its tolerance.
class ConvergenceFailure : public std::runtime_error {
 public:
  ConvergenceFailure(const std::string& what, std::array<double, 3> last)
      : std::runtime_error(what), last_iterate(last) {}
  std::array<double, 3> last_iterate;
};

/// The drift matrix falls outside every separable family.
class NotSeparableDrift : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// The chart is not admissible for the drift's classification.
class InadmissibleChart : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

}  // namespace sepfp
