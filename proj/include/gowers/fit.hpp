#pragma once

#include <span>

namespace gowers {

struct LinearFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r2 = 0.0;
  std::size_t points = 0;
};

/// Ordinary least squares y ~ slope * x + intercept. Needs at least two
/// distinct x values; r2 is 1 when y is constant and fitted exactly.
LinearFit least_squares(std::span<const double> x, std::span<const double> y);

}  // namespace gowers
