#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace yp {

/// Pairwise (cascade) summation. The order is fixed by the input length only,
/// so results do not depend on how the terms were produced.
double pairwise_sum(std::span<const double> v);

struct LinearFit {
  double slope = 0.0;
  double intercept = 0.0;
  double residual_rms = 0.0;  // sqrt(mean squared residual)
  double slope_stderr = 0.0;
  std::size_t points = 0;
};

/// Ordinary least squares y ≈ intercept + slope·x. Needs ≥ 2 distinct x.
LinearFit fit_line(std::span<const double> x, std::span<const double> y);

struct MeanVar {
  double mean = 0.0;
  double variance = 0.0;  // unbiased
  std::size_t n = 0;
};

MeanVar mean_var(std::span<const double> v);

}  // namespace yp
