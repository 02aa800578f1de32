#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace yp {

/// A d-dimensional signal sampled on the uniform grid t_i = i·T/(n−1).
/// Times are always derived from the index, never stored. Values are
/// row-major: sample i occupies values()[i·d, (i+1)·d).
class GridPath {
 public:
  GridPath(double horizon, std::size_t n_points, std::size_t dim, std::vector<double> values);

  /// One-dimensional path from a function of time.
  static GridPath from_function(double horizon, std::size_t n_points,
                                const std::function<double(double)>& f);
  static GridPath constant(double horizon, std::size_t n_points, std::span<const double> value);
  /// Build from separate component columns (all of equal length).
  static GridPath from_columns(double horizon, const std::vector<std::vector<double>>& columns);

  double horizon() const { return horizon_; }
  std::size_t size() const { return n_; }
  std::size_t dim() const { return d_; }
  double step() const { return horizon_ / double(n_ - 1); }
  double time(std::size_t i) const { return horizon_ * double(i) / double(n_ - 1); }

  double operator()(std::size_t i, std::size_t k = 0) const { return values_[i * d_ + k]; }
  std::span<const double> row(std::size_t i) const { return {values_.data() + i * d_, d_}; }
  std::span<const double> values() const { return values_; }
  std::vector<double> component(std::size_t k) const;

  /// Euclidean norm of the sample at index i.
  double norm_at(std::size_t i) const;

  GridPath scaled(double c) const;
  /// Every stride-th sample; (n−1) must be divisible by stride.
  GridPath subsample(std::size_t stride) const;

  bool operator==(const GridPath& o) const = default;

 private:
  double horizon_;
  std::size_t n_;
  std::size_t d_;
  std::vector<double> values_;
};

}  // namespace yp
