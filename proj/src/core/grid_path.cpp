#include "yp/grid_path.hpp"

#include <cmath>
#include <stdexcept>

namespace yp {

GridPath::GridPath(double horizon, std::size_t n_points, std::size_t dim, std::vector<double> values)
    : horizon_(horizon), n_(n_points), d_(dim), values_(std::move(values)) {
  if (!(horizon_ > 0.0) || !std::isfinite(horizon_))
    throw std::invalid_argument("GridPath: horizon must be positive and finite");
  if (n_ < 2) throw std::invalid_argument("GridPath: need at least 2 points");
  if (d_ < 1) throw std::invalid_argument("GridPath: dimension must be at least 1");
  if (values_.size() != n_ * d_) throw std::invalid_argument("GridPath: values size must be n_points*dim");
  for (double v : values_)
    if (!std::isfinite(v)) throw std::invalid_argument("GridPath: non-finite value");
}

GridPath GridPath::from_function(double horizon, std::size_t n_points,
                                 const std::function<double(double)>& f) {
  if (n_points < 2) throw std::invalid_argument("GridPath: need at least 2 points");
  std::vector<double> v(n_points);
  for (std::size_t i = 0; i < n_points; ++i) v[i] = f(horizon * double(i) / double(n_points - 1));
  return GridPath(horizon, n_points, 1, std::move(v));
}

GridPath GridPath::constant(double horizon, std::size_t n_points, std::span<const double> value) {
  std::vector<double> v;
  v.reserve(n_points * value.size());
  for (std::size_t i = 0; i < n_points; ++i) v.insert(v.end(), value.begin(), value.end());
  return GridPath(horizon, n_points, value.size(), std::move(v));
}

GridPath GridPath::from_columns(double horizon, const std::vector<std::vector<double>>& columns) {
  if (columns.empty()) throw std::invalid_argument("GridPath: no columns");
  const std::size_t n = columns.front().size();
  const std::size_t d = columns.size();
  std::vector<double> v(n * d);
  for (std::size_t k = 0; k < d; ++k) {
    if (columns[k].size() != n) throw std::invalid_argument("GridPath: ragged columns");
    for (std::size_t i = 0; i < n; ++i) v[i * d + k] = columns[k][i];
  }
  return GridPath(horizon, n, d, std::move(v));
}

std::vector<double> GridPath::component(std::size_t k) const {
  if (k >= d_) throw std::out_of_range("GridPath: component index");
  std::vector<double> c(n_);
  for (std::size_t i = 0; i < n_; ++i) c[i] = values_[i * d_ + k];
  return c;
}

double GridPath::norm_at(std::size_t i) const {
  if (d_ == 1) return std::abs(values_[i]);
  double s = 0.0;
  for (std::size_t k = 0; k < d_; ++k) s += values_[i * d_ + k] * values_[i * d_ + k];
  return std::sqrt(s);
}

GridPath GridPath::scaled(double c) const {
  std::vector<double> v(values_);
  for (double& x : v) x *= c;
  return GridPath(horizon_, n_, d_, std::move(v));
}

GridPath GridPath::subsample(std::size_t stride) const {
  if (stride == 0 || (n_ - 1) % stride != 0)
    throw std::invalid_argument("GridPath::subsample: stride must divide n_points-1");
  const std::size_t m = (n_ - 1) / stride + 1;
  std::vector<double> v;
  v.reserve(m * d_);
  for (std::size_t i = 0; i < n_; i += stride) {
    auto r = row(i);
    v.insert(v.end(), r.begin(), r.end());
  }
  return GridPath(horizon_, m, d_, std::move(v));
}

}  // namespace yp
