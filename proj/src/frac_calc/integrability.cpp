#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <stdexcept>
#include <vector>

#include "yp/frac_calc.hpp"
#include "yp/stats.hpp"

namespace yp {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// ∫ over one cell of |r(s)|^{-p} with r linear between r0 > 0 and r1 > 0.
double linear_cell(double r0, double r1, double h, double p) {
  if (r0 == r1) return h * std::pow(r0, -p);
  if (p == 1.0) return h * (std::log(r1) - std::log(r0)) / (r1 - r0);
  return h * (std::pow(r1, 1.0 - p) - std::pow(r0, 1.0 - p)) / ((1.0 - p) * (r1 - r0));
}

// ∫_0^d (c u^β)^{-p} du where c·d^β = y_at_d.
double power_piece(double y_at_d, double d, double beta, double p) {
  if (beta * p >= 1.0 - 1e-9) return kInf;
  return d * std::pow(y_at_d, -p) / (1.0 - beta * p);
}

// A zero of y with samples of |y| along its own excursion on each side, as
// (distance to the zero, |y|).
struct Zero {
  std::vector<std::pair<double, double>> samples;
};

// Node offsets from the node nearest the zero: dyadic distances in cells.
constexpr std::size_t kLags[] = {0, 1, 3, 7, 15, 31};

// Exponent β of |y| ≈ c_z·d^β shared by all zeros: the median of the slopes
// of log|y| against log d over all sample pairs of the same zero (pooled
// Theil–Sen). The two adjacent cells alone are too few to pin β down on
// Brownian-like data (the per-zero ratio has Cauchy-like tails, and the zero at
// t = 0 is one-sided); pooling, dyadic lags and the median keep one unusually
// small sample next to a zero from dominating. Falls back to linear
// vanishing (β = 1).
double shared_exponent(const std::vector<Zero>& zeros) {
  std::vector<double> slopes;
  for (const auto& z : zeros) {
    for (std::size_t i = 0; i < z.samples.size(); ++i)
      for (std::size_t j = i + 1; j < z.samples.size(); ++j) {
        const auto [di, vi] = z.samples[i];
        const auto [dj, vj] = z.samples[j];
        if (!(di > 0.0 && dj > 0.0 && vi > 0.0 && vj > 0.0) || di == dj) continue;
        slopes.push_back((std::log(vj) - std::log(vi)) / (std::log(dj) - std::log(di)));
      }
  }
  if (slopes.empty()) return 1.0;
  const auto mid = slopes.begin() + std::ptrdiff_t(slopes.size() / 2);
  std::nth_element(slopes.begin(), mid, slopes.end());
  double beta = *mid;
  if (slopes.size() % 2 == 0) beta = 0.5 * (beta + *std::max_element(slopes.begin(), mid));
  return std::isfinite(beta) && beta > 0.0 ? beta : 1.0;
}

}  // namespace

double inv_integrability(const GridPath& y, double p) {
  if (!(p > 0.0)) throw std::invalid_argument("inv_integrability: exponent must be positive");
  const std::size_t n = y.size();
  const double h = y.step();
  const bool scalar = y.dim() == 1;

  // Signed values in 1-D (crossings are sign changes), norms otherwise.
  std::vector<double> v(n);
  for (std::size_t i = 0; i < n; ++i) v[i] = scalar ? y(i, 0) : y.norm_at(i);
  auto mag = [&](std::size_t i) { return std::abs(v[i]); };
  auto crossing = [&](std::size_t i) { return v[i] != 0.0 && v[i + 1] != 0.0 && v[i] * v[i + 1] < 0.0; };

  // Samples on one side of a zero, from `start` outwards in direction `dir`,
  // while y keeps the sign (or, for norms, stays nonzero) of the start node.
  auto collect = [&](Zero& z, std::size_t start, int dir, double d_start) {
    const double sign = v[start];
    for (std::size_t lag : kLags) {
      const auto j = std::ptrdiff_t(start) + dir * std::ptrdiff_t(lag);
      if (j < 0 || j >= std::ptrdiff_t(n)) break;
      const double vj = v[std::size_t(j)];
      if (scalar ? vj * sign <= 0.0 : vj == 0.0) break;
      z.samples.emplace_back(d_start + double(lag) * h, std::abs(vj));
    }
  };

  // Pass 1: collect zeros and samples around them.
  std::vector<Zero> zeros;
  for (std::size_t i = 0; i + 1 < n; ++i) {
    if (v[i] == 0.0 && v[i + 1] == 0.0) return kInf;
    if (crossing(i)) {
      const double d0 = h * mag(i) / (mag(i) + mag(i + 1)), d1 = h - d0;
      Zero z;
      collect(z, i, -1, d0);
      collect(z, i + 1, +1, d1);
      zeros.push_back(std::move(z));
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (v[i] != 0.0) continue;
    Zero z;
    if (i >= 1) collect(z, i - 1, -1, h);
    if (i + 1 < n) collect(z, i + 1, +1, h);
    zeros.push_back(std::move(z));
  }
  const double beta = zeros.empty() ? 1.0 : shared_exponent(zeros);

  // Pass 2: integrate cell by cell.
  std::vector<double> cells(n - 1);
  for (std::size_t i = 0; i + 1 < n; ++i) {
    const double r0 = mag(i), r1 = mag(i + 1);
    if (r0 == 0.0) {
      cells[i] = power_piece(r1, h, beta, p);
    } else if (r1 == 0.0) {
      cells[i] = power_piece(r0, h, beta, p);
    } else if (crossing(i)) {
      const double d0 = h * r0 / (r0 + r1);
      cells[i] = power_piece(r0, d0, beta, p) + power_piece(r1, h - d0, beta, p);
    } else {
      cells[i] = linear_cell(r0, r1, h, p);
    }
    if (!std::isfinite(cells[i])) return kInf;
  }
  return pairwise_sum(cells);
}

}  // namespace yp
