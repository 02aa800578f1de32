#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "yp/error.hpp"
#include "yp/ladder.hpp"

namespace yp {

namespace {

double norm(std::span<const double> v) {
  double s = 0.0;
  for (double c : v) s += c * c;
  return std::sqrt(s);
}

// σ_n for each driver component, built lazily per level.
class SlavedField {
 public:
  SlavedField(const std::vector<Coefficient>& coeffs, bool regularize) : coeffs_(coeffs), regularize_(regularize) {}

  // Adds Σ_j σ^j(y)·dx_j to out.
  void apply(std::span<const double> y, double r, std::span<const double> dx, std::span<double> out,
             std::span<double> scratch) {
    if (!regularize_) {
      for (std::size_t j = 0; j < coeffs_.size(); ++j) {
        coeffs_[j].eval(y, scratch);
        for (std::size_t k = 0; k < out.size(); ++k) out[k] += scratch[k] * dx[j];
      }
      return;
    }
    const unsigned n = level_for(r);
    max_level_ = std::max(max_level_, n);
    if (cache_.size() <= n) cache_.resize(n + 1);
    auto& level = cache_[n];
    if (level.empty())
      for (const auto& c : coeffs_) level.emplace_back(c, n);
    for (std::size_t j = 0; j < level.size(); ++j) {
      level[j].eval(y, scratch);
      for (std::size_t k = 0; k < out.size(); ++k) out[k] += scratch[k] * dx[j];
    }
  }

  unsigned max_level() const { return max_level_; }

 private:
  // 2^{-n} ≤ r/4.
  static unsigned level_for(double r) {
    const double n = std::floor(-std::log2(r)) + 3.0;
    return n < 0.0 ? 0u : unsigned(n);
  }

  const std::vector<Coefficient>& coeffs_;
  bool regularize_;
  unsigned max_level_ = 0;
  std::vector<std::vector<RegularizedCoefficient>> cache_;
};

}  // namespace

SolverOutput solve_multidim(const GridPath& x, const std::vector<Coefficient>& coeffs, const std::vector<double>& a,
                            const SolverOptions& options) {
  const std::size_t d = x.dim(), m = a.size();
  if (coeffs.size() != d) throw std::invalid_argument("solve_multidim: need one coefficient per driver component");
  for (const auto& c : coeffs)
    if (c.dim() != m) throw std::invalid_argument("solve_multidim: coefficient dimension differs from the initial value");
  const double a_norm = norm(a);
  if (!(a_norm > 0.0)) throw std::invalid_argument("solve_multidim: initial value must be nonzero");
  if (options.substeps == 0) throw std::invalid_argument("solve_multidim: substeps must be positive");

  SolverOutput out;
  out.substeps = options.substeps;
  out.absorb_threshold = options.absorb_threshold ? *options.absorb_threshold : std::ldexp(a_norm, -40);
  if (!(out.absorb_threshold >= 0.0)) throw std::invalid_argument("solve_multidim: negative absorption threshold");

  const std::size_t n = x.size();
  const double h = x.step(), sub_h = h / double(options.substeps);
  std::vector<double> values(n * m, 0.0);
  std::vector<double> y(a), next(m), scratch(m), dx(d);
  std::copy(a.begin(), a.end(), values.begin());
  out.min_norm = a_norm;
  SlavedField field(coeffs, options.regularize);

  std::optional<std::size_t> absorbed_at;
  for (std::size_t i = 0; i + 1 < n && !absorbed_at; ++i) {
    for (std::size_t j = 0; j < d; ++j) dx[j] = (x(i + 1, j) - x(i, j)) / double(options.substeps);
    for (std::size_t s = 0; s < options.substeps; ++s) {
      const double r = norm(y);
      next = y;
      field.apply(y, r, dx, next, scratch);
      for (double v : next)
        if (!std::isfinite(v))
          throw DivergenceError("solve_multidim: non-finite state at t=" + std::to_string(x.time(i)));
      // Closest approach of the segment y → next to the origin.
      double dot = 0.0, len2 = 0.0;
      for (std::size_t k = 0; k < m; ++k) {
        const double delta = next[k] - y[k];
        dot += y[k] * delta;
        len2 += delta * delta;
      }
      const double u = len2 > 0.0 ? std::clamp(-dot / len2, 0.0, 1.0) : 0.0;
      double closest = 0.0;
      for (std::size_t k = 0; k < m; ++k) {
        const double c = y[k] + u * (next[k] - y[k]);
        closest += c * c;
      }
      closest = std::sqrt(closest);
      if (closest < out.absorb_threshold || closest == 0.0) {
        absorbed_at = i + 1;
        out.tau_substep = x.time(i) + (double(s) + u) * sub_h;
        break;
      }
      out.min_norm = std::min(out.min_norm, closest);
      y.swap(next);
    }
    if (!absorbed_at) std::copy(y.begin(), y.end(), values.begin() + std::ptrdiff_t((i + 1) * m));
  }

  out.y = GridPath(x.horizon(), n, m, std::move(values));
  out.max_level = field.max_level();
  if (absorbed_at) {
    out.solve_case = SolveCase::B;
    out.tau_index = *absorbed_at;
    out.tau = x.time(*absorbed_at);
  }
  auto ladder = extract_ladder(out.y, out.tau_index, JumpPolicy::Truncate);
  out.events = std::move(ladder.events);
  out.ladder_truncated = ladder.truncated;
  return out;
}

}  // namespace yp
