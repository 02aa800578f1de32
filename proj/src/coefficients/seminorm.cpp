#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "yp/coefficients.hpp"
#include "yp/quadrature.hpp"
#include "yp/rng.hpp"

namespace yp {

namespace {

double euclid(std::span<const double> v) {
  double s = 0.0;
  for (double x : v) s += x * x;
  return std::sqrt(s);
}

using Field = std::function<void(double, std::span<double>)>;

// Radii for the dense scan: uniform on [0, R] plus a geometric cluster near 0.
std::vector<double> scan_radii(double radius) {
  std::vector<double> r;
  constexpr int kUniform = 1200, kGeometric = 300;
  for (int i = 0; i <= kUniform; ++i) r.push_back(radius * double(i) / kUniform);
  for (int i = 0; i < kGeometric; ++i) r.push_back(radius * std::pow(10.0, -8.0 + 8.0 * double(i) / kGeometric));
  std::sort(r.begin(), r.end());
  r.erase(std::unique(r.begin(), r.end()), r.end());
  return r;
}

double radius_scan(const Field& field, double kappa, std::size_t dim, double radius, double* arg1, double* arg2) {
  const auto r = scan_radii(radius);
  std::vector<double> vals(r.size() * dim), rk(r.size());
  for (std::size_t i = 0; i < r.size(); ++i) {
    field(r[i], std::span<double>(vals.data() + i * dim, dim));
    rk[i] = std::pow(r[i], kappa);
  }
  double best = 0.0;
  for (std::size_t i = 0; i < r.size(); ++i) {
    for (std::size_t j = i + 1; j < r.size(); ++j) {
      const double den = rk[j] - rk[i];
      if (!(den > 0.0)) continue;
      double num2 = 0.0;
      for (std::size_t k = 0; k < dim; ++k) {
        const double d = vals[j * dim + k] - vals[i * dim + k];
        num2 += d * d;
      }
      const double ratio = std::sqrt(num2) / den;
      if (ratio > best) {
        best = ratio;
        if (arg1) *arg1 = r[i];
        if (arg2) *arg2 = r[j];
      }
    }
  }
  return best;
}

SeminormEstimate estimate_impl(const Field& field, double kappa, std::size_t dim, std::size_t n_samples, double radius,
                               std::uint64_t seed, std::optional<double> exact) {
  if (n_samples < 2) throw std::invalid_argument("seminorm_estimate: need at least 2 samples");
  if (!(radius > 0.0)) throw std::invalid_argument("seminorm_estimate: radius must be positive");
  Rng rng(seed);
  SeminormEstimate est;
  est.samples = n_samples;
  std::vector<double> x1(dim), x2(dim), s1(dim), s2(dim);
  auto random_point = [&](std::vector<double>& x) {
    for (double& v : x) v = rng.normal();
    const double nv = euclid(x);
    const double r = radius * rng.uniform();
    for (double& v : x) v *= nv > 0.0 ? r / nv : 0.0;
  };
  bool any = false;
  for (std::size_t s = 0; s < n_samples; ++s) {
    random_point(x1);
    random_point(x2);
    const double r1 = euclid(x1), r2 = euclid(x2);
    const double den = std::abs(std::pow(r2, kappa) - std::pow(r1, kappa));
    if (!(den > 0.0)) continue;
    any = true;
    field(r1, s1);
    field(r2, s2);
    double num2 = 0.0;
    for (std::size_t k = 0; k < dim; ++k) num2 += (s2[k] - s1[k]) * (s2[k] - s1[k]);
    const double ratio = std::sqrt(num2) / den;
    if (ratio > est.sampled_value) {
      est.sampled_value = ratio;
      est.arg_xi1 = x1;
      est.arg_xi2 = x2;
    }
  }
  if (!any) throw std::invalid_argument("seminorm_estimate: all sampled pairs have equal radii");
  if (exact) {
    est.value = *exact;
    est.scan_value = *exact;
    est.exact = true;
    return est;
  }
  est.scan_value = radius_scan(field, kappa, dim, radius, nullptr, nullptr);
  est.value = std::max(est.sampled_value, est.scan_value);
  return est;
}

}  // namespace

SeminormEstimate seminorm_estimate(const Coefficient& c, std::size_t n_samples, double radius, std::uint64_t seed) {
  Field f = [&c](double r, std::span<double> out) { c.eval_radius(r, out); };
  return estimate_impl(f, c.kappa(), c.dim(), n_samples, radius, seed, c.exact_seminorm());
}

SeminormEstimate seminorm_estimate(const RegularizedCoefficient& c, std::size_t n_samples, double radius,
                                   std::uint64_t seed) {
  Field f = [&c](double r, std::span<double> out) { c.eval_radius(r, out); };
  return estimate_impl(f, c.base().kappa(), c.base().dim(), n_samples, radius, seed, std::nullopt);
}

double sampled_seminorm(const Field& field, double kappa, std::size_t dim, std::span<const double> r1,
                        std::span<const double> r2) {
  if (r1.size() != r2.size()) throw std::invalid_argument("sampled_seminorm: size mismatch");
  std::vector<double> s1(dim), s2(dim);
  double best = 0.0;
  for (std::size_t i = 0; i < r1.size(); ++i) {
    const double den = std::abs(std::pow(r2[i], kappa) - std::pow(r1[i], kappa));
    if (!(den > 0.0)) continue;
    field(r1[i], s1);
    field(r2[i], s2);
    double num2 = 0.0;
    for (std::size_t k = 0; k < dim; ++k) num2 += (s2[k] - s1[k]) * (s2[k] - s1[k]);
    best = std::max(best, std::sqrt(num2) / den);
  }
  return best;
}

double seminorm_for_bounds(const Coefficient& c, double radius) {
  if (auto e = c.exact_seminorm()) return *e;
  if (!(radius > 0.0)) return 0.0;
  Field f = [&c](double r, std::span<double> out) { c.eval_radius(r, out); };
  return radius_scan(f, c.kappa(), c.dim(), radius, nullptr, nullptr);
}

InterpolationBound lemma23_bound(const Coefficient& c, std::span<const double> xi1, std::span<const double> xi2,
                                 double eta) {
  const double kappa = c.kappa();
  if (!(eta >= 0.0 && eta <= 1.0 - kappa)) throw std::invalid_argument("lemma23_bound: eta must lie in [0, 1-kappa]");
  if (xi1.size() != c.dim() || xi2.size() != c.dim()) throw std::invalid_argument("lemma23_bound: dimension mismatch");
  const double r1 = euclid(xi1), r2 = euclid(xi2);
  if (r1 == 0.0 || r2 == 0.0) throw std::invalid_argument("lemma23_bound: xi must be non-zero");

  const auto s1 = c.eval(xi1);
  const auto s2 = c.eval(xi2);
  double lhs2 = 0.0, dist2 = 0.0;
  for (std::size_t k = 0; k < c.dim(); ++k) {
    lhs2 += (s2[k] - s1[k]) * (s2[k] - s1[k]);
    dist2 += (xi2[k] - xi1[k]) * (xi2[k] - xi1[k]);
  }
  const double N = seminorm_for_bounds(c, std::max(r1, r2));
  InterpolationBound b;
  b.lhs = std::sqrt(lhs2);
  b.rhs = kappa / (kappa + eta) * N * (std::pow(r2, -eta) + std::pow(r1, -eta)) * std::pow(std::sqrt(dist2), kappa + eta);
  return b;
}

std::string to_string(Regime r) { return r == Regime::SuperYoung ? "super-Young" : "classical Young"; }

HypothesisReport check_hypotheses(const Coefficient& c, double gamma) {
  HypothesisReport rep;
  const double kappa = c.kappa();
  rep.regime_witness = gamma * (kappa + 1.0);
  rep.regime = rep.regime_witness <= 1.0 ? Regime::SuperYoung : Regime::ClassicalYoung;

  // Sampled grid of ℝ₊: geometric near zero, then uniform up to 10.
  std::vector<double> r;
  for (int i = 0; i <= 400; ++i) r.push_back(std::pow(10.0, -8.0 + 8.0 * i / 400.0));
  for (int i = 1; i <= 4000; ++i) r.push_back(1.0 + 9.0 * i / 4000.0);
  double min_inc = std::numeric_limits<double>::infinity();
  double worst_ratio = 0.0;
  double prev = c.profile(0.0);
  double prev_r = 0.0;
  for (double ri : r) {
    const double v = c.profile(ri);
    min_inc = std::min(min_inc, v - prev);
    // Halving a cell roughly halves the change of a continuous profile
    // (factor 2^-κ at worst near 0); a jump keeps the full change in one half.
    const double jump = std::abs(v - prev);
    if (jump > 1e-12 * std::max(std::abs(v), 1e-300)) {
      const double mid = c.profile(0.5 * (prev_r + ri));
      worst_ratio = std::max(worst_ratio, std::max(std::abs(mid - prev), std::abs(v - mid)) / jump);
    }
    prev = v;
    prev_r = ri;
  }
  rep.monotone_witness = min_inc;
  rep.monotone = min_inc >= 0.0;
  rep.continuity_witness = worst_ratio;
  rep.continuous = worst_ratio < 0.999;

  auto rho = [&c](double s) { return c.profile(s); };
  const auto integral = inverse_profile_integral(rho, kappa, 0.0, 1.0);
  rep.inverse_integral = integral.value;
  rep.inverse_integrable = integral.finite;

  double lb = std::numeric_limits<double>::infinity();
  for (int i = 0; i <= 400; ++i) {
    const double ri = std::pow(10.0, -8.0 + 8.0 * i / 400.0);
    lb = std::min(lb, c.profile(ri) / std::pow(ri, kappa));
  }
  rep.lower_bound_constant = lb;
  rep.lower_bound = lb > 0.0;
  return rep;
}

}  // namespace yp
