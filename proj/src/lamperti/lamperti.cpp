#include "yp/lamperti.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "yp/error.hpp"
#include "yp/path_io.hpp"
#include "yp/quadrature.hpp"

namespace yp {

namespace {

constexpr int kTableMinExp = -60;
// Dyadic table up to 2^1000 keeps every quadrature piece within one octave.
constexpr int kTableMaxExp = 1000;

}  // namespace

LampertiMap::LampertiMap(Coefficient coeff, std::optional<unsigned> level) : coeff_(std::move(coeff)), level_(level) {
  if (coeff_.dim() != 1) throw std::invalid_argument("Lamperti map: coefficient must be one-dimensional");
  if (coeff_.scalar_profile() && !(coeff_.direction()[0] > 0.0))
    throw std::invalid_argument("Lamperti map: coefficient must be positive away from 0");
  if (!closed_form()) {
    const auto rho = [this](double s) { return coeff_.profile(s); };
    const auto head = inverse_profile_integral(rho, coeff_.kappa(), 0.0, std::ldexp(1.0, kTableMinExp));
    if (!head.finite || !inverse_profile_integral(rho, coeff_.kappa(), 0.0, 1.0).finite)
      throw DivergenceError("Lamperti map: 1/ρ is not integrable at 0 for profile '" + coeff_.name() + "'");
    min_exp_ = kTableMinExp;
    max_exp_ = kTableMaxExp;
    table_.resize(std::size_t(max_exp_ - min_exp_ + 1));
    table_[0] = head.value;
    for (int e = min_exp_; e < max_exp_; ++e) {
      const auto seg = inverse_profile_integral(rho, coeff_.kappa(), std::ldexp(1.0, e), std::ldexp(1.0, e + 1));
      if (!seg.finite) throw DivergenceError("Lamperti map: quadrature failed for profile '" + coeff_.name() + "'");
      table_[std::size_t(e + 1 - min_exp_)] = table_[std::size_t(e - min_exp_)] + seg.value;
    }
  }
  if (level_) {
    theta_ = std::ldexp(1.0, -int(*level_));
    rho_theta_ = coeff_.profile(theta_);
    phi_theta_ = phi_plain(theta_);
  }
}

double LampertiMap::phi_plain(double r) const {
  if (r == 0.0) return 0.0;
  const double kappa = coeff_.kappa();
  if (closed_form()) return std::pow(r, 1.0 - kappa) / (coeff_.scale() * (1.0 - kappa));
  const auto rho = [this](double s) { return coeff_.profile(s); };
  int e = 0;
  std::frexp(r, &e);  // r ∈ [2^{e−1}, 2^e)
  const int lower = e - 1;
  if (lower < min_exp_) return inverse_profile_integral(rho, kappa, 0.0, r).value;
  if (lower <= max_exp_)
    return table_[std::size_t(lower - min_exp_)] + inverse_profile_integral(rho, kappa, std::ldexp(1.0, lower), r).value;
  // Above the table: one octave at a time.
  double v = table_.back();
  for (int o = max_exp_; o < lower; ++o)
    v += inverse_profile_integral(rho, kappa, std::ldexp(1.0, o), std::ldexp(1.0, o + 1)).value;
  return v + inverse_profile_integral(rho, kappa, std::ldexp(1.0, lower), r).value;
}

double LampertiMap::phi_plain_inverse(double v) const {
  if (v == 0.0) return 0.0;
  const double kappa = coeff_.kappa();
  if (closed_form()) return std::pow(coeff_.scale() * (1.0 - kappa) * v, 1.0 / (1.0 - kappa));

  double lo = 0.0, hi = 0.0;
  if (v < table_.front()) {
    hi = std::ldexp(1.0, min_exp_);
  } else if (v >= table_.back()) {
    lo = std::ldexp(1.0, max_exp_);
    hi = 2.0 * lo;
    while (phi_plain(hi) < v) {
      if (hi > std::ldexp(1.0, 1020))
        throw DivergenceError("Lamperti map: φ^{-1}(" + std::to_string(v) + ") exceeds the double range");
      lo = hi;
      hi *= 2.0;
    }
  } else {
    std::size_t j = 0;
    while (table_[j + 1] <= v) ++j;
    lo = std::ldexp(1.0, min_exp_ + int(j));
    hi = 2.0 * lo;
  }
  const double tol = 1e-12 * (1.0 + v);
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    const double f = phi_plain(mid);
    if (std::abs(f - v) <= tol) return mid;
    (f < v ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

double LampertiMap::phi(double xi) const {
  const double r = std::abs(xi);
  double v;
  if (level_ && r <= theta_)
    v = r / rho_theta_;
  else if (level_)
    v = theta_ / rho_theta_ + (phi_plain(r) - phi_theta_);
  else
    v = phi_plain(r);
  return std::copysign(v, xi);
}

double LampertiMap::phi_inverse(double v) const {
  const double w = std::abs(v);
  double r;
  if (level_ && w <= theta_ / rho_theta_)
    r = w * rho_theta_;
  else if (level_)
    r = phi_plain_inverse(w - theta_ / rho_theta_ + phi_theta_);
  else
    r = phi_plain_inverse(w);
  return std::copysign(r, v);
}

namespace {

GridPath map_path(const GridPath& x, const LampertiMap& map, double shift) {
  if (x.dim() != 1) throw std::invalid_argument("Lamperti solve: driver must be one-dimensional");
  if (x(0) != 0.0) throw std::invalid_argument("Lamperti solve: driver must start at 0");
  std::vector<double> y(x.size());
  // Exceptions must not escape the parallel region: mark failures as NaN and
  // report the first one afterwards.
#pragma omp parallel for schedule(static)
  for (std::size_t i = 0; i < x.size(); ++i) {
    try {
      y[i] = map.phi_inverse(x(i) + shift);
    } catch (const DivergenceError&) {
      y[i] = std::numeric_limits<double>::quiet_NaN();
    }
  }
  for (std::size_t i = 0; i < y.size(); ++i)
    if (!std::isfinite(y[i]))
      throw DivergenceError("Lamperti solve: φ^{-1}(x_t + φ(a)) leaves the double range at t=" + format_double(x.time(i)));
  return GridPath(x.horizon(), x.size(), 1, std::move(y));
}

}  // namespace

GridPath solve_lamperti(const GridPath& x, const Coefficient& coeff, double a) {
  const LampertiMap map(coeff);
  return map_path(x, map, map.phi(a));
}

GridPath solve_regularized(const GridPath& x, const Coefficient& coeff, unsigned level) {
  return map_path(x, LampertiMap(coeff, level), 0.0);
}

Certificate certify(const GridPath& y, double gamma, double kappa, double eta) {
  Certificate c;
  c.eta = eta;
  c.admissible_eta_window = FracConfig::eta_window(gamma, kappa);
  c.eta_in_window = eta > c.admissible_eta_window.first && eta < c.admissible_eta_window.second;
  c.integral_value = eta > 0.0 ? inv_integrability(y, eta) : std::numeric_limits<double>::quiet_NaN();
  c.pass = c.eta_in_window && std::isfinite(c.integral_value);
  return c;
}

Certificate certify(const GridPath& y, const FracConfig& config) {
  return certify(y, config.gamma(), config.kappa(), config.eta());
}

CertifiedSolution solve_certified(const GridPath& x, const Coefficient& coeff, double a, const FracConfig& config) {
  GridPath y = solve_lamperti(x, coeff, a);
  Certificate c = certify(y, config);
  return {std::move(y), c};
}

double fixed_point_residual(const GridPath& y, const GridPath& x, const Coefficient& coeff, const FracConfig& config,
                            double a) {
  if (y.dim() != 1) throw std::invalid_argument("fixed_point_residual: y must be one-dimensional");
  const GridPath lambda = lambda_integral(y, x, coeff, config);
  double worst = 0.0;
  for (std::size_t i = 0; i < y.size(); ++i) worst = std::max(worst, std::abs(y(i) - a - lambda(i)));
  return worst;
}

}  // namespace yp
