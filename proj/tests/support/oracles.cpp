#include "oracles.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>

namespace oracle {

double fbm_covariance(double hurst, double s, double t) {
  const double h2 = 2.0 * hurst;
  return 0.5 * (std::pow(std::abs(s), h2) + std::pow(std::abs(t), h2) - std::pow(std::abs(t - s), h2));
}

double rl_integral_monomial(double p, double alpha, double t) {
  return std::tgamma(p + 1.0) / std::tgamma(p + 1.0 + alpha) * std::pow(t, p + alpha);
}

double rl_derivative_monomial(double p, double alpha, double t) {
  return std::tgamma(p + 1.0) / std::tgamma(p + 1.0 - alpha) * std::pow(t, p - alpha);
}

double smooth_young(const std::function<double(double)>& f, const std::function<double(double)>& dg, double a,
                    double b) {
  auto integrand = [&](double t) { return f(t) * dg(t); };
  return boost::math::quadrature::gauss_kronrod<double, 31>::integrate(integrand, a, b, 15, 1e-14);
}

double brute_holder(const yp::GridPath& x, double gamma, std::size_t max_lag) {
  const std::size_t n = x.size();
  const std::size_t L = max_lag == 0 ? n - 1 : max_lag;
  double best = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n && j - i <= L; ++j) {
      double d2 = 0.0;
      for (std::size_t k = 0; k < x.dim(); ++k) d2 += (x(j, k) - x(i, k)) * (x(j, k) - x(i, k));
      best = std::max(best, std::sqrt(d2) / std::pow(x.time(j) - x.time(i), gamma));
    }
  return best;
}

double left_riemann(const std::vector<double>& f, const std::vector<double>& x, std::size_t stride) {
  long double s = 0.0L;
  for (std::size_t i = 0; i + stride < f.size(); i += stride) s += (long double)f[i] * (x[i + stride] - x[i]);
  return double(s);
}

double power_lamperti(double x, double a, double scale, double kappa) {
  const double b = 1.0 - kappa;
  auto phi = [&](double v) { return std::copysign(std::pow(std::abs(v), b), v) / (scale * b); };
  const double u = x + phi(a);
  return std::copysign(std::pow(std::abs(u) * scale * b, 1.0 / b), u);
}

Estimate mean_estimate(const std::vector<double>& v) {
  double m = 0.0;
  for (double x : v) m += x;
  m /= double(v.size());
  double s2 = 0.0;
  for (double x : v) s2 += (x - m) * (x - m);
  s2 /= double(v.size() - 1);
  return {m, std::sqrt(s2 / double(v.size()))};
}

double observed_order(const std::vector<double>& errors) {
  // Least-squares slope of log2(error) against the halving index.
  const std::size_t n = errors.size();
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const double x = double(i), y = std::log2(errors[i]);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  return -(double(n) * sxy - sx * sy) / (double(n) * sxx - sx * sx);
}

}  // namespace oracle
