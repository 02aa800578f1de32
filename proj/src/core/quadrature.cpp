#include "yp/quadrature.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace yp {

double integrate_smooth(const std::function<double(double)>& f, double a, double b, double rel_tol) {
  if (a == b) return 0.0;
  // Boost compares the error of the [−1, 1]-mapped rule with a tolerance scaled
  // by the half-width, so short intervals never converge; work on [0, 1].
  const double w = b - a;
  auto unit = [&](double u) { return f(a + w * u) * w; };
  double err = 0.0;
  return boost::math::quadrature::gauss_kronrod<double, 15>::integrate(unit, 0.0, 1.0, 20, rel_tol, &err);
}

InverseProfileIntegral inverse_profile_integral(const std::function<double(double)>& rho, double kappa, double lo,
                                                double hi) {
  if (!(lo >= 0.0 && hi >= lo)) throw std::invalid_argument("inverse_profile_integral: need 0 <= lo <= hi");
  if (lo == hi) return {0.0, true};
  const double p = 1.0 / (1.0 - kappa);
  auto g = [&](double u) {
    const double s = std::pow(u, p);
    const double r = rho(s);
    if (!(r > 0.0)) return std::numeric_limits<double>::infinity();
    return p * std::pow(s, kappa) / r;
  };
  auto over = [&](double a, double b) {
    return integrate_smooth(g, std::pow(a, 1.0 - kappa), std::pow(b, 1.0 - kappa));
  };

  if (lo > 0.0) {
    const double v = over(lo, hi);
    return {v, std::isfinite(v)};
  }

  // Decade check below the floor: for an integrable singularity the
  // contribution of [1e-15, 1e-10] is much smaller than that of [1e-10, 1e-5].
  const double cut = std::min(hi, 1e-5);
  const double d1 = over(1e-10 * cut / 1e-5, cut);
  const double d2 = over(1e-15 * cut / 1e-5, 1e-10 * cut / 1e-5);
  if (!std::isfinite(d1) || !std::isfinite(d2) || (d1 > 0.0 && d2 > 0.9 * d1))
    return {std::numeric_limits<double>::infinity(), false};
  const double v = over(0.0, hi);
  return {v, std::isfinite(v)};
}

}  // namespace yp
