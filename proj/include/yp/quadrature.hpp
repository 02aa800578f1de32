#pragma once

#include <functional>

namespace yp {

/// Adaptive Gauss–Kronrod on a smooth integrand.
double integrate_smooth(const std::function<double(double)>& f, double a, double b, double rel_tol = 1e-13);

struct InverseProfileIntegral {
  double value = 0.0;
  bool finite = false;
};

/// ∫_lo^hi ds/ρ(s) for a profile with ρ(s) ~ s^κ near 0, after the
/// substitution u = s^{1−κ}. With lo = 0 the tail below 1e-15 is checked by
/// comparing successive decades (Richardson-style); growth that does not
/// decay marks the integral as divergent.
InverseProfileIntegral inverse_profile_integral(const std::function<double(double)>& rho, double kappa, double lo,
                                                double hi);

}  // namespace yp
