#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>
#include <cmath>
#include <functional>

#include "cell_quadrature.hpp"

namespace yp::kernels::detail {

namespace {

double integrate01(const std::function<double(double)>& f) {
  static thread_local boost::math::quadrature::tanh_sinh<double> ts;
  return ts.integrate(f, 0.0, 1.0, 1e-14);
}

}  // namespace

CellRule make_cell_rule(double alpha) {
  CellRule r;
  r.alpha = alpha;
  using GL = boost::math::quadrature::gauss<double, kNodes>;
  const auto& x = GL::abscissa();
  const auto& wt = GL::weights();
  // Boost stores the non-negative half; mirror it onto [0, 1] in increasing order.
  const std::size_t half = kNodes / 2;
  for (std::size_t i = 0; i < half; ++i) {
    r.u[half - 1 - i] = 0.5 * (1.0 - x[i]);
    r.w[half - 1 - i] = 0.5 * wt[i];
    r.u[half + i] = 0.5 * (1.0 + x[i]);
    r.w[half + i] = 0.5 * wt[i];
  }

  const std::array<std::function<double(double)>, kNearF> psi = {
      [alpha](double u) { return std::pow(u, 1.0 - alpha); },
      [alpha](double u) { return std::pow(1.0 + u, 1.0 - alpha); },
      [alpha](double u) { return std::pow(u, -alpha); },
      [alpha](double u) { return std::pow(1.0 + u, -alpha); },
  };
  const std::array<std::function<double(double)>, kNearG> chi = {
      [alpha](double u) { return std::pow(1.0 - u, alpha); },
      [alpha](double u) { return std::pow(2.0 - u, alpha); },
  };
  auto lagrange = [&r](std::size_t i, double u) {
    double v = 1.0;
    for (std::size_t j = 0; j < kNodes; ++j)
      if (j != i) v *= (u - r.u[j]) / (r.u[i] - r.u[j]);
    return v;
  };

  for (std::size_t p = 0; p < kNearF; ++p) {
    for (std::size_t c = 0; c < kNearG; ++c)
      r.near[p][c] = integrate01([&](double u) { return psi[p](u) * chi[c](u); });
    for (std::size_t i = 0; i < kNodes; ++i)
      r.f_weights[p][i] = integrate01([&](double u) { return psi[p](u) * lagrange(i, u); });
  }
  for (std::size_t c = 0; c < kNearG; ++c)
    for (std::size_t i = 0; i < kNodes; ++i)
      r.g_weights[c][i] = integrate01([&](double u) { return chi[c](u) * lagrange(i, u); });
  return r;
}

}  // namespace yp::kernels::detail
