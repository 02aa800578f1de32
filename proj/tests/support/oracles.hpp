#pragma once

// Independent reference computations for the tests: closed forms, brute-force
// scans and adaptive quadrature, none of which share code with the library.

#include <cstddef>
#include <functional>
#include <vector>

#include "yp/grid_path.hpp"

namespace oracle {

/// E[B_s B_t] for standard fBm.
double fbm_covariance(double hurst, double s, double t);

/// I^α_{0+} t^p and D^α_{0+} t^p.
double rl_integral_monomial(double p, double alpha, double t);
double rl_derivative_monomial(double p, double alpha, double t);

/// ∫_a^b f(t) g'(t) dt by adaptive Gauss–Kronrod.
double smooth_young(const std::function<double(double)>& f, const std::function<double(double)>& dg, double a,
                    double b);

/// O(n²) scan: max over |i−j| ≤ max_lag (0: all) of |x_i − x_j|/|t_i − t_j|^γ.
double brute_holder(const yp::GridPath& x, double gamma, std::size_t max_lag = 0);

/// Left-point Riemann sum of f against x on the grid, every `stride` points.
double left_riemann(const std::vector<double>& f, const std::vector<double>& x, std::size_t stride = 1);

/// Lamperti solution for σ(ξ) = C|ξ|^κ in one dimension.
double power_lamperti(double x, double a, double scale, double kappa);

struct Estimate {
  double mean = 0.0;
  double stderr_ = 0.0;
};
Estimate mean_estimate(const std::vector<double>& v);

/// Order of convergence from errors at successive halvings of the mesh.
double observed_order(const std::vector<double>& errors);

}  // namespace oracle
