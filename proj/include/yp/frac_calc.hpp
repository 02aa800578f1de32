#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "yp/coefficients.hpp"
#include "yp/grid_path.hpp"

namespace yp {

/// Exponent bundle (γ, κ, η, α). Construction enforces
///   (1−γ(1+κ))/γ < η < 1−κ  and  1−γ < α < γ(κ+η),  all four in (0,1).
class FracConfig {
 public:
  /// α defaults to the midpoint of its admissible interval.
  static FracConfig make(double gamma, double kappa, double eta, std::optional<double> alpha = std::nullopt);

  double gamma() const { return gamma_; }
  double kappa() const { return kappa_; }
  double eta() const { return eta_; }
  double alpha() const { return alpha_; }
  /// Exponent for the stronger integrability condition, η/(γ(κ+η)).
  double q() const { return eta_ / (gamma_ * (kappa_ + eta_)); }

  static std::pair<double, double> eta_window(double gamma, double kappa);
  static std::pair<double, double> alpha_window(double gamma, double kappa, double eta);

 private:
  FracConfig(double g, double k, double e, double a) : gamma_(g), kappa_(k), eta_(e), alpha_(a) {}
  double gamma_, kappa_, eta_, alpha_;
};

/// Samples of f on a uniform grid over [a, b].
struct FracFunction {
  double a = 0.0;
  double b = 1.0;
  std::vector<double> values;

  std::size_t intervals() const { return values.size() - 1; }
  double step() const { return (b - a) / double(values.size() - 1); }
  double time(std::size_t i) const { return a + (b - a) * double(i) / double(values.size() - 1); }
};

/// Component k of `path` on the grid-aligned interval [a, b].
FracFunction restrict_to(const GridPath& path, double a, double b, std::size_t component = 0);

enum class Side { Left, Right };

FracFunction frac_integral(const FracFunction& f, double alpha, Side side);
/// D^α_{a+}f by the Marchaud form. The value at t = a is the limit when finite
/// (f(a) = 0) and ±inf otherwise; any other non-finite value is an error.
FracFunction frac_derivative_left(const FracFunction& f, double alpha);
/// D^{1−α}_{b−}(g − g(b)).
FracFunction frac_derivative_right_compensated(const FracFunction& g, double alpha);

/// ∫_a^b f dg via the fractional representation. Throws DivergenceError when
/// the absolute integrand mass grows by more than 1.5× twice in a row across
/// the nested grids N/4, N/2, N.
double young_integral_frac(const FracFunction& f, const FracFunction& g, double alpha);
double young_integral_frac(const FracFunction& f, const FracFunction& g, const FracConfig& config);

/// t ↦ ∫_0^t σ(y_s) dx_s on the grid (one column per component of σ).
/// Requires y to pass the integrability certificate for config.eta(), unless
/// σ(y) vanishes identically on the grid, in which case the result is exactly 0.
GridPath lambda_integral(const GridPath& y, const GridPath& x, const Coefficient& coeff, const FracConfig& config);

struct LambdaBound {
  double value = 0.0;  // may be +inf
  double x_holder = 0.0;
  double sigma_sup = 0.0;
  double seminorm = 0.0;
  double y_holder = 0.0;
  double inv_integral = 0.0;  // ∫|y|^{−q}
};

/// ‖x‖_γ(‖σ(y)‖_∞ + N‖y‖_γ^{κ+η}(∫|y|^{−q})^{γ(κ+η)}).
LambdaBound lambda_bound(const GridPath& y, const GridPath& x, const Coefficient& coeff, const FracConfig& config);

/// ∫_0^T |y_s|^{−p} ds. Cells where y changes sign (or vanishes at a node) are
/// integrated with a local power model c|s−s₀|^β fitted on the neighbouring
/// cells; returns +inf when βp ≥ 1 there or when y vanishes on a whole cell.
double inv_integrability(const GridPath& y, double p);

}  // namespace yp
