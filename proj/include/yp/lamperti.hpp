#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "yp/coefficients.hpp"
#include "yp/frac_calc.hpp"
#include "yp/grid_path.hpp"

namespace yp {

/// φ(ξ) = ∫_0^ξ ds/σ(s) for a one-dimensional coefficient, extended as an odd
/// function (σ(ξ) = ρ(|ξ|)). With a level n, σ is replaced by σ_n.
/// Power coefficients use closed forms; other profiles a table of φ at
/// dyadic radii plus Gauss–Kronrod on the last piece. Immutable after
/// construction and safe to share between threads.
class LampertiMap {
 public:
  /// Throws DivergenceError if ∫_0^1 ds/ρ(s) is infinite.
  explicit LampertiMap(Coefficient coeff, std::optional<unsigned> level = std::nullopt);

  double phi(double xi) const;
  /// Inverse, to |φ(result) − v| ≤ 1e-12·(1+|v|) for non-closed-form maps.
  double phi_inverse(double v) const;

  bool closed_form() const { return coeff_.kind() == Coefficient::Kind::Power; }
  const Coefficient& coefficient() const { return coeff_; }
  std::optional<unsigned> level() const { return level_; }

 private:
  double phi_plain(double r) const;  // unregularized, r ≥ 0
  double phi_plain_inverse(double v) const;  // v ≥ 0

  Coefficient coeff_;
  std::optional<unsigned> level_;
  double theta_ = 0.0;       // 2^{-n}
  double rho_theta_ = 0.0;   // ρ(θ)
  double phi_theta_ = 0.0;   // φ(θ)
  int min_exp_ = 0;          // table radii 2^min_exp .. 2^max_exp
  int max_exp_ = 0;
  std::vector<double> table_;  // φ(2^e)
};

/// y_t = φ^{-1}(x_t + φ(a)); x must start at exactly 0.
GridPath solve_lamperti(const GridPath& x, const Coefficient& coeff, double a);
/// y^n_t = φ_n^{-1}(x_t).
GridPath solve_regularized(const GridPath& x, const Coefficient& coeff, unsigned level);

struct Certificate {
  double eta = 0.0;
  double integral_value = 0.0;  // ∫|y|^{-η}, may be +inf
  std::pair<double, double> admissible_eta_window;
  bool eta_in_window = false;
  bool pass = false;
};

Certificate certify(const GridPath& y, const FracConfig& config);
/// Same check without requiring η to be admissible up front (out-of-window η fails).
Certificate certify(const GridPath& y, double gamma, double kappa, double eta);

struct CertifiedSolution {
  GridPath y;
  Certificate certificate;
};

/// solve_lamperti plus the certificate on the produced path. The candidate is
/// returned even when the certificate fails.
CertifiedSolution solve_certified(const GridPath& x, const Coefficient& coeff, double a, const FracConfig& config);

/// max_t |y_t − a − Λ(y)_t| for one-dimensional y; exactly 0 for y ≡ a = 0.
double fixed_point_residual(const GridPath& y, const GridPath& x, const Coefficient& coeff, const FracConfig& config,
                            double a);

}  // namespace yp
