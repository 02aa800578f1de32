#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace yp {

/// Radial power-type field σ(ξ) = ρ(|ξ|)·e on ℝ^m. Scalar profiles use a fixed
/// unit direction e; vector profiles give ρ(r) ∈ ℝ^m directly.
class Coefficient {
 public:
  enum class Kind { Power, Radial };
  using ScalarProfile = std::function<double(double)>;
  using VectorProfile = std::function<void(double, std::span<double>)>;

  /// σ(ξ) = C|ξ|^κ·e.
  static Coefficient power(double scale, double kappa, std::size_t dim = 1);
  static Coefficient radial(std::string name, ScalarProfile rho, double kappa, std::size_t dim = 1);
  static Coefficient radial_vector(std::string name, VectorProfile rho, double kappa, std::size_t dim);

  /// Replace the output direction of a scalar-profile coefficient (normalized).
  Coefficient with_direction(std::vector<double> direction) const;

  Kind kind() const { return kind_; }
  double kappa() const { return kappa_; }
  double scale() const { return scale_; }
  std::size_t dim() const { return dim_; }
  const std::string& name() const { return name_; }
  std::span<const double> direction() const { return direction_; }
  bool scalar_profile() const { return static_cast<bool>(rho_); }

  /// ρ(r) for scalar profiles (for vector profiles: |ρ(r)|).
  double profile(double r) const;
  /// σ(ξ) with ξ, out ∈ ℝ^m.
  void eval(std::span<const double> xi, std::span<double> out) const;
  std::vector<double> eval(std::span<const double> xi) const;
  /// One-dimensional σ(ξ) = ρ(|ξ|)·e₀.
  double eval1(double xi) const;
  /// Field at radius r as a vector (used by the radial seminorm scan).
  void eval_radius(double r, std::span<double> out) const;

  /// Exact N_{κ,σ} where known (power kind).
  std::optional<double> exact_seminorm() const;

  /// Text form accepted by parse_coefficient.
  std::string describe() const;

 private:
  friend Coefficient parse_coefficient(const std::string& text);
  Coefficient() = default;
  void validate() const;

  Kind kind_ = Kind::Power;
  double scale_ = 1.0;
  double kappa_ = 0.5;
  std::size_t dim_ = 1;
  std::string name_;
  ScalarProfile rho_;
  VectorProfile vrho_;
  std::vector<double> direction_;
  std::string spec_text_;
};

/// σ_n: equals σ for |ξ| > 2^{−n}, and the constant ρ(2^{−n})·e below.
class RegularizedCoefficient {
 public:
  RegularizedCoefficient(Coefficient base, unsigned level);

  const Coefficient& base() const { return base_; }
  unsigned level() const { return level_; }
  double threshold() const { return threshold_; }

  void eval(std::span<const double> xi, std::span<double> out) const;
  std::vector<double> eval(std::span<const double> xi) const;
  double eval1(double xi) const;
  void eval_radius(double r, std::span<double> out) const;
  double profile(double r) const;

 private:
  Coefficient base_;
  unsigned level_;
  double threshold_;
};

RegularizedCoefficient regularize(const Coefficient& c, unsigned level);

/// Text specs: `power C=1.0 kappa=0.5 [dim=m]` or
/// `radial kappa=0.5 profile=<name> [C=..] [cap=..] [slope=..] [dim=m]`.
/// Built-in profiles: power, capped (min(C r^κ, cap)), power_plus_linear (C r^κ + slope·r).
Coefficient parse_coefficient(const std::string& text);
std::vector<std::string> builtin_profiles();

struct SeminormEstimate {
  double value = 0.0;
  std::size_t samples = 0;
  std::vector<double> arg_xi1;
  std::vector<double> arg_xi2;
  double sampled_value = 0.0;  // sup over random pairs only
  double scan_value = 0.0;     // sup over the dense radius scan
  bool exact = false;
};

/// Lower bound of N_{κ,σ} over |ξ| ≤ R from random pairs plus a dense radius
/// scan; exact C for the power kind.
SeminormEstimate seminorm_estimate(const Coefficient& c, std::size_t n_samples, double radius, std::uint64_t seed);
SeminormEstimate seminorm_estimate(const RegularizedCoefficient& c, std::size_t n_samples, double radius,
                                   std::uint64_t seed);

/// Sampled seminorm ratio over a caller-supplied pair list (radii r1[i], r2[i]).
double sampled_seminorm(const std::function<void(double, std::span<double>)>& field, double kappa,
                        std::size_t dim, std::span<const double> r1, std::span<const double> r2);

/// Seminorm used in analytic bounds: exact for power, otherwise the dense scan over [0, radius].
double seminorm_for_bounds(const Coefficient& c, double radius);

struct InterpolationBound {
  double lhs = 0.0;
  double rhs = 0.0;
};

/// |σ(ξ₂)−σ(ξ₁)| versus (κ/(κ+η))·N·(|ξ₂|^{−η}+|ξ₁|^{−η})·|ξ₂−ξ₁|^{κ+η}.
InterpolationBound lemma23_bound(const Coefficient& c, std::span<const double> xi1, std::span<const double> xi2,
                                 double eta);

enum class Regime { SuperYoung, ClassicalYoung };

struct HypothesisReport {
  Regime regime = Regime::SuperYoung;
  double regime_witness = 0.0;  // γ(κ+1)
  bool monotone = false;        // ρ increasing on the sampled grid
  double monotone_witness = 0.0;  // smallest increment seen
  bool continuous = false;
  double continuity_witness = 0.0;  // largest jump relative to local scale
  bool inverse_integrable = false;
  double inverse_integral = 0.0;  // ∫₀^1 ds/ρ(s)
  bool lower_bound = false;
  double lower_bound_constant = 0.0;  // min |σ(ξ)|/|ξ|^κ on samples
  std::string gradient_holder = "assumed";
};

HypothesisReport check_hypotheses(const Coefficient& c, double gamma);
std::string to_string(Regime r);

}  // namespace yp
