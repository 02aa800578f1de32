#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "yp/coefficients.hpp"
#include "yp/frac_calc.hpp"
#include "yp/grid_path.hpp"

namespace yp {

/// Nodes a = t_0 < ... < t_{n−1} = b. A τ-aware partition additionally has a
/// node t_{j*} < τ ≤ t_{j*+1} with window ≤ τ − t_{j*} ≤ 2·window.
struct Partition {
  enum class Kind { Uniform, TauAware };

  Kind kind = Kind::Uniform;
  double a = 0.0;
  double b = 1.0;
  std::vector<double> nodes;
  // τ-aware only
  double tau = 0.0;
  double epsilon = 0.0;
  double window = 0.0;
  std::size_t j_star = 0;

  /// n nodes, n ≥ 2.
  static Partition uniform(double a, double b, std::size_t n);

  std::size_t size() const { return nodes.size(); }
  double mesh() const;
  /// Throws std::logic_error if an invariant is broken.
  void validate() const;
};

/// Builds a partition whose node before τ sits 1.5·window ahead of τ, with
/// window = (ε/(3·2^γ·‖y‖_γ))^{1/γ}, so the term of the sum straddling τ is at
/// most ε/3. Base nodes are uniform with base_n nodes on [a, b].
Partition tau_aware_partition(double a, double b, double tau, double epsilon, double gamma, double holder_norm_y,
                              std::size_t base_n);

struct RiemannSum {
  double value = 0.0;
  bool interpolated = false;  // some node fell between grid points
};

/// Left-point sum Σ f(t_i)(x_{t_{i+1}} − x_{t_i}); f and x one-dimensional on
/// a shared grid, off-grid nodes by linear interpolation.
RiemannSum riemann_sum(const GridPath& f, const GridPath& x, const Partition& pi);

/// σ(y) sampled on the grid of y.
GridPath sigma_path(const GridPath& y, const Coefficient& coeff);

/// The averaged approximant: on each cell [t_{i−1}, t_i) the mean of σ(y) over
/// the cell (trapezoid on the grid of y, i.e. exact for its linear interpolant);
/// the last cell is closed at b.
struct AveragedIntegrand {
  std::vector<std::vector<double>> cell_means;  // [cell][component]
  GridPath z{1.0, 2, 1, {0.0, 0.0}};            // on the grid of y
};

/// pi must be uniform with nodes on the grid of y and at least 8 grid steps per cell.
AveragedIntegrand averaged_integrand(const GridPath& y, const Coefficient& coeff, const Partition& pi);

/// Σ_i mean_i(σ(y))·δx over cell i, one value per component of σ.
std::vector<double> averaged_riemann_integral(const GridPath& y, const GridPath& x, const Coefficient& coeff,
                                              const Partition& pi);

struct ConvergenceRow {
  std::size_t n = 0;
  double mesh = 0.0;
  double value = 0.0;
  double abs_error = 0.0;
  double sup_integrand_err = 0.0;
  double lemma27_bound = 0.0;
};

struct ConvergenceTable {
  std::vector<ConvergenceRow> rows;
  double reference = 0.0;
  std::string reference_kind;
  double y_holder = 0.0;  // ‖y‖_γ over lags up to the coarsest cell
  double seminorm = 0.0;
};

/// One row per partition size n (nodes, increasing) for the averaged integral of
/// the first component over [0, T]. The sup-integrand bound is
/// N·‖y‖_γ^κ·|Π|^{κγ}.
ConvergenceTable convergence_study(const GridPath& y, const GridPath& x, const Coefficient& coeff, double gamma,
                                   const std::vector<std::size_t>& ns, double reference,
                                   std::string reference_kind);

}  // namespace yp
