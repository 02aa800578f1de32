#pragma once

// Product-integration rule for ∫_cell D^α f · D^{1−α}(g − g_b) on one grid
// cell, exact (to quadrature round-off) for piecewise-linear f and g.
//
// In the cell coordinate u ∈ [0, 1] (t = t_k + u·h), both derivatives are
// sums of shifted powers:
//   D^α f / h^{1−α}       = Σ_m A_{k−m} (m+u)^{1−α}  + (e/h)(k+u)^{−α}
//   D^{1−α} g^{b−} / h^α  = Σ_m B_{k+m} (m−u)^α
// The two nearest terms on each side (and the e-term on the first two cells)
// are singular or nearly so on the cell; they get precomputed weights. All
// remaining terms have their singularities at least two cells away and are
// sampled at Gauss–Legendre nodes, where a degree-5 interpolant is accurate
// to about 1e-6 relative even for the nearest of them.

#include <array>
#include <cstddef>

namespace yp::kernels::detail {

inline constexpr std::size_t kNodes = 6;

// Near functions of D^α f: u^{1−α}, (1+u)^{1−α}, u^{−α}, (1+u)^{−α}.
enum NearF : std::size_t { kF0 = 0, kF1, kE0, kE1, kNearF };
// Near functions of D^{1−α} g: (1−u)^α, (2−u)^α.
enum NearG : std::size_t { kG1 = 0, kG2, kNearG };

struct CellRule {
  double alpha = 0.0;
  std::array<double, kNodes> u{};      // Gauss–Legendre nodes on [0, 1]
  std::array<double, kNodes> w{};      // and weights
  std::array<std::array<double, kNearG>, kNearF> near{};     // ∫ ψ·χ
  std::array<std::array<double, kNodes>, kNearF> f_weights{};  // ∫ ψ·L_i
  std::array<std::array<double, kNodes>, kNearG> g_weights{};  // ∫ χ·L_i
};

CellRule make_cell_rule(double alpha);

}  // namespace yp::kernels::detail
