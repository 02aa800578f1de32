#pragma once

// Grid kernels behind frac_calc. All take samples f_0..f_N on a uniform grid
// of step h and treat the data as piecewise linear between nodes; every
// singular kernel is integrated exactly against the linear pieces.
//
// The default namespace holds the table-driven, OpenMP-parallel versions. The
// `serial` namespace keeps straightforward single-threaded implementations
// built from a different algebraic route (Marchaud cell integrals instead of
// ramp expansions, pairwise beta integrals instead of a cell product rule,
// per-prefix integrals instead of incremental updates); the
// tests compare the two.

#include <span>
#include <vector>

namespace yp::kernels {

/// I^α_{a+} f at the nodes.
std::vector<double> rl_integral_left(std::span<const double> f, double h, double alpha);
/// I^α_{b−} f at the nodes.
std::vector<double> rl_integral_right(std::span<const double> f, double h, double alpha);
/// D^α_{a+} f at the nodes. Node 0 holds ±inf when f_0 ≠ 0 (the kernel is
/// singular there), otherwise 0.
std::vector<double> derivative_left(std::span<const double> f, double h, double alpha);
/// D^{1−α}_{b−}(g − g_N) at the nodes; node N is 0.
std::vector<double> derivative_right_compensated(std::span<const double> g, double h, double alpha);

struct YoungValue {
  double value = 0.0;
  double abs_mass = 0.0;  // Σ over cells of |∫_cell D^α f · D^{1−α} g|
};

/// ∫_{t_0}^{t_N} f dg through the fractional representation.
YoungValue young_frac(std::span<const double> f, std::span<const double> g, double h, double alpha);
/// t_K ↦ ∫_{t_0}^{t_K} f dg for every K, in O(N²).
std::vector<double> young_frac_path(std::span<const double> f, std::span<const double> g, double h, double alpha);

namespace serial {
std::vector<double> rl_integral_left(std::span<const double> f, double h, double alpha);
std::vector<double> rl_integral_right(std::span<const double> f, double h, double alpha);
std::vector<double> derivative_left(std::span<const double> f, double h, double alpha);
std::vector<double> derivative_right_compensated(std::span<const double> g, double h, double alpha);
/// Value only; abs_mass is NaN (the pairwise form has no per-cell split).
YoungValue young_frac(std::span<const double> f, std::span<const double> g, double h, double alpha);
/// O(N³): one independent young_frac per prefix.
std::vector<double> young_frac_path(std::span<const double> f, std::span<const double> g, double h, double alpha);
}  // namespace serial

}  // namespace yp::kernels
