#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "yp/coefficients.hpp"
#include "yp/grid_path.hpp"

namespace yp {

struct SolverOptions {
  /// Euler substeps per driver grid step (driver linearly interpolated).
  std::size_t substeps = 1;
  /// Absorb when |y| drops below this; default 2^{-40}·|a|.
  std::optional<double> absorb_threshold;
  /// Evaluate σ_n with n slaved to |y| (threshold ≤ |y|/4, so the clamp is
  /// never active at an evaluation point). Off: evaluate σ directly.
  bool regularize = true;
};

enum class SolveCase { A, B };

/// One rung: |y| stays in I_q on [lambda, tau), then in J_{q_hat} on
/// [tau, lambda_next). I_{-1} = [1, ∞), I_q = [2^{-q-1}, 2^{-q});
/// J_q = [3·2^{-q-3}, 3·2^{-q-2}), J_{-1} = [3/4, ∞).
struct LadderEvent {
  std::size_t k = 0;
  double lambda = 0.0;
  double tau = 0.0;
  int q = 0;
  int q_hat = 0;
  double lambda_next = 0.0;
  std::size_t lambda_index = 0;
  std::size_t tau_index = 0;
  std::size_t lambda_next_index = 0;
  bool complete = false;  // false when the path (or absorption) ends the rung early
};

struct SolverOutput {
  GridPath y{1.0, 2, 1, {0.0, 0.0}};
  SolveCase solve_case = SolveCase::A;
  std::optional<double> tau;               // grid time from which y ≡ 0
  std::optional<std::size_t> tau_index;
  std::optional<double> tau_substep;       // interpolated crossing time inside the absorbing substep
  double min_norm = 0.0;                   // min |y| before absorption
  double absorb_threshold = 0.0;
  std::size_t substeps = 1;
  unsigned max_level = 0;                  // largest regularization level used
  std::vector<LadderEvent> events;
  bool ladder_truncated = false;
};

/// Left-point Young–Euler: y ← y + Σ_j σ^j(y)·δx^j. x is d-dimensional, one
/// coefficient per driver component, all acting on ℝ^m with m = a.size().
/// Throws std::invalid_argument for a = 0, DivergenceError on a non-finite state.
SolverOutput solve_multidim(const GridPath& x, const std::vector<Coefficient>& coeffs, const std::vector<double>& a,
                            const SolverOptions& options = {});

/// I-band level of a radius: −1 for r ≥ 1, else q with r ∈ [2^{-q-1}, 2^{-q}).
int band_level(double r);
bool in_i_band(double r, int q);
bool in_j_band(double r, int q);

enum class JumpPolicy { Strict, Truncate };

struct LadderExtraction {
  std::vector<LadderEvent> events;
  bool truncated = false;
  std::string reason;
};

/// Replays the rung construction on |y| up to (excluding) end_index.
/// A move across more than one dyadic level in one grid step is a
/// ResolutionError under Strict, and stops the extraction under Truncate.
LadderExtraction extract_ladder(const GridPath& y, std::optional<std::size_t> end_index = std::nullopt,
                                JumpPolicy policy = JumpPolicy::Strict);

struct BandCheck {
  bool ok = true;
  std::size_t points_checked = 0;
  std::string first_violation;
  /// Fraction of points in [λ_k, λ_{k+1}) with |y| ≤ (3/4)·2^{-q_k}.
  double upper_fraction = 1.0;
};

/// Band membership per phase plus |q_{k+1} − q_k| ≤ 1 and λ_k < τ_k < λ_{k+1}.
BandCheck check_band_invariants(const GridPath& y, const std::vector<LadderEvent>& events);

struct DyadicDecomposition {
  std::vector<double> main;               // σ(y_s)·δx_{st}
  std::vector<std::vector<double>> tail;  // K^l, l = 0..L−1 (partition into 2^{l+1} pieces)
  std::vector<double> remainder;          // δy_{st} − main
  double truncation_gap = 0.0;            // |δy − main − Σ K^l|
};

/// x one-dimensional, coefficient acting on the dimension of y; s_index <
/// t_index with (t_index − s_index) divisible by 2^L.
DyadicDecomposition dyadic_decomposition(const GridPath& y, const GridPath& x, const Coefficient& coeff,
                                         std::size_t s_index, std::size_t t_index, unsigned levels);

struct GainDiagnostics {
  double gamma = 0.0;
  double kappa = 0.0;
  double alpha = 0.0;  // (1−κ)/γ
  double eps1 = 0.0;
  double eps2 = 0.0;
  double c0 = 1.0;
  double kappa_eps1 = 0.0;   // κ + ε₁α
  double kappa_minus = 0.0;  // κ − (1−γ)ε₂
  double mu = 0.0;           // γ(1 + κ⁻/(1−κ))
  bool eps2_admissible = false;

  std::vector<int> rung_q;
  std::vector<double> rung_c;    // local Hölder constants
  std::vector<double> rung_gap;  // λ_{k+1} − λ_k
  std::size_t rungs_used = 0;
  std::size_t rungs_excluded = 0;

  double gain_slope = 0.0;  // log₂ c_k against q_k
  double gain_residual = 0.0;
  double gap_slope = 0.0;   // log₂ gap against q_k, all rungs
  double gap_residual = 0.0;
  double gap_slope_low = 0.0;   // per-level minimum gaps
  double gap_slope_high = 0.0;  // per-level maximum gaps
  double min_normalized_gap = 0.0;  // min_k gap·2^{α q_k}
  bool conclusive = false;
};

/// Per-rung constants over lags ≤ c0·2^{-α q_k}; rungs with fewer than 8 grid
/// points are excluded. Fewer than 4 usable rungs (or fewer than two distinct
/// levels) leaves the fits at zero and conclusive = false.
GainDiagnostics gain_diagnostics(const SolverOutput& output, double gamma, double kappa, double eps1, double eps2,
                                 double c0 = 1.0);

/// Pooled fits over several outputs' rung data (already computed diagnostics).
GainDiagnostics pool_diagnostics(const std::vector<GainDiagnostics>& parts);

/// ‖y‖_γ over the whole horizon, across τ.
double global_holder_check(const SolverOutput& output, double gamma);

}  // namespace yp
