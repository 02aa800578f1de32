#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "yp/grid_path.hpp"

namespace yp {

struct HurstSpec {
  double hurst = 0.75;
  std::size_t dim = 1;
  std::uint64_t seed = 0;
};

enum class FbmMethod { Auto, Cholesky, Circulant };

/// Auto picks Cholesky up to this many increments, circulant embedding above.
inline constexpr std::size_t kCholeskyMaxIncrements = std::size_t(1) << 12;

/// Samples fBm on a fixed grid. Construction does the per-(H, n, T) setup
/// (circulant eigenvalues or the Toeplitz factor check); sample() is const
/// and may be called concurrently.
class FbmGenerator {
 public:
  FbmGenerator(double hurst, std::size_t n_points, double horizon, FbmMethod method = FbmMethod::Auto);

  GridPath sample(std::uint64_t seed, std::size_t dim = 1) const;
  /// One component from an already-split stream; used by sample().
  std::vector<double> sample_component(std::uint64_t stream_seed) const;

  FbmMethod method() const { return method_; }
  double hurst() const { return hurst_; }
  std::size_t n_points() const { return n_; }

 private:
  double hurst_;
  std::size_t n_;
  double horizon_;
  FbmMethod method_;
  std::vector<double> acov_;          // unit-step fGn autocovariance r(k)
  std::vector<double> sqrt_eigen_;    // circulant: sqrt(λ_j / M)
  std::vector<double> dl_phi_diag_;   // Durbin–Levinson reflection coefficients
  std::vector<double> dl_sd_;         // innovation standard deviations
};

GridPath generate_fbm(const HurstSpec& spec, std::size_t n_points, double horizon,
                      FbmMethod method = FbmMethod::Auto);

/// fGn autocovariance at integer lag k for unit spacing.
double fgn_autocovariance(double hurst, std::size_t k);

struct HolderEstimate {
  double gamma = 0.0;
  double norm = 0.0;
  std::size_t max_lag = 0;
};

/// max over |i−j| ≤ max_lag of |x_i − x_j| / |t_i − t_j|^γ. max_lag = 0 means full.
HolderEstimate holder_norm(const GridPath& path, double gamma, std::size_t max_lag = 0);

namespace serial {
HolderEstimate holder_norm(const GridPath& path, double gamma, std::size_t max_lag = 0);
}

struct RoughnessEstimate {
  double gamma_hat = 0.0;
  double modulus = 0.0;
  std::vector<double> scales_checked;
  std::vector<double> modulus_per_scale;
};

/// Default direction net: {+1,−1} in one dimension, otherwise 16·d unit
/// vectors closed under negation.
std::vector<std::vector<double>> default_directions(std::size_t dim);

RoughnessEstimate roughness_modulus(const GridPath& path, double gamma_hat, std::span<const double> scales,
                                    const std::vector<std::vector<double>>& directions = {});

}  // namespace yp
