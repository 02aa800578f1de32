#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <complex>
#include <memory>
#include <mutex>
#include <stdexcept>

#include "yp/error.hpp"
#include "yp/holder_paths.hpp"
#include "yp/rng.hpp"

namespace yp {

namespace {

// FFTW's planner is not re-entrant; execution on distinct arrays is.
std::mutex& fftw_planner_mutex() {
  static std::mutex m;
  return m;
}

struct FftwBuffer {
  explicit FftwBuffer(std::size_t n)
      : p(static_cast<fftw_complex*>(fftw_malloc(sizeof(fftw_complex) * n))) {
    if (!p) throw std::bad_alloc();
  }
  ~FftwBuffer() { fftw_free(p); }
  FftwBuffer(const FftwBuffer&) = delete;
  FftwBuffer& operator=(const FftwBuffer&) = delete;
  fftw_complex* p;
};

void forward_fft(std::size_t m, FftwBuffer& in, FftwBuffer& out) {
  fftw_plan plan;
  {
    std::lock_guard lock(fftw_planner_mutex());
    plan = fftw_plan_dft_1d(int(m), in.p, out.p, FFTW_FORWARD, FFTW_ESTIMATE);
  }
  if (!plan) throw std::runtime_error("fftw: planning failed");
  fftw_execute(plan);
  std::lock_guard lock(fftw_planner_mutex());
  fftw_destroy_plan(plan);
}

}  // namespace

double fgn_autocovariance(double hurst, std::size_t k) {
  const double two_h = 2.0 * hurst;
  const double kk = double(k);
  if (k == 0) return 1.0;
  return 0.5 * (std::pow(kk + 1.0, two_h) - 2.0 * std::pow(kk, two_h) + std::pow(kk - 1.0, two_h));
}

FbmGenerator::FbmGenerator(double hurst, std::size_t n_points, double horizon, FbmMethod method)
    : hurst_(hurst), n_(n_points), horizon_(horizon), method_(method) {
  if (!(hurst > 0.0 && hurst < 1.0)) throw std::invalid_argument("fbm: Hurst exponent must lie in (0,1)");
  if (n_points < 2) throw std::invalid_argument("fbm: need at least 2 grid points");
  if (!(horizon > 0.0)) throw std::invalid_argument("fbm: horizon must be positive");

  const std::size_t N = n_points - 1;
  if (method_ == FbmMethod::Auto)
    method_ = N <= kCholeskyMaxIncrements ? FbmMethod::Cholesky : FbmMethod::Circulant;

  acov_.resize(N + 1);
  for (std::size_t k = 0; k <= N; ++k) acov_[k] = fgn_autocovariance(hurst, k);

  if (method_ == FbmMethod::Cholesky) {
    // Durbin–Levinson: the reflection coefficients and innovation variances
    // are the Cholesky factor of the Toeplitz covariance in recursive form.
    dl_phi_diag_.assign(N, 0.0);
    dl_sd_.assign(N, 0.0);
    std::vector<double> phi(N, 0.0), prev(N, 0.0);
    double v = acov_[0];
    dl_sd_[0] = std::sqrt(v);
    for (std::size_t k = 1; k < N; ++k) {
      double acc = acov_[k];
      for (std::size_t j = 1; j < k; ++j) acc -= prev[j] * acov_[k - j];
      const double pkk = acc / v;
      phi[k] = pkk;
      for (std::size_t j = 1; j < k; ++j) phi[j] = prev[j] - pkk * prev[k - j];
      v *= (1.0 - pkk * pkk);
      if (!(v > 0.0) || !std::isfinite(v))
        throw DivergenceError("fbm: Toeplitz covariance factorization broke down at step " + std::to_string(k));
      dl_phi_diag_[k] = pkk;
      dl_sd_[k] = std::sqrt(v);
      std::copy(phi.begin(), phi.begin() + std::ptrdiff_t(k + 1), prev.begin());
    }
  } else {
    const std::size_t M = 2 * N;
    FftwBuffer in(M), out(M);
    for (std::size_t j = 0; j < M; ++j) {
      const std::size_t lag = j <= N ? j : M - j;
      in.p[j][0] = acov_[lag];
      in.p[j][1] = 0.0;
    }
    forward_fft(M, in, out);
    double lmax = 0.0;
    for (std::size_t j = 0; j < M; ++j) lmax = std::max(lmax, out.p[j][0]);
    sqrt_eigen_.resize(M);
    for (std::size_t j = 0; j < M; ++j) {
      double lam = out.p[j][0];
      if (lam < -1e-10 * lmax)
        throw DivergenceError("fbm: circulant embedding is not positive semi-definite");
      sqrt_eigen_[j] = std::sqrt(std::max(lam, 0.0) / double(M));
    }
  }
}

std::vector<double> FbmGenerator::sample_component(std::uint64_t stream_seed) const {
  const std::size_t N = n_ - 1;
  Rng rng(stream_seed);
  std::vector<double> inc(N);

  if (method_ == FbmMethod::Cholesky) {
    std::vector<double> phi(N, 0.0), prev(N, 0.0);
    inc[0] = dl_sd_[0] * rng.normal();
    for (std::size_t k = 1; k < N; ++k) {
      const double pkk = dl_phi_diag_[k];
      phi[k] = pkk;
      for (std::size_t j = 1; j < k; ++j) phi[j] = prev[j] - pkk * prev[k - j];
      double pred = 0.0;
      for (std::size_t j = 1; j <= k; ++j) pred += phi[j] * inc[k - j];
      inc[k] = pred + dl_sd_[k] * rng.normal();
      std::swap(phi, prev);
    }
  } else {
    const std::size_t M = 2 * N;
    FftwBuffer in(M), out(M);
    for (std::size_t j = 0; j < M; ++j) {
      const double a = rng.normal();
      const double b = rng.normal();
      in.p[j][0] = sqrt_eigen_[j] * a;
      in.p[j][1] = sqrt_eigen_[j] * b;
    }
    forward_fft(M, in, out);
    for (std::size_t k = 0; k < N; ++k) inc[k] = out.p[k][0];
  }

  const double scale = std::pow(horizon_ / double(N), hurst_);
  std::vector<double> path(n_);
  path[0] = 0.0;
  double acc = 0.0;
  for (std::size_t k = 0; k < N; ++k) {
    acc += scale * inc[k];
    path[k + 1] = acc;
  }
  return path;
}

GridPath FbmGenerator::sample(std::uint64_t seed, std::size_t dim) const {
  if (dim < 1) throw std::invalid_argument("fbm: dimension must be at least 1");
  Rng root(seed);
  std::vector<std::vector<double>> cols;
  cols.reserve(dim);
  for (std::size_t k = 0; k < dim; ++k) cols.push_back(sample_component(root.split(k).bits()));
  return GridPath::from_columns(horizon_, cols);
}

GridPath generate_fbm(const HurstSpec& spec, std::size_t n_points, double horizon, FbmMethod method) {
  return FbmGenerator(spec.hurst, n_points, horizon, method).sample(spec.seed, spec.dim);
}

}  // namespace yp
