#include <cmath>
#include <limits>
#include <stdexcept>

#include "yp/frac_kernels.hpp"

namespace yp::kernels::serial {

namespace {

void check(std::span<const double> f, double h, double alpha) {
  if (f.size() < 2) throw std::invalid_argument("frac kernel: need at least 2 samples");
  if (!(h > 0.0)) throw std::invalid_argument("frac kernel: step must be positive");
  if (!(alpha > 0.0 && alpha < 1.0)) throw std::invalid_argument("frac kernel: order must lie in (0,1)");
}

double slope(std::span<const double> f, std::size_t j, double h) { return (f[j + 1] - f[j]) / h; }

}  // namespace

// Integrals: expansion of the piecewise-linear f into a constant plus ramps,
// each of which has a closed-form fractional integral.
std::vector<double> rl_integral_left(std::span<const double> f, double h, double alpha) {
  check(f, h, alpha);
  const std::size_t N = f.size() - 1;
  std::vector<double> out(N + 1, 0.0);
  for (std::size_t k = 1; k <= N; ++k) {
    const double t = double(k) * h;
    double v = f[0] * std::pow(t, alpha) / std::tgamma(1.0 + alpha);
    for (std::size_t j = 0; j < k; ++j) {
      const double ds = slope(f, j, h) - (j > 0 ? slope(f, j - 1, h) : 0.0);
      v += ds * std::pow(double(k - j) * h, 1.0 + alpha) / std::tgamma(2.0 + alpha);
    }
    out[k] = v;
  }
  return out;
}

std::vector<double> rl_integral_right(std::span<const double> f, double h, double alpha) {
  check(f, h, alpha);
  const std::size_t N = f.size() - 1;
  std::vector<double> out(N + 1, 0.0);
  for (std::size_t k = 0; k < N; ++k) {
    double v = f[N] * std::pow(double(N - k) * h, alpha) / std::tgamma(1.0 + alpha);
    for (std::size_t j = k + 1; j <= N; ++j) {
      const double c = j < N ? slope(f, j, h) - slope(f, j - 1, h) : -slope(f, N - 1, h);
      v += c * std::pow(double(j - k) * h, 1.0 + alpha) / std::tgamma(2.0 + alpha);
    }
    out[k] = v;
  }
  return out;
}

// Derivatives: the Marchaud form, with the singular integral evaluated cell by
// cell in closed form against the linear pieces.
std::vector<double> derivative_left(std::span<const double> f, double h, double alpha) {
  check(f, h, alpha);
  const std::size_t N = f.size() - 1;
  std::vector<double> out(N + 1, 0.0);
  out[0] = f[0] == 0.0 ? 0.0 : std::copysign(std::numeric_limits<double>::infinity(), f[0]);
  for (std::size_t k = 1; k <= N; ++k) {
    double integral = 0.0;
    for (std::size_t j = 0; j < k; ++j) {
      const std::size_t m = k - j;
      const double s = slope(f, j, h);
      const double lo = double(m - 1) * h, hi = double(m) * h;
      // f_k − f(r) = A + s·v with v = t_k − r ∈ [lo, hi].
      double cell = alpha * s * (std::pow(hi, 1.0 - alpha) - std::pow(lo, 1.0 - alpha)) / (1.0 - alpha);
      if (m > 1) {
        const double A = f[k] - f[j] - s * hi;
        cell += A * (std::pow(lo, -alpha) - std::pow(hi, -alpha));
      }
      integral += cell;
    }
    out[k] = (f[k] * std::pow(double(k) * h, -alpha) + integral) / std::tgamma(1.0 - alpha);
  }
  return out;
}

std::vector<double> derivative_right_compensated(std::span<const double> g, double h, double alpha) {
  check(g, h, alpha);
  const std::size_t N = g.size() - 1;
  const double beta = 1.0 - alpha;
  std::vector<double> out(N + 1, 0.0);
  for (std::size_t k = 0; k < N; ++k) {
    const double gk = g[k] - g[N];
    double integral = 0.0;
    for (std::size_t j = k; j < N; ++j) {
      const std::size_t m = j - k + 1;
      const double s = slope(g, j, h);
      const double lo = double(m - 1) * h, hi = double(m) * h;
      // ĝ_k − ĝ(u) = A − s·v with v = u − t_k ∈ [lo, hi].
      double cell = -beta * s * (std::pow(hi, 1.0 - beta) - std::pow(lo, 1.0 - beta)) / (1.0 - beta);
      if (m > 1) {
        const double A = g[k] - g[j] + s * lo;
        cell += A * (std::pow(lo, -beta) - std::pow(hi, -beta));
      }
      integral += cell;
    }
    out[k] = (gk * std::pow(double(N - k) * h, -beta) + integral) / std::tgamma(alpha);
  }
  return out;
}

// Pairwise closed form: D^α f is a sum of (t − t_j)_+^{1−α} ramps plus the
// f_0 t^{−α} term, D^{1−α}(g − g_N) a sum of (t_l − t)_+^α ramps, and each
// product of one from each side integrates to a beta function.
YoungValue young_frac(std::span<const double> f, std::span<const double> g, double h, double alpha) {
  check(f, h, alpha);
  if (f.size() != g.size()) throw std::invalid_argument("young_frac: f and g sizes differ");
  const std::size_t N = f.size() - 1;
  const double ga = std::tgamma(1.0 + alpha), g2 = std::tgamma(2.0 - alpha);
  const double e = f[0] / std::tgamma(1.0 - alpha);
  const double b_ramp = std::beta(2.0 - alpha, 1.0 + alpha), b_first = std::beta(1.0 - alpha, 1.0 + alpha);
  double total = 0.0;
  for (std::size_t l = 1; l <= N; ++l) {
    const double Bl = (l < N ? slope(g, l, h) - slope(g, l - 1, h) : -slope(g, N - 1, h)) / ga;
    double inner = e * double(l) * h * b_first;
    for (std::size_t j = 0; j < l; ++j) {
      const double Aj = (slope(f, j, h) - (j > 0 ? slope(f, j - 1, h) : 0.0)) / g2;
      const double d = double(l - j) * h;
      inner += Aj * d * d * b_ramp;
    }
    total += Bl * inner;
  }
  return {-total, std::numeric_limits<double>::quiet_NaN()};
}

std::vector<double> young_frac_path(std::span<const double> f, std::span<const double> g, double h, double alpha) {
  check(f, h, alpha);
  if (f.size() != g.size()) throw std::invalid_argument("young_frac_path: f and g sizes differ");
  std::vector<double> out(f.size(), 0.0);
  for (std::size_t K = 1; K < f.size(); ++K) out[K] = young_frac(f.first(K + 1), g.first(K + 1), h, alpha).value;
  return out;
}

}  // namespace yp::kernels::serial
