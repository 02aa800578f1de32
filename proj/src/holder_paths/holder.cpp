#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "yp/error.hpp"
#include "yp/holder_paths.hpp"

namespace yp {

namespace {

std::size_t checked_lag(const GridPath& path, double gamma, std::size_t max_lag) {
  if (!(gamma > 0.0 && gamma < 1.0)) throw std::invalid_argument("holder_norm: gamma must lie in (0,1)");
  if (max_lag == 0) return path.size() - 1;
  if (max_lag >= path.size()) throw std::invalid_argument("holder_norm: max_lag must be < n_points");
  return max_lag;
}

inline double increment_norm(const GridPath& p, std::size_t i, std::size_t j) {
  const std::size_t d = p.dim();
  if (d == 1) return std::abs(p(j) - p(i));
  double s = 0.0;
  for (std::size_t k = 0; k < d; ++k) {
    const double v = p(j, k) - p(i, k);
    s += v * v;
  }
  return std::sqrt(s);
}

double radical_inverse(std::size_t i, unsigned base) {
  double f = 1.0, r = 0.0;
  while (i > 0) {
    f /= base;
    r += f * double(i % base);
    i /= base;
  }
  return r;
}

}  // namespace

HolderEstimate holder_norm(const GridPath& path, double gamma, std::size_t max_lag) {
  const std::size_t L = checked_lag(path, gamma, max_lag);
  const std::size_t n = path.size();
  const double h = path.step();
  std::vector<double> inv_pow(L + 1, 0.0);
  for (std::size_t l = 1; l <= L; ++l) inv_pow[l] = 1.0 / std::pow(double(l) * h, gamma);

  double best = 0.0;
  const long long nn = static_cast<long long>(n);
#pragma omp parallel for reduction(max : best) schedule(dynamic, 256)
  for (long long ii = 0; ii < nn; ++ii) {
    const std::size_t i = std::size_t(ii);
    const std::size_t lmax = std::min(L, n - 1 - i);
    for (std::size_t l = 1; l <= lmax; ++l) best = std::max(best, increment_norm(path, i, i + l) * inv_pow[l]);
  }
  return {gamma, best, L};
}

namespace serial {

HolderEstimate holder_norm(const GridPath& path, double gamma, std::size_t max_lag) {
  const std::size_t L = checked_lag(path, gamma, max_lag);
  double best = 0.0;
  for (std::size_t i = 0; i < path.size(); ++i)
    for (std::size_t j = i + 1; j < path.size() && j - i <= L; ++j)
      best = std::max(best, increment_norm(path, i, j) / std::pow(path.time(j) - path.time(i), gamma));
  return {gamma, best, L};
}

}  // namespace serial

std::vector<std::vector<double>> default_directions(std::size_t dim) {
  if (dim == 0) throw std::invalid_argument("default_directions: dim must be positive");
  if (dim == 1) return {{1.0}, {-1.0}};
  static constexpr unsigned kPrimes[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53};
  if (dim > std::size(kPrimes)) throw std::invalid_argument("default_directions: dimension too large");

  // Halton points in the cube, kept if inside the unit ball (and not near 0),
  // projected to the sphere; then closed under negation.
  std::vector<std::vector<double>> half;
  const std::size_t want = 8 * dim;
  for (std::size_t i = 1; half.size() < want; ++i) {
    std::vector<double> v(dim);
    double r2 = 0.0;
    for (std::size_t k = 0; k < dim; ++k) {
      v[k] = 2.0 * radical_inverse(i, kPrimes[k]) - 1.0;
      r2 += v[k] * v[k];
    }
    if (r2 > 1.0 || r2 < 1e-4) continue;
    const double r = std::sqrt(r2);
    for (double& x : v) x /= r;
    half.push_back(std::move(v));
  }
  std::vector<std::vector<double>> dirs = half;
  for (auto v : half) {
    for (double& x : v) x = -x;
    dirs.push_back(std::move(v));
  }
  return dirs;
}

RoughnessEstimate roughness_modulus(const GridPath& path, double gamma_hat, std::span<const double> scales,
                                    const std::vector<std::vector<double>>& directions) {
  if (!(gamma_hat > 0.0)) throw std::invalid_argument("roughness_modulus: gamma_hat must be positive");
  if (scales.empty()) throw std::invalid_argument("roughness_modulus: no scales");
  const auto dirs = directions.empty() ? default_directions(path.dim()) : directions;
  for (const auto& phi : dirs) {
    if (phi.size() != path.dim()) throw std::invalid_argument("roughness_modulus: direction has wrong dimension");
    double s = 0.0;
    for (double x : phi) s += x * x;
    if (std::abs(s - 1.0) > 1e-9) throw std::invalid_argument("roughness_modulus: directions must be unit vectors");
  }

  const std::size_t n = path.size();
  const std::size_t d = path.dim();
  const double h = path.step();
  RoughnessEstimate out;
  out.gamma_hat = gamma_hat;
  out.modulus = std::numeric_limits<double>::infinity();

  for (double eps : scales) {
    if (!(eps > 0.0 && eps <= path.horizon() / 2.0 * (1.0 + 1e-12)))
      throw std::invalid_argument("roughness_modulus: scales must lie in (0, T/2]");
    // Lags l with eps/2 < l·h < eps.
    const std::size_t lmin = std::size_t(std::floor(eps / (2.0 * h) + 1e-9)) + 1;
    const std::size_t lmax = std::size_t(std::ceil(eps / h - 1e-9)) - 1;
    if (lmin > lmax || lmin >= n) throw ResolutionError("roughness_modulus: grid too coarse for scale " + std::to_string(eps));

    double worst = std::numeric_limits<double>::infinity();
    const long long nn = static_cast<long long>(n);
#pragma omp parallel for reduction(min : worst) schedule(dynamic, 64)
    for (long long ss = 0; ss < nn; ++ss) {
      const std::size_t s = std::size_t(ss);
      std::vector<double> best(dirs.size(), 0.0);
      std::vector<double> inc(d);
      auto visit = [&](std::size_t t) {
        for (std::size_t k = 0; k < d; ++k) inc[k] = path(t, k) - path(s, k);
        for (std::size_t m = 0; m < dirs.size(); ++m) {
          double dot = 0.0;
          for (std::size_t k = 0; k < d; ++k) dot += dirs[m][k] * inc[k];
          best[m] = std::max(best[m], std::abs(dot));
        }
      };
      bool any = false;
      for (std::size_t l = lmin; l <= lmax; ++l) {
        if (s + l < n) {
          visit(s + l);
          any = true;
        }
        if (s >= l) {
          visit(s - l);
          any = true;
        }
      }
      if (any)
        for (double b : best) worst = std::min(worst, b);
    }
    const double m = worst / std::pow(eps, gamma_hat);
    out.scales_checked.push_back(eps);
    out.modulus_per_scale.push_back(m);
    out.modulus = std::min(out.modulus, m);
  }
  return out;
}

}  // namespace yp
