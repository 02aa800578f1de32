#include "yp/frac_calc.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "yp/error.hpp"
#include "yp/frac_kernels.hpp"
#include "yp/holder_paths.hpp"
#include "yp/log.hpp"
#include "yp/path_io.hpp"

namespace yp {

namespace {

std::string window_text(std::pair<double, double> w) {
  return "(" + format_double(w.first) + ", " + format_double(w.second) + ")";
}

void check_function(const FracFunction& f, const char* what) {
  if (f.values.size() < 2) throw std::invalid_argument(std::string(what) + ": need at least 2 samples");
  if (!(f.b > f.a)) throw std::invalid_argument(std::string(what) + ": interval must have b > a");
  for (double v : f.values)
    if (!std::isfinite(v)) throw std::invalid_argument(std::string(what) + ": non-finite sample");
}

void check_order(double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw std::invalid_argument("fractional order must lie in (0,1)");
}

// Rough local Hölder exponent from the largest increments at lags 1 and 16.
void warn_if_rougher_than(const FracFunction& f, double order) {
  const std::size_t n = f.values.size();
  if (n < 64) return;
  double m1 = 0.0, m16 = 0.0;
  for (std::size_t i = 0; i + 1 < n; ++i) m1 = std::max(m1, std::abs(f.values[i + 1] - f.values[i]));
  for (std::size_t i = 0; i + 16 < n; ++i) m16 = std::max(m16, std::abs(f.values[i + 16] - f.values[i]));
  if (m1 <= 0.0 || m16 <= 0.0) return;
  const double est = std::log(m16 / m1) / std::log(16.0);
  if (est <= order)
    warn("fractional derivative of order " + format_double(order) + " applied to data with estimated Hölder exponent " +
         format_double(est));
}

std::vector<double> every(std::span<const double> v, std::size_t stride) {
  std::vector<double> out;
  for (std::size_t i = 0; i < v.size(); i += stride) out.push_back(v[i]);
  return out;
}

// Absolute integrand mass on the nested grids N/4, N/2, N; a mass that keeps
// growing by more than 1.5× per doubling means the product is not integrable.
void ratio_test(std::span<const double> f, std::span<const double> g, double h, double alpha, double mass_full) {
  const std::size_t N = f.size() - 1;
  if (N < 16 || N % 4 != 0) return;
  const auto f2 = every(f, 2), g2 = every(g, 2);
  const auto f4 = every(f, 4), g4 = every(g, 4);
  const double m2 = kernels::young_frac(f2, g2, 2.0 * h, alpha).abs_mass;
  const double m4 = kernels::young_frac(f4, g4, 4.0 * h, alpha).abs_mass;
  if (m4 > 0.0 && m2 > 1.5 * m4 && mass_full > 1.5 * m2) {
    std::ostringstream os;
    os << "young integral: integrand mass grows under refinement (" << m4 << " -> " << m2 << " -> " << mass_full
       << "); the product of fractional derivatives is not integrable";
    throw DivergenceError(os.str());
  }
}

}  // namespace

std::pair<double, double> FracConfig::eta_window(double gamma, double kappa) {
  return {(1.0 - gamma * (1.0 + kappa)) / gamma, 1.0 - kappa};
}

std::pair<double, double> FracConfig::alpha_window(double gamma, double kappa, double eta) {
  return {1.0 - gamma, gamma * (kappa + eta)};
}

FracConfig FracConfig::make(double gamma, double kappa, double eta, std::optional<double> alpha) {
  auto unit = [](double v, const char* name) {
    if (!(v > 0.0 && v < 1.0)) throw ConfigError(std::string(name) + " must lie in (0,1), got " + format_double(v));
  };
  unit(gamma, "gamma");
  unit(kappa, "kappa");
  unit(eta, "eta");
  const auto ew = eta_window(gamma, kappa);
  if (!(eta > ew.first && eta < ew.second))
    throw ConfigError("eta=" + format_double(eta) + " is outside the admissible window " + window_text(ew) +
                      " for gamma=" + format_double(gamma) + ", kappa=" + format_double(kappa));
  const auto aw = alpha_window(gamma, kappa, eta);
  const double a = alpha ? *alpha : 0.5 * (aw.first + aw.second);
  unit(a, "alpha");
  if (!(a > aw.first && a < aw.second))
    throw ConfigError("alpha=" + format_double(a) + " is outside the admissible window " + window_text(aw) +
                      "; omit alpha to use the midpoint");
  return FracConfig(gamma, kappa, eta, a);
}

FracFunction restrict_to(const GridPath& path, double a, double b, std::size_t component) {
  const double h = path.step();
  auto index = [&](double t) {
    const double r = t / h;
    const double i = std::round(r);
    if (std::abs(r - i) > 1e-9 || i < 0.0 || i > double(path.size() - 1))
      throw std::invalid_argument("restrict_to: interval end is not a grid point");
    return std::size_t(i);
  };
  const std::size_t ia = index(a), ib = index(b);
  if (ib <= ia) throw std::invalid_argument("restrict_to: need a < b");
  FracFunction f;
  f.a = path.time(ia);
  f.b = path.time(ib);
  f.values.reserve(ib - ia + 1);
  for (std::size_t i = ia; i <= ib; ++i) f.values.push_back(path(i, component));
  return f;
}

FracFunction frac_integral(const FracFunction& f, double alpha, Side side) {
  check_function(f, "frac_integral");
  check_order(alpha);
  FracFunction out{f.a, f.b, {}};
  out.values = side == Side::Left ? kernels::rl_integral_left(f.values, f.step(), alpha)
                                  : kernels::rl_integral_right(f.values, f.step(), alpha);
  return out;
}

FracFunction frac_derivative_left(const FracFunction& f, double alpha) {
  check_function(f, "frac_derivative_left");
  check_order(alpha);
  warn_if_rougher_than(f, alpha);
  FracFunction out{f.a, f.b, kernels::derivative_left(f.values, f.step(), alpha)};
  for (std::size_t i = 1; i < out.values.size(); ++i)
    if (!std::isfinite(out.values[i])) throw DivergenceError("frac_derivative_left: non-finite value; data rougher than the order");
  return out;
}

FracFunction frac_derivative_right_compensated(const FracFunction& g, double alpha) {
  check_function(g, "frac_derivative_right_compensated");
  check_order(alpha);
  warn_if_rougher_than(g, 1.0 - alpha);
  FracFunction out{g.a, g.b, kernels::derivative_right_compensated(g.values, g.step(), alpha)};
  for (double v : out.values)
    if (!std::isfinite(v)) throw DivergenceError("frac_derivative_right_compensated: non-finite value");
  return out;
}

double young_integral_frac(const FracFunction& f, const FracFunction& g, double alpha) {
  check_function(f, "young_integral_frac");
  check_function(g, "young_integral_frac");
  check_order(alpha);
  if (f.values.size() != g.values.size() || f.a != g.a || f.b != g.b)
    throw std::invalid_argument("young_integral_frac: f and g must share the grid");
  const auto r = kernels::young_frac(f.values, g.values, f.step(), alpha);
  if (!std::isfinite(r.value)) throw DivergenceError("young_integral_frac: non-finite value");
  ratio_test(f.values, g.values, f.step(), alpha, r.abs_mass);
  return r.value;
}

double young_integral_frac(const FracFunction& f, const FracFunction& g, const FracConfig& config) {
  return young_integral_frac(f, g, config.alpha());
}

GridPath lambda_integral(const GridPath& y, const GridPath& x, const Coefficient& coeff, const FracConfig& config) {
  if (x.dim() != 1) throw std::invalid_argument("lambda_integral: driver must be one-dimensional");
  if (y.size() != x.size() || y.horizon() != x.horizon())
    throw std::invalid_argument("lambda_integral: y and x must share the grid");
  if (coeff.dim() != y.dim()) throw std::invalid_argument("lambda_integral: coefficient dimension differs from y");

  const std::size_t n = y.size(), m = y.dim();
  std::vector<std::vector<double>> f(m, std::vector<double>(n));
  std::vector<double> s(m);
  bool all_zero = true;
  for (std::size_t i = 0; i < n; ++i) {
    coeff.eval(y.row(i), s);
    for (std::size_t k = 0; k < m; ++k) {
      f[k][i] = s[k];
      all_zero = all_zero && s[k] == 0.0;
    }
  }
  if (all_zero) return GridPath(y.horizon(), n, m, std::vector<double>(n * m, 0.0));

  const double integral = inv_integrability(y, config.eta());
  if (!std::isfinite(integral))
    throw CertificateError("lambda_integral: |y|^-eta is not integrable for eta=" + format_double(config.eta()));

  const auto xv = x.component(0);
  const double h = x.step();
  std::vector<std::vector<double>> cols(m);
  for (std::size_t k = 0; k < m; ++k) {
    cols[k] = kernels::young_frac_path(f[k], xv, h, config.alpha());
    for (double v : cols[k])
      if (!std::isfinite(v)) throw DivergenceError("lambda_integral: non-finite value");
    ratio_test(f[k], xv, h, config.alpha(), kernels::young_frac(f[k], xv, h, config.alpha()).abs_mass);
  }
  return GridPath::from_columns(y.horizon(), cols);
}

LambdaBound lambda_bound(const GridPath& y, const GridPath& x, const Coefficient& coeff, const FracConfig& config) {
  if (y.size() != x.size() || y.horizon() != x.horizon())
    throw std::invalid_argument("lambda_bound: y and x must share the grid");
  const double gamma = config.gamma(), kappa = config.kappa(), eta = config.eta();
  LambdaBound b;
  b.x_holder = holder_norm(x, gamma).norm;
  double ymax = 0.0;
  std::vector<double> s(coeff.dim());
  for (std::size_t i = 0; i < y.size(); ++i) {
    coeff.eval(y.row(i), s);
    double n2 = 0.0;
    for (double v : s) n2 += v * v;
    b.sigma_sup = std::max(b.sigma_sup, std::sqrt(n2));
    ymax = std::max(ymax, y.norm_at(i));
  }
  b.seminorm = seminorm_for_bounds(coeff, ymax);
  b.y_holder = holder_norm(y, gamma).norm;
  b.inv_integral = inv_integrability(y, config.q());
  if (!std::isfinite(b.inv_integral)) {
    b.value = std::numeric_limits<double>::infinity();
    return b;
  }
  const double tail = b.y_holder == 0.0 ? 0.0
                                        : b.seminorm * std::pow(b.y_holder, kappa + eta) *
                                              std::pow(b.inv_integral, gamma * (kappa + eta));
  b.value = b.x_holder * (b.sigma_sup + tail);
  return b;
}

}  // namespace yp
