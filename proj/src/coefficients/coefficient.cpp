#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>
#include <stdexcept>

#include "yp/coefficients.hpp"
#include "yp/error.hpp"
#include "yp/path_io.hpp"

namespace yp {

namespace {

double euclid(std::span<const double> v) {
  if (v.size() == 1) return std::abs(v[0]);
  double s = 0.0;
  for (double x : v) s += x * x;
  return std::sqrt(s);
}

std::vector<double> default_direction(std::size_t dim) {
  return std::vector<double>(dim, 1.0 / std::sqrt(double(dim)));
}

}  // namespace

Coefficient Coefficient::power(double scale, double kappa, std::size_t dim) {
  Coefficient c;
  c.kind_ = Kind::Power;
  c.scale_ = scale;
  c.kappa_ = kappa;
  c.dim_ = dim;
  c.name_ = "power";
  c.rho_ = [scale, kappa](double r) { return scale * std::pow(r, kappa); };
  c.direction_ = default_direction(std::max<std::size_t>(dim, 1));
  c.validate();
  if (!(scale > 0.0)) throw std::invalid_argument("power coefficient: C must be positive");
  return c;
}

Coefficient Coefficient::radial(std::string name, ScalarProfile rho, double kappa, std::size_t dim) {
  Coefficient c;
  c.kind_ = Kind::Radial;
  c.kappa_ = kappa;
  c.dim_ = dim;
  c.name_ = std::move(name);
  c.rho_ = std::move(rho);
  c.direction_ = default_direction(std::max<std::size_t>(dim, 1));
  c.validate();
  return c;
}

Coefficient Coefficient::radial_vector(std::string name, VectorProfile rho, double kappa, std::size_t dim) {
  Coefficient c;
  c.kind_ = Kind::Radial;
  c.kappa_ = kappa;
  c.dim_ = dim;
  c.name_ = std::move(name);
  c.vrho_ = std::move(rho);
  c.validate();
  return c;
}

Coefficient Coefficient::with_direction(std::vector<double> direction) const {
  if (!rho_) throw std::invalid_argument("with_direction: only scalar profiles carry a direction");
  if (direction.size() != dim_) throw std::invalid_argument("with_direction: dimension mismatch");
  const double r = euclid(direction);
  if (!(r > 0.0)) throw std::invalid_argument("with_direction: zero direction");
  Coefficient c = *this;
  for (double& x : direction) x /= r;
  c.direction_ = std::move(direction);
  return c;
}

void Coefficient::validate() const {
  if (!(kappa_ > 0.0 && kappa_ < 1.0)) throw std::invalid_argument("coefficient: kappa must lie in (0,1)");
  if (dim_ < 1) throw std::invalid_argument("coefficient: dimension must be at least 1");
  if (!rho_ && !vrho_) throw std::invalid_argument("coefficient: missing profile");
  std::vector<double> at0(dim_);
  eval_radius(0.0, at0);
  if (euclid(at0) != 0.0) throw std::invalid_argument("coefficient: sigma(0) must be 0");
}

double Coefficient::profile(double r) const {
  if (rho_) return rho_(r);
  std::vector<double> v(dim_);
  vrho_(r, v);
  return euclid(v);
}

void Coefficient::eval_radius(double r, std::span<double> out) const {
  if (rho_) {
    const double v = rho_(r);
    for (std::size_t k = 0; k < dim_; ++k) out[k] = v * direction_[k];
  } else {
    vrho_(r, out);
  }
}

void Coefficient::eval(std::span<const double> xi, std::span<double> out) const {
  if (xi.size() != dim_ || out.size() != dim_) throw std::invalid_argument("coefficient eval: dimension mismatch");
  eval_radius(euclid(xi), out);
}

std::vector<double> Coefficient::eval(std::span<const double> xi) const {
  std::vector<double> out(dim_);
  eval(xi, out);
  return out;
}

double Coefficient::eval1(double xi) const {
  if (rho_ && dim_ == 1) return rho_(std::abs(xi)) * direction_[0];
  std::vector<double> out(dim_);
  eval_radius(std::abs(xi), out);
  return out[0];
}

std::optional<double> Coefficient::exact_seminorm() const {
  if (kind_ == Kind::Power) return scale_;
  return std::nullopt;
}

std::string Coefficient::describe() const {
  if (!spec_text_.empty()) return spec_text_;
  std::ostringstream os;
  if (kind_ == Kind::Power)
    os << "power C=" << format_double(scale_) << " kappa=" << format_double(kappa_);
  else
    os << "radial kappa=" << format_double(kappa_) << " profile=" << name_;
  if (dim_ != 1) os << " dim=" << dim_;
  return os.str();
}

RegularizedCoefficient::RegularizedCoefficient(Coefficient base, unsigned level)
    : base_(std::move(base)), level_(level), threshold_(std::ldexp(1.0, -int(level))) {}

void RegularizedCoefficient::eval_radius(double r, std::span<double> out) const {
  base_.eval_radius(r > threshold_ ? r : threshold_, out);
}

void RegularizedCoefficient::eval(std::span<const double> xi, std::span<double> out) const {
  if (xi.size() != base_.dim() || out.size() != base_.dim())
    throw std::invalid_argument("regularized eval: dimension mismatch");
  const double r = euclid(xi);
  if (r > threshold_)
    base_.eval(xi, out);
  else
    base_.eval_radius(threshold_, out);
}

std::vector<double> RegularizedCoefficient::eval(std::span<const double> xi) const {
  std::vector<double> out(base_.dim());
  eval(xi, out);
  return out;
}

double RegularizedCoefficient::eval1(double xi) const {
  return std::abs(xi) > threshold_ ? base_.eval1(xi) : base_.eval1(threshold_);
}

double RegularizedCoefficient::profile(double r) const { return base_.profile(r > threshold_ ? r : threshold_); }

RegularizedCoefficient regularize(const Coefficient& c, unsigned level) { return RegularizedCoefficient(c, level); }

std::vector<std::string> builtin_profiles() { return {"power", "capped", "power_plus_linear"}; }

namespace {
Coefficient parse_coefficient_impl(const std::string& text);
}

Coefficient parse_coefficient(const std::string& text) {
  Coefficient c = parse_coefficient_impl(text);
  std::istringstream is(text);
  std::string tok, norm;
  while (is >> tok) norm += (norm.empty() ? "" : " ") + tok;
  c.spec_text_ = norm;
  return c;
}

namespace {

Coefficient parse_coefficient_impl(const std::string& text) {
  std::istringstream is(text);
  std::string kind;
  is >> kind;
  std::map<std::string, std::string> kv;
  std::string tok;
  while (is >> tok) {
    const auto eq = tok.find('=');
    if (eq == std::string::npos || eq == 0) throw ConfigError("coefficient spec: expected key=value, got '" + tok + "'");
    kv[tok.substr(0, eq)] = tok.substr(eq + 1);
  }
  auto num = [&](const std::string& key, std::optional<double> def) -> double {
    auto it = kv.find(key);
    if (it == kv.end()) {
      if (!def) throw ConfigError("coefficient spec: missing '" + key + "'");
      return *def;
    }
    try {
      return parse_double(it->second);
    } catch (const std::exception&) {
      throw ConfigError("coefficient spec: '" + key + "' is not a number");
    }
  };
  auto check_keys = [&](std::initializer_list<const char*> allowed) {
    for (const auto& [k, v] : kv) {
      if (std::find_if(allowed.begin(), allowed.end(), [&](const char* a) { return k == a; }) == allowed.end())
        throw ConfigError("coefficient spec: unknown key '" + k + "'");
    }
  };

  const double kappa = num("kappa", std::nullopt);
  if (!(kappa > 0.0 && kappa < 1.0)) throw ConfigError("coefficient spec: kappa must lie in (0,1)");
  const auto dim = static_cast<std::size_t>(num("dim", 1.0));
  if (dim < 1) throw ConfigError("coefficient spec: dim must be at least 1");

  if (kind == "power") {
    check_keys({"C", "kappa", "dim"});
    const double C = num("C", 1.0);
    if (!(C > 0.0)) throw ConfigError("coefficient spec: C must be positive");
    return Coefficient::power(C, kappa, dim);
  }
  if (kind != "radial") throw ConfigError("coefficient spec: kind must be 'power' or 'radial', got '" + kind + "'");
  check_keys({"kappa", "profile", "C", "cap", "slope", "dim"});
  const auto prof = kv.count("profile") ? kv["profile"] : std::string("power");
  const double C = num("C", 1.0);
  if (!(C > 0.0)) throw ConfigError("coefficient spec: C must be positive");
  if (prof == "power") return Coefficient::radial("power", [C, kappa](double r) { return C * std::pow(r, kappa); }, kappa, dim);
  if (prof == "capped") {
    const double cap = num("cap", 1.0);
    if (!(cap > 0.0)) throw ConfigError("coefficient spec: cap must be positive");
    return Coefficient::radial(
        "capped", [C, kappa, cap](double r) { return std::min(C * std::pow(r, kappa), cap); }, kappa, dim);
  }
  if (prof == "power_plus_linear") {
    const double slope = num("slope", 1.0);
    if (!(slope >= 0.0)) throw ConfigError("coefficient spec: slope must be non-negative");
    return Coefficient::radial(
        "power_plus_linear", [C, kappa, slope](double r) { return C * std::pow(r, kappa) + slope * r; }, kappa, dim);
  }
  throw ConfigError("coefficient spec: unknown profile '" + prof + "' (builtins: power, capped, power_plus_linear)");
}

}  // namespace

}  // namespace yp
