#include <algorithm>
#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include "yp/cli.hpp"
#include "yp/error.hpp"
#include "yp/frac_calc.hpp"
#include "yp/path_io.hpp"

namespace yp::cli {

namespace fs = std::filesystem;

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream is(s);
  while (std::getline(is, cur, sep)) out.push_back(trim(cur));
  return out;
}

void parse_into(KeyValues& kv, const std::string& text, const fs::path& base, std::vector<fs::path>& stack) {
  std::istringstream is(text);
  std::string raw;
  std::size_t line_no = 0;
  while (std::getline(is, raw)) {
    ++line_no;
    const std::string line = trim(raw);
    if (line.empty() || line[0] == '#') continue;
    if (line.rfind("include", 0) == 0 && (line.size() == 7 || line[7] == ' ' || line[7] == '\t')) {
      const std::string target = trim(line.substr(7));
      if (target.empty()) throw ConfigError("line " + std::to_string(line_no) + ": include needs a path");
      fs::path p = fs::path(target).is_absolute() ? fs::path(target) : base / target;
      std::error_code ec;
      const fs::path canon = fs::weakly_canonical(p, ec);
      if (std::find(stack.begin(), stack.end(), canon) != stack.end())
        throw ConfigError("include cycle through '" + p.string() + "'");
      std::ifstream in(p);
      if (!in) throw ConfigError("cannot open included config '" + p.string() + "'");
      std::stringstream ss;
      ss << in.rdbuf();
      stack.push_back(canon);
      parse_into(kv, ss.str(), p.parent_path(), stack);
      stack.pop_back();
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError("line " + std::to_string(line_no) + ": expected 'key = value' or 'include <path>', got '" +
                        line + "'");
    const std::string key = trim(line.substr(0, eq));
    if (key.empty()) throw ConfigError("line " + std::to_string(line_no) + ": empty key");
    kv.set(key, trim(line.substr(eq + 1)));
  }
}

double num(const std::string& key, const std::string& v) {
  try {
    const double x = parse_double(v);
    if (!std::isfinite(x)) throw std::invalid_argument("");
    return x;
  } catch (const std::invalid_argument&) {
    throw ConfigError(key + ": expected a number, got '" + v + "'");
  }
}

std::uint64_t count(const std::string& key, const std::string& v) {
  std::uint64_t x = 0;
  const auto t = trim(v);
  auto [p, ec] = std::from_chars(t.data(), t.data() + t.size(), x);
  if (ec != std::errc() || p != t.data() + t.size())
    throw ConfigError(key + ": expected a non-negative integer, got '" + v + "'");
  return x;
}

bool flag(const std::string& key, const std::string& v) {
  if (v == "1" || v == "true" || v == "yes" || v == "on") return true;
  if (v == "0" || v == "false" || v == "no" || v == "off") return false;
  throw ConfigError(key + ": expected true/false, got '" + v + "'");
}

// "0..19" or "1,4,9" (ranges may appear as list items).
std::vector<std::uint64_t> int_list(const std::string& key, const std::string& v) {
  std::vector<std::uint64_t> out;
  for (const auto& item : split(v, ',')) {
    const auto dots = item.find("..");
    if (dots == std::string::npos) {
      out.push_back(count(key, item));
      continue;
    }
    const auto lo = count(key, item.substr(0, dots)), hi = count(key, item.substr(dots + 2));
    if (hi < lo) throw ConfigError(key + ": empty range '" + item + "'");
    if (hi - lo > 1000000) throw ConfigError(key + ": range '" + item + "' is too long");
    for (auto i = lo; i <= hi; ++i) out.push_back(i);
  }
  if (out.empty()) throw ConfigError(key + ": empty list");
  return out;
}

std::vector<double> num_list(const std::string& key, const std::string& v) {
  std::vector<double> out;
  for (const auto& item : split(v, ',')) out.push_back(num(key, item));
  if (out.empty()) throw ConfigError(key + ": empty list");
  return out;
}

template <class T>
std::string join(const std::vector<T>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ',';
    if constexpr (std::is_floating_point_v<T>)
      s += format_double(v[i]);
    else
      s += std::to_string(v[i]);
  }
  return s;
}

const std::set<std::string>& known_keys() {
  static const std::set<std::string> k = {
      "driver",   "hurst",     "dim",        "n_points",  "horizon",   "fbm_method",       "slope",
      "driver_path", "coefficient", "gamma",  "eta",       "alpha",     "eps1",             "eps2",
      "c0",       "a",         "seeds",      "log2_ns",   "ns",        "fine_factor",      "substeps",
      "absorb_threshold", "regularize", "residual", "binary", "gamma_hat", "scales"};
  return k;
}

// Hash of the resolved settings, seeds excluded so that per-seed outputs of one
// run share it.
std::uint64_t config_hash(const std::string& command, const std::vector<std::pair<std::string, std::string>>& P) {
  std::string canon = command + "\n";
  for (const auto& [k, v] : P)
    if (k != "seeds") canon += k + "=" + v + "\n";
  return fnv1a64(canon);
}

bool uses_window(const std::string& c) {
  return c == "lamperti" || c == "converge" || c == "multidim" || c == "ladder-diag";
}

}  // namespace

std::optional<std::string> KeyValues::get(const std::string& key) const {
  auto it = values_.find(key);
  if (it == values_.end()) return std::nullopt;
  return it->second;
}

std::string KeyValues::canonical() const {
  std::string s;
  for (const auto& [k, v] : values_) s += k + "=" + v + "\n";
  return s;
}

KeyValues parse_key_values(const std::string& text, const std::string& base_dir) {
  KeyValues kv;
  std::vector<fs::path> stack;
  parse_into(kv, text, fs::path(base_dir), stack);
  return kv;
}

KeyValues load_key_values(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  KeyValues kv;
  std::error_code ec;
  std::vector<fs::path> stack{fs::weakly_canonical(fs::path(path), ec)};
  parse_into(kv, ss.str(), fs::path(path).parent_path(), stack);
  return kv;
}

std::uint64_t fnv1a64(const std::string& text) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : text) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string hex64(std::uint64_t v) {
  static const char* digits = "0123456789abcdef";
  std::string s(16, '0');
  for (int i = 15; i >= 0; --i, v >>= 4) s[std::size_t(i)] = digits[v & 0xF];
  return s;
}

Coefficient ExperimentConfig::coefficient() const { return parse_coefficient(coefficient_text); }

ExperimentConfig resolve(const CommandLine& cl) {
  ExperimentConfig e;
  e.command = cl.command;
  if (std::find(commands().begin(), commands().end(), e.command) == commands().end())
    throw ConfigError("unknown command '" + e.command + "'");

  KeyValues kv = cl.config_path ? load_key_values(*cl.config_path) : KeyValues{};
  for (const auto& o : cl.overrides) {
    const auto eq = o.find('=');
    if (eq == std::string::npos) throw ConfigError("--set expects key=value, got '" + o + "'");
    kv.set(trim(o.substr(0, eq)), trim(o.substr(eq + 1)));
  }
  for (const auto& [k, v] : kv.all()) {
    if (!known_keys().count(k)) {
      std::string valid;
      for (const auto& name : known_keys()) valid += (valid.empty() ? "" : ", ") + name;
      throw ConfigError("unknown key '" + k + "' (valid keys: " + valid + ")");
    }
  }
  auto& P = e.parameters;
  auto val = [&](const std::string& k) { return kv.get(k); };

  // Output options.
  if (cl.format != "csv" && cl.format != "json") throw ConfigError("--format must be csv or json");
  if (cl.jobs < 1) throw ConfigError("--jobs must be at least 1");
  e.format = cl.format;
  e.jobs = cl.jobs;
  e.out_dir = cl.out_dir;

  // Driver.
  auto& d = e.driver;
  const std::string kind = val("driver").value_or("fbm");
  if (kind == "fbm") {
    d.kind = DriverSpec::Kind::Fbm;
  } else if (kind == "linear") {
    d.kind = DriverSpec::Kind::Linear;
  } else if (kind == "file") {
    d.kind = DriverSpec::Kind::File;
  } else {
    throw ConfigError("driver must be fbm, linear or file, got '" + kind + "'");
  }
  P.emplace_back("driver", kind);
  const bool fbm = d.kind == DriverSpec::Kind::Fbm;
  if (fbm) {
    d.hurst = num("hurst", val("hurst").value_or("0.65"));
    if (!(d.hurst > 0.0 && d.hurst < 1.0)) throw ConfigError("hurst must lie in (0,1), got " + format_double(d.hurst));
    d.dim = count("dim", val("dim").value_or("1"));
    if (d.dim < 1) throw ConfigError("dim must be at least 1");
    const std::string m = val("fbm_method").value_or("auto");
    if (m == "auto") d.method = FbmMethod::Auto;
    else if (m == "cholesky") d.method = FbmMethod::Cholesky;
    else if (m == "circulant") d.method = FbmMethod::Circulant;
    else throw ConfigError("fbm_method must be auto, cholesky or circulant");
    P.emplace_back("hurst", format_double(d.hurst));
    P.emplace_back("dim", std::to_string(d.dim));
    P.emplace_back("fbm_method", m);
  } else if (d.kind == DriverSpec::Kind::Linear) {
    d.slope = num("slope", val("slope").value_or("1"));
    P.emplace_back("slope", format_double(d.slope));
  } else {
    const auto p = val("driver_path");
    if (!p) throw ConfigError("driver = file needs driver_path = <file.csv|file.ypgp>");
    d.path = *p;
    P.emplace_back("driver_path", d.path);
  }
  if (d.kind != DriverSpec::Kind::File) {
    d.horizon = num("horizon", val("horizon").value_or("1"));
    if (!(d.horizon > 0.0)) throw ConfigError("horizon must be positive");
    P.emplace_back("horizon", format_double(d.horizon));
  }

  // Seeds.
  if (cl.seed) e.seeds = {*cl.seed};
  else if (auto s = val("seeds")) e.seeds = int_list("seeds", *s);
  P.emplace_back("seeds", join(e.seeds));

  // Grid sizes.
  if (e.command == "converge") {
    if (auto s = val("ns")) {
      for (auto n : int_list("ns", *s)) e.ns.push_back(std::size_t(n));
    } else {
      for (auto k : int_list("log2_ns", val("log2_ns").value_or("8..14"))) {
        if (k < 1 || k > 24) throw ConfigError("log2_ns entries must lie in 1..24");
        e.ns.push_back((std::size_t(1) << k) + 1);
      }
    }
    std::sort(e.ns.begin(), e.ns.end());
    if (e.ns.front() < 2) throw ConfigError("ns: partitions need at least 2 nodes");
    e.fine_factor = count("fine_factor", val("fine_factor").value_or("8"));
    if (e.fine_factor < 8) throw ConfigError("fine_factor must be at least 8 (grid steps per finest partition cell)");
    const std::size_t derived = e.fine_factor * (e.ns.back() - 1) + 1;
    for (auto n : e.ns)
      if ((derived - 1) % (n - 1) != 0)
        throw ConfigError("ns: every n−1 must divide fine_factor·(max n − 1); use log2_ns for dyadic sizes");
    if (auto n = val("n_points"); n && count("n_points", *n) != derived)
      throw ConfigError("n_points is derived for converge (fine_factor·(max ns − 1) + 1 = " + std::to_string(derived) +
                        "); remove it or make it match");
    d.n_points = derived;
    P.emplace_back("ns", join(e.ns));
    P.emplace_back("fine_factor", std::to_string(e.fine_factor));
  } else if (d.kind != DriverSpec::Kind::File) {
    d.n_points = count("n_points", val("n_points").value_or("4097"));
    if (d.n_points < 2) throw ConfigError("n_points must be at least 2");
  }
  if (d.kind != DriverSpec::Kind::File) P.emplace_back("n_points", std::to_string(d.n_points));

  if (e.command == "fbm-gen") {
    if (!fbm) throw ConfigError("fbm-gen needs driver = fbm");
    e.binary = flag("binary", val("binary").value_or("false"));
    P.emplace_back("binary", e.binary ? "true" : "false");
    e.config_hash = config_hash(e.command, P);
    return e;
  }

  // Exponents.
  if (auto g = val("gamma")) {
    e.gamma = num("gamma", *g);
  } else if (fbm) {
    e.gamma = d.hurst - 0.05;
  } else {
    e.gamma = 0.6;
  }
  if (!(e.gamma > 0.5 && e.gamma < 1.0))
    throw ConfigError("gamma must lie in (1/2, 1), got " + format_double(e.gamma) +
                      (fbm && !val("gamma") ? " (default hurst − 0.05; raise hurst or set gamma)" : ""));
  if (fbm && e.gamma >= d.hurst)
    throw ConfigError("gamma=" + format_double(e.gamma) + " must be below hurst=" + format_double(d.hurst) +
                      " (fBm paths are only gamma-Hölder for gamma < H)");
  P.emplace_back("gamma", format_double(e.gamma));

  if (e.command != "roughness") {
    e.coefficient_text = val("coefficient").value_or("power C=1 kappa=0.5");
    Coefficient c = [&] {
      try {
        return parse_coefficient(e.coefficient_text);
      } catch (const std::exception& ex) {
        throw ConfigError(std::string("coefficient: ") + ex.what());
      }
    }();
    e.kappa = c.kappa();
    P.emplace_back("coefficient", c.describe());
    P.emplace_back("kappa", format_double(e.kappa));

    const auto ew = FracConfig::eta_window(e.gamma, e.kappa);
    e.eta = val("eta") ? num("eta", *val("eta")) : 0.5 * (ew.first + ew.second);
    P.emplace_back("eta", format_double(e.eta));
    if (uses_window(e.command)) {
      std::optional<double> alpha;
      if (auto a = val("alpha")) alpha = num("alpha", *a);
      const auto fc = FracConfig::make(e.gamma, e.kappa, e.eta, alpha);
      e.alpha = fc.alpha();
      P.emplace_back("alpha", format_double(e.alpha));
    }

    // Initial condition.
    const char* a_default = e.command == "multidim" ? "1" : (e.command == "ladder-diag" ? "0.05" : "0");
    e.a = num_list("a", val("a").value_or(a_default));
    if (e.a.size() != c.dim())
      throw ConfigError("a has " + std::to_string(e.a.size()) + " entries but the coefficient acts on dimension " +
                        std::to_string(c.dim()) + " (set dim=m in the coefficient)");
    P.emplace_back("a", join(e.a));
    if (e.command != "multidim" && (c.dim() != 1 || (fbm && d.dim != 1)))
      throw ConfigError(e.command + " is one-dimensional: use dim=1 for the driver and the coefficient");
  }

  if (e.command == "multidim" || e.command == "ladder-diag") {
    e.substeps = count("substeps", val("substeps").value_or("1"));
    if (e.substeps < 1) throw ConfigError("substeps must be at least 1");
    if (auto t = val("absorb_threshold")) {
      e.absorb_threshold = num("absorb_threshold", *t);
      if (!(*e.absorb_threshold > 0.0)) throw ConfigError("absorb_threshold must be positive");
    }
    double anorm = 0.0;
    for (double v : e.a) anorm += v * v;
    anorm = std::sqrt(anorm);
    if (!(anorm > 0.0)) throw ConfigError(e.command + " needs a nonzero initial value a (a = 0 is the lamperti command's case)");
    e.regularize = flag("regularize", val("regularize").value_or("true"));
    P.emplace_back("substeps", std::to_string(e.substeps));
    P.emplace_back("absorb_threshold",
                   e.absorb_threshold ? format_double(*e.absorb_threshold)
                                      : format_double(std::ldexp(anorm, -40)) + " (2^-40·|a|)");
    P.emplace_back("regularize", e.regularize ? "true" : "false");

    if (auto v = val("eps1")) e.eps1 = num("eps1", *v);
    else e.eps1 = fbm ? 0.5 * (d.hurst - e.gamma) : 0.0;
    if (e.eps1 < 0.0) throw ConfigError("eps1 must be non-negative");
    if (!(e.gamma + e.eps1 + e.gamma * e.kappa < 1.0))
      throw ConfigError("need gamma + eps1 + gamma·kappa < 1, got " +
                        format_double(e.gamma + e.eps1 + e.gamma * e.kappa) + "; lower eps1 or gamma");
    const double al = (1.0 - e.kappa) / e.gamma;
    const double eps2_max =
        std::min({al, e.kappa / (1.0 - e.gamma), (e.kappa + al * e.eps1) / (1.0 + e.eps1)});
    if (auto v = val("eps2")) e.eps2 = num("eps2", *v);
    else e.eps2 = 0.5 * eps2_max;
    if (e.eps2 < 0.0) throw ConfigError("eps2 must be non-negative");
    e.c0 = num("c0", val("c0").value_or("1"));
    if (!(e.c0 > 0.0)) throw ConfigError("c0 must be positive");
    P.emplace_back("eps1", format_double(e.eps1) + (val("eps1") ? "" : fbm ? " ((hurst − gamma)/2)" : " (no Hölder surplus known)"));
    P.emplace_back("eps2", format_double(e.eps2) + (val("eps2") ? "" : " (half the admissible bound)"));
    P.emplace_back("c0", format_double(e.c0));
  }

  if (e.command == "lamperti") {
    e.residual = flag("residual", val("residual").value_or("true"));
    P.emplace_back("residual", e.residual ? "true" : "false");
  }

  if (e.command == "roughness") {
    const double T = d.kind == DriverSpec::Kind::File ? 0.0 : d.horizon;
    e.gamma_hat = val("gamma_hat") ? num("gamma_hat", *val("gamma_hat")) : (fbm ? d.hurst + 0.02 : e.gamma + 0.1);
    if (!(e.gamma_hat > 0.0 && e.gamma_hat < 1.0)) throw ConfigError("gamma_hat must lie in (0,1)");
    if (auto s = val("scales")) {
      e.scales = num_list("scales", *s);
    } else if (T > 0.0) {
      for (int k = 1; k <= 6; ++k) e.scales.push_back(std::ldexp(T, -k));
    }
    for (double s : e.scales)
      if (!(s > 0.0) || (T > 0.0 && s > 0.5 * T)) throw ConfigError("scales must lie in (0, T/2]");
    P.emplace_back("gamma_hat", format_double(e.gamma_hat));
    P.emplace_back("scales", e.scales.empty() ? "T/2..T/64" : join(e.scales));
  }

  e.config_hash = config_hash(e.command, P);
  return e;
}

}  // namespace yp::cli
