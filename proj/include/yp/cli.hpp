#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "yp/coefficients.hpp"
#include "yp/grid_path.hpp"
#include "yp/holder_paths.hpp"

namespace yp::cli {

enum ExitCode : int { kOk = 0, kFailure = 1, kConfigError = 2, kCertificateFailure = 3, kDivergence = 4 };

/// Flat key=value settings. Later assignments win; `include <path>` splices
/// another file (relative to the including one) at that point.
class KeyValues {
 public:
  void set(const std::string& key, const std::string& value) { values_[key] = value; }
  std::optional<std::string> get(const std::string& key) const;
  const std::map<std::string, std::string>& all() const { return values_; }
  /// Sorted `key=value` lines; the config hash is taken over this text.
  std::string canonical() const;

 private:
  std::map<std::string, std::string> values_;
};

KeyValues parse_key_values(const std::string& text, const std::string& base_dir = ".");
KeyValues load_key_values(const std::string& path);

/// 64-bit FNV-1a, printed as 16 hex digits.
std::uint64_t fnv1a64(const std::string& text);
std::string hex64(std::uint64_t v);

inline const std::vector<std::string>& commands() {
  static const std::vector<std::string> c = {"fbm-gen", "lamperti", "converge", "multidim",
                                             "ladder-diag", "roughness", "certify"};
  return c;
}

struct DriverSpec {
  enum class Kind { Fbm, Linear, File };
  Kind kind = Kind::Fbm;
  double hurst = 0.65;
  std::size_t dim = 1;
  std::size_t n_points = 4097;
  double horizon = 1.0;
  FbmMethod method = FbmMethod::Auto;
  double slope = 1.0;  // linear: x_t = slope·t
  std::string path;    // file: .csv or .ypgp
};

/// Fully resolved experiment: every default is filled in and listed in
/// `parameters` (in that order) for the provenance header.
struct ExperimentConfig {
  std::string command;
  DriverSpec driver;
  std::string coefficient_text = "power C=1 kappa=0.5";
  double gamma = 0.6;
  double kappa = 0.5;
  double eta = 0.0;
  double alpha = 0.0;
  double eps1 = 0.0;
  double eps2 = 0.0;
  double c0 = 1.0;
  std::vector<double> a{0.0};
  std::vector<std::uint64_t> seeds{0};
  std::vector<std::size_t> ns;
  std::size_t fine_factor = 8;
  std::size_t substeps = 1;
  std::optional<double> absorb_threshold;
  bool regularize = true;
  bool residual = true;
  bool binary = false;
  double gamma_hat = 0.0;
  std::vector<double> scales;

  std::string out_dir = ".";
  std::string format = "csv";
  unsigned jobs = 1;

  std::uint64_t config_hash = 0;
  std::vector<std::pair<std::string, std::string>> parameters;

  Coefficient coefficient() const;
};

struct CommandLine {
  std::string command;
  std::optional<std::string> config_path;
  std::optional<std::uint64_t> seed;
  unsigned jobs = 1;
  std::string out_dir = ".";
  std::string format = "csv";
  std::vector<std::string> overrides;  // key=value, applied after the file
};

/// Throws ConfigError with an actionable message on any invalid setting.
ExperimentConfig resolve(const CommandLine& cl);

/// Runs one command and maps library errors to exit codes. Messages go to
/// the spdlog default logger.
int run(const CommandLine& cl);

}  // namespace yp::cli
