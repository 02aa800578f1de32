#pragma once

#include <stdexcept>
#include <string>

namespace yp {

// Invalid arguments use std::invalid_argument. The types below carry
// conditions a caller may want to branch on (the CLI maps them to exit codes).

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Integrability certificate for |y|^{-eta} failed, or eta is outside its window.
class CertificateError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A numerical quantity diverged (non-integrable product, blow-up, breakdown).
class DivergenceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The grid is too coarse for the requested construction.
class ResolutionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace yp
