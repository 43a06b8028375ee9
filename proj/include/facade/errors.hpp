#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace facade {

// Invalid input: bad geometry, out-of-range parameters, malformed config.
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A time-stepping kernel produced non-finite values.
class DivergenceError : public std::runtime_error {
 public:
  DivergenceError(const std::string& scheme, std::size_t step)
      : std::runtime_error(scheme + ": non-finite field after step " + std::to_string(step)),
        step_(step) {}

  std::size_t step() const noexcept { return step_; }

 private:
  std::size_t step_;
};

// Linear solver failure (zero pivot, Krylov non-convergence).
class SolverError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Missing or malformed input/output files.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace facade
