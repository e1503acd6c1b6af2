#pragma once

#include <stdexcept>
#include <string>

namespace srb {

// Invalid input: bad dimensions, wrong response kind, malformed files,
// out-of-range configuration. Maps to exit code 2 in the CLI.
class DataError : public std::runtime_error {
 public:
  explicit DataError(const std::string& what) : std::runtime_error(what) {}
};

// Numerical failure: singular systems, degenerate variance weights,
// leverage-one points. Maps to exit code 3 in the CLI.
class NumericalError : public std::runtime_error {
 public:
  explicit NumericalError(const std::string& what) : std::runtime_error(what) {}
};

// IRLS left the representable domain (saturated logits, overflowing
// Poisson means). Carries the iteration at which the blow-up was detected.
class DivergenceError : public NumericalError {
 public:
  DivergenceError(const std::string& what, int iteration)
      : NumericalError(what + " (iteration " + std::to_string(iteration) + ")"),
        iteration_(iteration) {}
  int iteration() const { return iteration_; }

 private:
  int iteration_;
};

}  // namespace srb
