#pragma once

#include <stdexcept>

namespace bpec {

// Invalid model parameters, malformed configuration, bad arguments.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Numerical failure: singular linear system, simplex iteration cap, etc.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace bpec
