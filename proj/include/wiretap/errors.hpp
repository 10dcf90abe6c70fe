#pragma once

#include <stdexcept>
#include <string>

namespace wiretap {

// Invalid scenario parameters, grids, or dimensions.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Scenario text that cannot be parsed. Carries the offending line and key.
class ParseError : public ConfigError {
 public:
  ParseError(int line, std::string key, const std::string& what)
      : ConfigError(format(line, key, what)), line_(line), key_(std::move(key)) {}

  int line() const { return line_; }
  const std::string& key() const { return key_; }

 private:
  static std::string format(int line, const std::string& key,
                            const std::string& what) {
    std::string out = "line " + std::to_string(line);
    if (!key.empty()) out += " (" + key + ")";
    return out + ": " + what;
  }

  int line_;
  std::string key_;
};

// A covariance that should be positive definite failed to factor.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Payoff cells violate R_FE <= R_AE or R_AJ <= R_FJ beyond tolerance.
class InconsistentPayoffError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

// Mixed equilibrium requested for a game whose denominator vanishes.
class DegenerateGameError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace wiretap
