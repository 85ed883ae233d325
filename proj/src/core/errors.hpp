#pragma once

#include <stdexcept>
#include <string>

namespace cusplim {

// Invalid configuration or parameter domain violations. CLI exit code 2.
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Numeric or generation failures on valid configurations. CLI exit code 3.
struct NumericError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct SingularPoint : ConfigError {
  using ConfigError::ConfigError;
};

struct SingularHit : ConfigError {
  using ConfigError::ConfigError;
};

struct NonPositive : ConfigError {
  using ConfigError::ConfigError;
};

struct TooFewSamples : ConfigError {
  using ConfigError::ConfigError;
};

struct QuadratureFailure : NumericError {
  using NumericError::NumericError;
};

struct CirculantNotPSD : NumericError {
  using NumericError::NumericError;
};

struct CovarianceNotPD : NumericError {
  using NumericError::NumericError;
};

struct DegenerateDenominator : NumericError {
  using NumericError::NumericError;
};

}  // namespace cusplim
