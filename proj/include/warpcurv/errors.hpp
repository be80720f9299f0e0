#ifndef WARPCURV_ERRORS_HPP
#define WARPCURV_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace warpcurv {

/// Base class for everything thrown by this library.
class Error : public std::runtime_error {
public:
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

/// Invalid argument (bad dimension, index out of range, non-finite input).
class ArgumentError : public Error {
public:
  using Error::Error;
};

/// A numerical routine failed to deliver (eigen non-convergence, NaN in a sum).
class NumericalError : public Error {
public:
  using Error::Error;
};

/// First fundamental form not positive definite at a point.
class DegenerateMetricError : public Error {
public:
  using Error::Error;
};

/// Parameter point outside the chart, or at a chart singularity (sphere pole).
class ChartError : public Error {
public:
  using Error::Error;
};

/// A check's mathematical hypothesis does not hold on the given family
/// (H <= 0 at a node, non-constant H2, Garding gate failure).
class HypothesisError : public Error {
public:
  using Error::Error;
};

/// Operation not available for this family / parameter combination.
class UnsupportedError : public Error {
public:
  using Error::Error;
};

/// Configuration parse or validation failure. Message carries the key path.
class ConfigError : public Error {
public:
  using Error::Error;
};

} // namespace warpcurv

#endif
