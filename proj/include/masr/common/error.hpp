#pragma once

#include <stdexcept>
#include <string>

namespace masr {

/// Base for every error the library raises. The CLI maps subclasses to exit codes.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DimensionError : public Error {
 public:
  using Error::Error;
};

/// A compact payload that disagrees with its mask.
class StructuralError : public Error {
 public:
  using Error::Error;
};

class ParameterError : public Error {
 public:
  using Error::Error;
};

class CalibrationError : public Error {
 public:
  using Error::Error;
};

class CapacityError : public Error {
 public:
  using Error::Error;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

/// Raised when the simulator detects an internal scheduling inconsistency.
class IntegrityError : public Error {
 public:
  using Error::Error;
};

}  // namespace masr
