#pragma once

#include <stdexcept>
#include <string>

namespace iyb {

/// Base of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input: group specs, tables, certificates. CLI exit code 3.
class ParseError : public Error {
 public:
  using Error::Error;
};

/// A construction or search step could not produce a verified result.
/// CLI exit code 2.
class ConstructionError : public Error {
 public:
  using Error::Error;
};

/// Raised by pure_complement when the submodule has no direct complement.
class NotASummand : public ConstructionError {
 public:
  using ConstructionError::ConstructionError;
};

/// A computation would exceed a configured size bound.
class ResourceLimit : public Error {
 public:
  using Error::Error;
};

}  // namespace iyb
