#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace rgbwforge {

/// Base of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Invalid parameters or configuration values (bad levels, weights, gains, matrices).
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// Dimension or plane-count mismatch.
class ShapeError : public Error {
 public:
  using Error::Error;
};

/// Malformed text input. Carries the 1-based line number when known.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t line = 0)
      : Error(line ? "line " + std::to_string(line) + ": " + what : what), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

class EstimationError : public Error {
 public:
  using Error::Error;
};

/// Prediction and ground-truth sets do not pair up one-to-one.
class PairingError : public Error {
 public:
  using Error::Error;
};

/// A composite score was requested while one of its components is absent.
class IncompleteReportError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace rgbwforge
