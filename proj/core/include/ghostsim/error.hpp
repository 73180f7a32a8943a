#pragma once

#include <stdexcept>
#include <string>

namespace ghostsim {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A precondition on an argument was violated.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// Two arrays or grids that must agree do not.
class ShapeError : public Error {
 public:
  using Error::Error;
};

/// The Fresnel chirp would be undersampled on the requested grids.
class AliasingError : public Error {
 public:
  using Error::Error;
};

/// The requested estimator has no meaningful value (e.g. all-dark bucket, zero baseline).
class DegenerateStatistics : public Error {
 public:
  using Error::Error;
};

/// The operation is only defined for some source profiles.
class UnsupportedProfile : public Error {
 public:
  using Error::Error;
};

/// A quantity is not resolvable from the data (e.g. g2 peak washed out by jitter).
class NotMeasurable : public Error {
 public:
  using Error::Error;
};

/// Scenario document could not be parsed or validated.
class ConfigError : public Error {
 public:
  ConfigError(const std::string& message, int line = 0, std::string key = {})
      : Error(format(message, line, key)), line_(line), key_(std::move(key)) {}

  int line() const noexcept { return line_; }
  const std::string& key() const noexcept { return key_; }

 private:
  static std::string format(const std::string& message, int line, const std::string& key) {
    std::string out;
    if (line > 0) out += "line " + std::to_string(line) + ": ";
    if (!key.empty()) out += "'" + key + "': ";
    return out + message;
  }

  int line_;
  std::string key_;
};

/// Filesystem or stream failure while writing results.
class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace ghostsim
