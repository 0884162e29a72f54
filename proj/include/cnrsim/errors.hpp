#pragma once

#include <stdexcept>
#include <string>

namespace cnr {

/// Base class for all errors thrown by this library.
class error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An argument violates a documented precondition (non-positive count,
/// out-of-range angle, zero bandwidth, ...). The message names the parameter.
class invalid_parameter_error : public error {
 public:
  using error::error;
};

/// A geometric computation has no answer (coincident points, zero-length
/// line of sight).
class degenerate_geometry_error : public error {
 public:
  using error::error;
};

/// Fewer anchors than the four unknowns of the navigation solution.
class insufficient_anchors_error : public error {
 public:
  using error::error;
};

/// The navigation normal matrix is singular or numerically unusable
/// (condition estimate above 1e12).
class singular_geometry_error : public error {
 public:
  using error::error;
};

/// A config file failed to parse. Carries the 1-based line number.
class config_parse_error : public error {
 public:
  config_parse_error(const std::string& what, int line)
      : error(what), line_(line) {}
  int line() const noexcept { return line_; }

 private:
  int line_;
};

/// A parsed config value is outside its documented bounds. Carries the key.
class config_validation_error : public error {
 public:
  config_validation_error(const std::string& what, std::string key)
      : error(what), key_(std::move(key)) {}
  const std::string& key() const noexcept { return key_; }

 private:
  std::string key_;
};

/// Filesystem failure (unreadable config, unwritable output path).
class io_error : public error {
 public:
  io_error(const std::string& what, std::string path)
      : error(what), path_(std::move(path)) {}
  const std::string& path() const noexcept { return path_; }

 private:
  std::string path_;
};

}  // namespace cnr
