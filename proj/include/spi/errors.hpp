#pragma once

#include <stdexcept>
#include <string>

namespace spi {

// Invalid configuration value (sampling ratio out of range, bad pad, ...).
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

// Dimension / layout mismatch between two objects.
class ShapeError : public std::runtime_error {
 public:
  explicit ShapeError(const std::string& msg) : std::runtime_error(msg) {}
};

// Requested object exceeds the supported size range.
class CapacityError : public std::runtime_error {
 public:
  explicit CapacityError(const std::string& msg) : std::runtime_error(msg) {}
};

// File system / decode failures; carries the offending path in the message.
class IoError : public std::runtime_error {
 public:
  explicit IoError(const std::string& msg) : std::runtime_error(msg) {}
};

// Undecodable or unsupported raster content (as opposed to unreadable files).
class FormatError : public IoError {
 public:
  explicit FormatError(const std::string& msg) : IoError(msg) {}
};

// Reconstruction blew up (non-finite objective). Carries how far it got.
class SolverError : public std::runtime_error {
 public:
  SolverError(const std::string& msg, int iterations_done)
      : std::runtime_error(msg), iterations(iterations_done) {}
  int iterations;
};

}  // namespace spi
