#pragma once

#include <stdexcept>
#include <string>

namespace mlpce {

// Error taxonomy; mirrored by the C API status codes.
struct Error : std::runtime_error {
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

struct ValidationError : Error {
  explicit ValidationError(const std::string& w) : Error(w) {}
};

struct BuildError : Error {
  explicit BuildError(const std::string& w) : Error(w) {}
};

struct CapacityError : Error {
  explicit CapacityError(const std::string& w) : Error(w) {}
};

struct ParamError : Error {
  explicit ParamError(const std::string& w) : Error(w) {}
};

struct IoError : Error {
  explicit IoError(const std::string& w) : Error(w) {}
};

}  // namespace mlpce
