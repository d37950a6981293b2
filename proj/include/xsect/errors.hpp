#pragma once

#include <stdexcept>
#include <string>

namespace xsect {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Degenerate or otherwise unusable geometric input.
class GeometryError : public Error {
 public:
  using Error::Error;
};

/// A cutting plane is (nearly) tangent to the shape boundary.
class GeneralPositionViolation : public Error {
 public:
  using Error::Error;
};

class LpError : public Error {
 public:
  using Error::Error;
};

/// Scene file or configuration problems; `where` names the offending field.
class ValidationError : public Error {
 public:
  ValidationError(const std::string& where, const std::string& what)
      : Error(where + ": " + what), where_(where) {}
  const std::string& where() const { return where_; }

 private:
  std::string where_;
};

}  // namespace xsect
