#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace cyclecluster {

enum class ErrorKind {
  ParseError,
  InvalidParameters,
  OrderingViolation,
  OutOfRange,
  WedgeViolation,
  OutsideStudiedWedge,
  SubcaseViolation,
  Unclassifiable,
  NoOrbit,
  EmptyFamily,
  Indeterminate,
  NoTriangle,
  InclusionViolation,
  HorizonTooLarge,
};

std::string_view kind_name(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(std::string(kind_name(kind)) + ": " + message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace cyclecluster
