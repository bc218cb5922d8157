#pragma once

#include <stdexcept>
#include <string>

namespace vpd {

/// Base of every error raised by the library. `kind()` is the stable
/// machine-readable name surfaced by the CLI (e.g. "MetricViolation").
class Error : public std::runtime_error {
 public:
  Error(std::string kind, const std::string& message)
      : std::runtime_error(kind + ": " + message), kind_(std::move(kind)) {}

  const std::string& kind() const noexcept { return kind_; }

 private:
  std::string kind_;
};

/// Input rejected before any computation (bad metric, shape, dimension...).
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// A numerical procedure failed to meet its own contract.
class NumericError : public Error {
 public:
  using Error::Error;
};

#define VPD_DEFINE_ERROR(Name, Base)                                     \
  class Name : public Base {                                             \
   public:                                                               \
    explicit Name(const std::string& message) : Base(#Name, message) {}  \
  }

VPD_DEFINE_ERROR(MetricViolation, ValidationError);
VPD_DEFINE_ERROR(EmptySubset, ValidationError);
VPD_DEFINE_ERROR(SubsetCoversAll, ValidationError);
VPD_DEFINE_ERROR(GraphMismatch, ValidationError);
VPD_DEFINE_ERROR(DimensionMismatch, ValidationError);
VPD_DEFINE_ERROR(GridMismatch, ValidationError);
VPD_DEFINE_ERROR(ShapeMismatch, ValidationError);
VPD_DEFINE_ERROR(TooLarge, ValidationError);
VPD_DEFINE_ERROR(TensorTooHighDim, ValidationError);
VPD_DEFINE_ERROR(TooHighDimForGrid, ValidationError);
VPD_DEFINE_ERROR(TooHighDim, ValidationError);
VPD_DEFINE_ERROR(PointOutsideGrid, ValidationError);
VPD_DEFINE_ERROR(InvalidArgument, ValidationError);
VPD_DEFINE_ERROR(ParseError, ValidationError);

VPD_DEFINE_ERROR(NegativeNormSquared, NumericError);
VPD_DEFINE_ERROR(BadAcceptanceRate, NumericError);

#undef VPD_DEFINE_ERROR

}  // namespace vpd
