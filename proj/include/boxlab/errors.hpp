#pragma once

#include <stdexcept>
#include <string>

namespace boxlab {

class Error : public std::runtime_error {
public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

#define BOXLAB_ERROR(Name)                                                    \
  class Name : public Error {                                                 \
  public:                                                                     \
    explicit Name(const std::string& what) : Error(#Name ": " + what) {}      \
  }

BOXLAB_ERROR(ParseError);
BOXLAB_ERROR(NormalizationError);
BOXLAB_ERROR(RangeError);
BOXLAB_ERROR(SignallingError);
BOXLAB_ERROR(DomainError);
BOXLAB_ERROR(WeightError);
BOXLAB_ERROR(DimensionError);
BOXLAB_ERROR(AxisError);
BOXLAB_ERROR(NotRealizable);
BOXLAB_ERROR(DegeneracyError);
BOXLAB_ERROR(SubdivisionLimit);
BOXLAB_ERROR(ExhaustionError);
BOXLAB_ERROR(UnsupportedInstance);
BOXLAB_ERROR(MismatchError);

#undef BOXLAB_ERROR

// Raised when the linear structure of an instance forces a zero weight.
class DegenerateError : public Error {
public:
  DegenerateError(int lambda, const std::string& what)
      : Error("DegenerateError: " + what), lambda_(lambda) {}
  int lambda() const { return lambda_; }

private:
  int lambda_;
};

}  // namespace boxlab
