#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace wemm {

// Root of every error the library throws. Callers that only need to know
// "something was rejected" catch this; the harness maps subclasses onto
// exit codes.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

#define WEMM_DEFINE_ERROR(Name)        \
  class Name : public Error {          \
   public:                             \
    using Error::Error;                \
  }

// linear algebra
WEMM_DEFINE_ERROR(NotPositiveDefinite);
WEMM_DEFINE_ERROR(ConvergenceFailure);
WEMM_DEFINE_ERROR(DimensionMismatch);
WEMM_DEFINE_ERROR(NonFiniteInput);

// learners
WEMM_DEFINE_ERROR(InvalidRegularizer);
WEMM_DEFINE_ERROR(InputNormViolation);
WEMM_DEFINE_ERROR(DegenerateWeight);
WEMM_DEFINE_ERROR(InvalidParameter);

// oracles and certifiers
WEMM_DEFINE_ERROR(EmptyStream);
WEMM_DEFINE_ERROR(WeightModeMismatch);
WEMM_DEFINE_ERROR(PreconditionViolation);
WEMM_DEFINE_ERROR(InfeasibleParameters);
WEMM_DEFINE_ERROR(InstanceTooLarge);

// data and harness
WEMM_DEFINE_ERROR(InvalidSpec);
WEMM_DEFINE_ERROR(ConfigError);
WEMM_DEFINE_ERROR(IoError);
WEMM_DEFINE_ERROR(NormViolation);

#undef WEMM_DEFINE_ERROR

class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : Error("line " + std::to_string(line) + ": " + what), line_(line) {}

  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

}  // namespace wemm
