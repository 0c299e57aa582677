#pragma once

#include <stdexcept>
#include <string>

namespace axisym {

// Base for every failure raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

#define AXISYM_ERROR(Name)            \
  class Name : public Error {         \
   public:                            \
    using Error::Error;               \
  }

AXISYM_ERROR(DomainError);
AXISYM_ERROR(NonPositiveDensity);
AXISYM_ERROR(DegenerateProfile);
AXISYM_ERROR(OutOfDomain);
AXISYM_ERROR(AssemblyFailure);
AXISYM_ERROR(SolveFailure);
AXISYM_ERROR(DivisionByZero);
AXISYM_ERROR(ZeroField);
AXISYM_ERROR(DegenerateFit);
AXISYM_ERROR(NonConvergent);
AXISYM_ERROR(MissingExponent);
AXISYM_ERROR(NonFinite);
AXISYM_ERROR(IoError);

#undef AXISYM_ERROR

class ConfigError : public Error {
 public:
  ConfigError(int line, const std::string& what)
      : Error(line > 0 ? "line " + std::to_string(line) + ": " + what : what),
        line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

}  // namespace axisym
