#pragma once

#include <stdexcept>
#include <string>

namespace plie {

/// Base class of every error raised by the toolkit.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

#define PLIE_DEFINE_ERROR(Name)                     \
  class Name : public Error {                       \
   public:                                          \
    explicit Name(const std::string& what)          \
        : Error(std::string(#Name ": ") + what) {}  \
  };

// numerics
PLIE_DEFINE_ERROR(StencilOutOfDomain)
PLIE_DEFINE_ERROR(NoConvergence)
PLIE_DEFINE_ERROR(SingularJacobian)
PLIE_DEFINE_ERROR(ConfigError)

// lie-core
PLIE_DEFINE_ERROR(DimError)
PLIE_DEFINE_ERROR(LogDomainError)
PLIE_DEFINE_ERROR(NotInAlgebra)
PLIE_DEFINE_ERROR(MembershipError)

// double group
PLIE_DEFINE_ERROR(DegenerateColumn)

// reduction / induction
PLIE_DEFINE_ERROR(InvariantViolation)
PLIE_DEFINE_ERROR(NotInvariant)
PLIE_DEFINE_ERROR(NotDressingInvariant)

// scenario loading
PLIE_DEFINE_ERROR(ParseError)
PLIE_DEFINE_ERROR(InvariantFailure)

#undef PLIE_DEFINE_ERROR

}  // namespace plie
