#pragma once

#include <stdexcept>
#include <string>

namespace cmech {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

#define CMECH_DEFINE_ERROR(Name)          \
  class Name : public Error {             \
   public:                                \
    using Error::Error;                   \
  }

// machine-core
CMECH_DEFINE_ERROR(InvalidMachine);
CMECH_DEFINE_ERROR(NonUniqueStationary);
CMECH_DEFINE_ERROR(InvalidStart);

// linear algebra / quantum model
CMECH_DEFINE_ERROR(DimensionMismatch);
CMECH_DEFINE_ERROR(NotSymmetric);
CMECH_DEFINE_ERROR(NotDensityOperator);

// processes / circuit
CMECH_DEFINE_ERROR(Degenerate);
CMECH_DEFINE_ERROR(OutOfRange);
CMECH_DEFINE_ERROR(InvalidDensity);

// inference
CMECH_DEFINE_ERROR(TooShort);
CMECH_DEFINE_ERROR(InsufficientData);
CMECH_DEFINE_ERROR(InvalidSymbol);

// sweeps
CMECH_DEFINE_ERROR(FlatFunction);
CMECH_DEFINE_ERROR(InvalidSpec);

#undef CMECH_DEFINE_ERROR

}  // namespace cmech
