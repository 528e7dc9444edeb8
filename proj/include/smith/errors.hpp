#pragma once

#include <stdexcept>
#include <string>

namespace smith {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

#define SMITH_DEFINE_ERROR(Name)            \
  class Name : public Error {               \
   public:                                  \
    using Error::Error;                     \
  };

SMITH_DEFINE_ERROR(NotPrime)
SMITH_DEFINE_ERROR(ModulusMismatch)
SMITH_DEFINE_ERROR(DimensionMismatch)
SMITH_DEFINE_ERROR(NotNilpotent)
SMITH_DEFINE_ERROR(NotOrderP)
SMITH_DEFINE_ERROR(InvalidComplex)
SMITH_DEFINE_ERROR(InadmissibleWindow)
SMITH_DEFINE_ERROR(NotChainMap)
SMITH_DEFINE_ERROR(NotEquivariant)
SMITH_DEFINE_ERROR(NotSquareZero)
SMITH_DEFINE_ERROR(FiltrationViolation)
SMITH_DEFINE_ERROR(SpectralEndpoint)
SMITH_DEFINE_ERROR(EmptyBarcode)
SMITH_DEFINE_ERROR(MalformedInput)
SMITH_DEFINE_ERROR(UnknownCommand)
SMITH_DEFINE_ERROR(UnknownProperty)

#undef SMITH_DEFINE_ERROR

}  // namespace smith
