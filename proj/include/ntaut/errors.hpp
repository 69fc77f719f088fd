#pragma once

#include <stdexcept>
#include <string>

namespace ntaut {

// Base class for everything this library throws.
struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

#define NTAUT_ERROR_TYPE(Name)                                    \
    struct Name : Error {                                         \
        explicit Name(const std::string& msg) : Error(msg) {}    \
    }

NTAUT_ERROR_TYPE(NonPrime);
NTAUT_ERROR_TYPE(DegreeOutOfRange);
NTAUT_ERROR_TYPE(DivisionByZero);
NTAUT_ERROR_TYPE(FieldMismatch);
NTAUT_ERROR_TYPE(DimensionMismatch);
NTAUT_ERROR_TYPE(DimensionTooSmall);
NTAUT_ERROR_TYPE(IndexOutOfRange);
NTAUT_ERROR_TYPE(WrongCharacteristic);
NTAUT_ERROR_TYPE(NotASubgroup);
NTAUT_ERROR_TYPE(TooLarge);
NTAUT_ERROR_TYPE(ZeroDiagonalEntry);
NTAUT_ERROR_TYPE(ExponentOutOfRange);
NTAUT_ERROR_TYPE(EvenCharacteristic);
NTAUT_ERROR_TYPE(NotGF2);
NTAUT_ERROR_TYPE(NonAdditiveMap);
NTAUT_ERROR_TYPE(MalformedAutMap);
NTAUT_ERROR_TYPE(NotAnAutomorphism);
NTAUT_ERROR_TYPE(ResidualNotCentral);
NTAUT_ERROR_TYPE(ParseError);

#undef NTAUT_ERROR_TYPE

} // namespace ntaut
