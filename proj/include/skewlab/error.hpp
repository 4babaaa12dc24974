#pragma once

#include <stdexcept>
#include <string>

namespace skewlab {

// Base class for all structured errors thrown by the library.
struct Error : std::runtime_error {
    explicit Error(std::string msg) : std::runtime_error(std::move(msg)) {}
};

// Malformed input: bad generator index, unparsable word, spec violation.
struct InputError : Error {
    using Error::Error;
};

// Two values belong to different specs/rings/towers.
struct MismatchError : Error {
    using Error::Error;
};

struct DivisionByZeroError : Error {
    DivisionByZeroError() : Error("division by zero") {}
    explicit DivisionByZeroError(std::string msg) : Error(std::move(msg)) {}
};

// A configured ceiling (coset bound, degree/height ceiling, enumeration
// depth) was hit.  The computation is abandoned, never silently truncated.
struct ResourceExceededError : Error {
    std::string ceiling;
    ResourceExceededError(std::string what, std::string ceilingDesc)
        : Error(std::move(what)), ceiling(std::move(ceilingDesc)) {}
};

// Requested check is not computable with the data at hand.
struct UnsupportedError : Error {
    using Error::Error;
};

} // namespace skewlab
