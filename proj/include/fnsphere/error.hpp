#pragma once

#include <stdexcept>
#include <string>

namespace fnsphere {

// Base for every error raised by the library. Precondition violations,
// invariant violations and out-of-field requests all land here.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class DomainError : public Error {
public:
    using Error::Error;
};

class ParseError : public Error {
public:
    using Error::Error;
};

// Raised when an exactly-checked identity that the construction guarantees
// does not hold. Seeing one of these means a bug, not bad input.
class InternalError : public Error {
public:
    using Error::Error;
};

} // namespace fnsphere
