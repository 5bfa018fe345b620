#pragma once

#include <stdexcept>
#include <string>

namespace envkit {

/// Base class for every error raised by envkit.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Bad arguments or data that violate a documented precondition.
class ValidationError : public Error {
public:
    using Error::Error;
};

/// File-system or decode failures. Messages carry the offending path.
class IoError : public Error {
public:
    using Error::Error;
};

} // namespace envkit
