#pragma once

#include <stdexcept>
#include <string>

namespace pkern {

/// Base class of everything the library throws on purpose.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed input or a violated precondition (CLI exit status 2).
class ValidationError : public Error {
public:
    using Error::Error;
};

/// A configured resource guard was exceeded (CLI exit status 3).
class ResourceError : public Error {
public:
    using Error::Error;
};

/// An internal consistency check failed. This indicates a broken convention
/// (length function, classification references, ...) and must not be caught
/// and ignored.
class ConventionError : public Error {
public:
    using Error::Error;
};

namespace detail {

inline void require(bool cond, const std::string& what)
{
    if (!cond)
        throw ValidationError(what);
}

inline void ensure(bool cond, const std::string& what)
{
    if (!cond)
        throw ConventionError(what);
}

} // namespace detail
} // namespace pkern
