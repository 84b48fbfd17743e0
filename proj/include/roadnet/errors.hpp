#ifndef ROADNET_ERRORS_HPP
#define ROADNET_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace roadnet {

/// Base class for all errors raised by this library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed or internally inconsistent input data (CSV rows, graph files).
class ValidationError : public Error {
public:
    using Error::Error;
};

/// An argument outside an operation's domain (non-positive length, bad range).
class DomainError : public Error {
public:
    using Error::Error;
};

/// A vertex sequence that is not connected in the view it is evaluated on.
class InvalidPathError : public Error {
public:
    using Error::Error;
};

/// Persistence problems: bad magic/version, graph-hash mismatch, truncated file.
class ArtifactError : public Error {
public:
    using Error::Error;
};

} // namespace roadnet

#endif // ROADNET_ERRORS_HPP
