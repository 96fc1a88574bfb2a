#ifndef QUADSPIN_ERRORS_HPP
#define QUADSPIN_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace quadspin {

// Base class for everything this library throws on purpose.
struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Invalid arguments, unsupported configurations, I/O and parse problems.
// The CLI maps these to exit code 2.
struct OperationalError : Error {
    explicit OperationalError(const std::string& msg) : Error(msg) {}
};

// A mathematical check that was expected to hold failed. The CLI maps
// these to exit code 1.
struct MathCheckError : Error {
    explicit MathCheckError(const std::string& msg) : Error(msg) {}
};

// Interpolation (or a similar construction) ran out of field elements.
struct FieldTooSmallError : OperationalError {
    explicit FieldTooSmallError(const std::string& msg) : OperationalError(msg) {}
};

// Requested construction is not available over the given field, e.g.
// isotropic subspaces of a rational form with no recorded splitting.
struct NotSupportedError : OperationalError {
    explicit NotSupportedError(const std::string& msg) : OperationalError(msg) {}
};

}  // namespace quadspin

#endif
