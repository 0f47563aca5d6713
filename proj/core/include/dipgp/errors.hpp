#pragma once
#include <stdexcept>
#include <string>

namespace dipgp {

/// Base class for all library errors.
struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

/// Invalid input, configuration, or misuse of an operation (CLI exit code 1).
struct UsageError : Error {
    explicit UsageError(const std::string& msg) : Error(msg) {}
};

/// A quadrature or fit did not reach the requested accuracy (CLI exit code 2).
struct AccuracyError : Error {
    explicit AccuracyError(const std::string& msg) : Error(msg) {}
};

/// A trajectory produced non-finite values (CLI exit code 3).
struct DivergenceError : Error {
    explicit DivergenceError(const std::string& msg) : Error(msg) {}
};

} // namespace dipgp
