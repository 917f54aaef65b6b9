#pragma once

#include <stdexcept>
#include <string>

namespace bolab {

// Base of every error the library raises. `kind()` is a short stable tag
// used by the CLI to pick an exit code and by tests to match failures.
class Error : public std::runtime_error {
public:
    Error(std::string kind, const std::string& what)
        : std::runtime_error(kind + ": " + what), kind_(std::move(kind)) {}
    const std::string& kind() const noexcept { return kind_; }

private:
    std::string kind_;
};

// Mismatched sizes or grids.
class ShapeError : public Error {
public:
    explicit ShapeError(const std::string& what) : Error("shape", what) {}
};

// Argument outside the domain where an operation is defined.
class DomainError : public Error {
public:
    DomainError(std::string kind, const std::string& what) : Error(std::move(kind), what) {}
};

// A documented precondition (time threshold, parameter range) does not hold.
class PreconditionError : public Error {
public:
    explicit PreconditionError(const std::string& what) : Error("precondition", what) {}
};

// Numerical breakdown: instability, non-finite output, failed invariant.
class NumericalError : public Error {
public:
    NumericalError(std::string kind, const std::string& what) : Error(std::move(kind), what) {}
};

// Malformed configuration or CLI input.
class ConfigError : public Error {
public:
    explicit ConfigError(const std::string& what) : Error("config", what) {}
};

}  // namespace bolab
