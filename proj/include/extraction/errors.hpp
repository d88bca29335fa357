#pragma once

#include <stdexcept>
#include <string>

namespace extraction {

// Base for all recoverable failures. `kind` is a stable machine-readable tag
// used by the CLI when emitting structured error JSON.
class Error : public std::runtime_error {
public:
    Error(std::string kind, const std::string& what)
        : std::runtime_error(what), kind_(std::move(kind)) {}
    const std::string& kind() const noexcept { return kind_; }

private:
    std::string kind_;
};

class ValidationError : public Error {
public:
    using Error::Error;
};

class SolverError : public Error {
public:
    using Error::Error;
};

class QuadratureError : public Error {
public:
    using Error::Error;
};

}  // namespace extraction
