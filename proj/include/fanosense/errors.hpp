#pragma once

#include <stdexcept>
#include <string>

namespace fanosense {

// Invalid or inconsistent user input. Maps to exit code 1.
class ConfigError : public std::runtime_error {
public:
    ConfigError(std::string path, const std::string& what)
        : std::runtime_error(path.empty() ? what : path + ": " + what), path_(std::move(path)) {}
    const std::string& path() const noexcept { return path_; }

private:
    std::string path_;
};

// Any failure inside the physics or the solvers. Maps to exit code 2.
class NumericalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class DomainError : public NumericalError {
public:
    using NumericalError::NumericalError;
};

// Thrown when a closed form has no real plasmon root.
class NoResonanceError : public NumericalError {
public:
    using NumericalError::NumericalError;
};

class PoleError : public NumericalError {
public:
    using NumericalError::NumericalError;
};

// Zero photon flux where a normalized quantity is requested.
class DegenerateFluxError : public NumericalError {
public:
    using NumericalError::NumericalError;
};

class DegenerateSteadyStateError : public NumericalError {
public:
    using NumericalError::NumericalError;
};

}  // namespace fanosense
