#pragma once

#include <stdexcept>
#include <string>

namespace nystrompca {

// Invalid arguments, shapes or configuration. The CLI maps this to exit code 2.
class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

// Numerical breakdown (rank-zero matrix, eigenvalue below tolerance, ...).
// The CLI maps this to exit code 3.
class NumericalError : public std::runtime_error {
public:
    explicit NumericalError(const std::string& what) : std::runtime_error(what) {}
};

} // namespace nystrompca
