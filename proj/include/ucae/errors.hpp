#pragma once

#include <stdexcept>
#include <string>

namespace ucae {

// Violated precondition or malformed input; the CLI maps this to exit code 1.
class UsageError : public std::invalid_argument {
public:
    explicit UsageError(const std::string& what) : std::invalid_argument(what) {}
};

// Numeric failure (non-finite values, non-convergence); CLI exit code 2.
class NumericError : public std::runtime_error {
public:
    explicit NumericError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace ucae
