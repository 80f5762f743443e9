#pragma once

#include <stdexcept>
#include <string>

namespace buckle {

/// An iterative method failed to meet its tolerance within its budget.
class ConvergenceError : public std::runtime_error {
public:
    explicit ConvergenceError(const std::string& what) : std::runtime_error(what) {}
};

/// No sign change was found below the configured ceiling.
class RootNotFound : public std::runtime_error {
public:
    explicit RootNotFound(const std::string& what) : std::runtime_error(what) {}
};

/// Raised when a quantity that must be stable under refinement is not.
class InstabilityError : public std::runtime_error {
public:
    explicit InstabilityError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace buckle
