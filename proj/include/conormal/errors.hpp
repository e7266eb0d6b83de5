#pragma once

#include <stdexcept>
#include <string>

namespace conormal {

// Thrown when an operation requires a symbol degree below a strict bound
// (trace reduction needs degree < -1, Poisson conjugation needs degree < 3).
class DegreeTooHighError : public std::invalid_argument {
public:
    explicit DegreeTooHighError(const std::string& what) : std::invalid_argument(what) {}
};

// Thrown when adaptive refinement exhausts its panel budget.
class NonConvergentError : public std::runtime_error {
public:
    explicit NonConvergentError(const std::string& what) : std::runtime_error(what) {}
};

// Thrown by the log-log slope fit when an error value is zero or the
// sample is too small to fit.
class DegenerateFitError : public std::invalid_argument {
public:
    explicit DegenerateFitError(const std::string& what) : std::invalid_argument(what) {}
};

}  // namespace conormal
