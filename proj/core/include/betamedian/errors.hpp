#pragma once

#include <stdexcept>
#include <string>

namespace betamedian {

/// Raised when an argument lies outside the mathematical domain of an operation.
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Raised when an iterative method (continued fraction, series, root finder)
/// exhausts its iteration budget. Root finders report their final bracket.
class ConvergenceError : public std::runtime_error {
public:
    explicit ConvergenceError(const std::string& what, double lo = 0.0, double hi = 0.0,
                              int iterations = 0)
        : std::runtime_error(what), lo_(lo), hi_(hi), iterations_(iterations) {}

    double bracket_lo() const noexcept { return lo_; }
    double bracket_hi() const noexcept { return hi_; }
    int iterations() const noexcept { return iterations_; }

private:
    double lo_;
    double hi_;
    int iterations_;
};

/// Raised when a regression has too few usable points.
class FitError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Raised on malformed CSV input.
class CsvError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace betamedian
