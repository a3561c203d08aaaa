#pragma once

#include <stdexcept>
#include <string>

namespace cim {

// A precondition on an argument or parameter was violated.
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

// The requested configuration is valid but not supported by the operation.
class UnsupportedConfiguration : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Adaptive quadrature did not reach the requested tolerance. Carries the best
// estimate available when the evaluation budget ran out.
class IntegrationError : public std::runtime_error {
public:
    IntegrationError(const std::string& what, double best_estimate, double abs_error)
        : std::runtime_error(what), best_estimate_(best_estimate), abs_error_(abs_error) {}

    double best_estimate() const noexcept { return best_estimate_; }
    double abs_error() const noexcept { return abs_error_; }

private:
    double best_estimate_;
    double abs_error_;
};

// The integrand produced NaN.
class NanIntegrand : public std::runtime_error {
public:
    NanIntegrand(const std::string& what, double abscissa)
        : std::runtime_error(what), abscissa_(abscissa) {}

    double abscissa() const noexcept { return abscissa_; }

private:
    double abscissa_;
};

// An improper integral (e.g. a cumulative entropy) does not converge.
class DivergentIntegral : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Malformed textual spec. `column` is 1-based within the offending string.
class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& what, std::string field, std::string token, int column)
        : std::runtime_error(what), field_(std::move(field)), token_(std::move(token)), column_(column) {}

    const std::string& field() const noexcept { return field_; }
    const std::string& token() const noexcept { return token_; }
    int column() const noexcept { return column_; }

private:
    std::string field_;
    std::string token_;
    int column_;
};

}  // namespace cim
