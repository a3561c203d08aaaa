#pragma once

#include "cim/numerics.hpp"

#include <string>
#include <variant>

namespace cim {

// Parameter sets for the supported univariate families. Scale/rate/shape
// parameters must be strictly positive; validation happens in MarginalFamily.
struct Exponential {
    double theta = 1.0;  // scale: F(y) = 1 - exp(-y / theta)
    friend bool operator==(const Exponential&, const Exponential&) = default;
};
struct Logistic {  // standard: F(y) = 1 / (1 + exp(-y))
    friend bool operator==(const Logistic&, const Logistic&) = default;
};
struct Rayleigh {
    double sigma = 1.0;
    friend bool operator==(const Rayleigh&, const Rayleigh&) = default;
};
struct GeneralizedExponential {
    double theta = 1.0;  // rate: F(y) = (1 - exp(-theta y))^lambda
    double lambda = 1.0;
    friend bool operator==(const GeneralizedExponential&, const GeneralizedExponential&) = default;
};
struct Uniform {
    double theta = 1.0;  // support (0, theta)
    friend bool operator==(const Uniform&, const Uniform&) = default;
};
struct InverseWeibull {
    double theta = 1.0;  // F(y) = exp(-(theta / y)^beta)
    double beta = 1.0;
    friend bool operator==(const InverseWeibull&, const InverseWeibull&) = default;
};

enum class FamilyKind { exponential, logistic, rayleigh, generalized_exponential, uniform, inverse_weibull };

class MarginalFamily {
public:
    using Params = std::variant<Exponential, Logistic, Rayleigh, GeneralizedExponential, Uniform, InverseWeibull>;

    // Throws DomainError on non-positive or non-finite parameters.
    explicit MarginalFamily(Params params);

    FamilyKind kind() const noexcept { return static_cast<FamilyKind>(params_.index()); }
    const Params& params() const noexcept { return params_; }

    double pdf(double y) const;
    // log f(y); -inf outside the support.
    double log_pdf(double y) const;
    double cdf(double y) const;
    // log F(y), accurate in the lower tail; -inf at or below the support.
    double log_cdf(double y) const;
    // Throws DomainError unless 0 < u < 1.
    double quantile(double u) const;

    double support_lo() const;
    double support_hi() const;

    friend bool operator==(const MarginalFamily&, const MarginalFamily&) = default;

private:
    Params params_;
};

// A scalar functional of a marginal, with provenance.
struct FunctionalValue {
    double value = 0.0;
    bool closed_form = true;
    double abs_error = 0.0;
};

// H(Y) = -int f log f.
double shannon_entropy(const MarginalFamily& m);
double shannon_entropy_by_quadrature(const MarginalFamily& m, const QuadratureOptions& opts = {});

// phi_f = int_0^1 u log f(Q(u)) du.
double phi_f(const MarginalFamily& m);
double phi_f_by_quadrature(const MarginalFamily& m, const QuadratureOptions& opts = {});

// CE(Y) = -int F log F. Inverse Weibull with beta <= 1 has no finite CE and is
// rejected with DomainError. Families without a closed form go through
// quadrature; a divergent integral raises DivergentIntegral.
FunctionalValue cumulative_entropy_eval(const MarginalFamily& m, const QuadratureOptions& opts = {});
inline double cumulative_entropy(const MarginalFamily& m) { return cumulative_entropy_eval(m).value; }
FunctionalValue cumulative_entropy_by_quadrature(const MarginalFamily& m, const QuadratureOptions& opts = {});

// CE(Y_(2:2)) = -int F^2 log F^2, the cumulative entropy of the maximum of two
// independent copies.
FunctionalValue cumulative_entropy_max2_eval(const MarginalFamily& m, const QuadratureOptions& opts = {});
inline double cumulative_entropy_max2(const MarginalFamily& m) { return cumulative_entropy_max2_eval(m).value; }
FunctionalValue cumulative_entropy_max2_by_quadrature(const MarginalFamily& m, const QuadratureOptions& opts = {});

// u log u with the convention 0 log 0 = 0.
double xlogx(double x);

}  // namespace cim
