#include "cim/marginals.hpp"

#include "cim/errors.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <string>

namespace cim {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kPi2Over6 = std::numbers::pi * std::numbers::pi / 6.0;

template <class... Ts>
struct Overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

void require_positive(double v, const char* family, const char* name) {
    if (!(v > 0.0) || !std::isfinite(v)) {
        throw DomainError(std::string(family) + ": parameter '" + name + "' must be positive and finite");
    }
}

// B(lambda) = psi(lambda + 1) - psi(1)
double harmonic_b(double lambda) { return digamma(lambda + 1.0) + kEulerGamma; }

void require_finite_ce(const MarginalFamily& m) {
    if (const auto* iw = std::get_if<InverseWeibull>(&m.params()); iw && iw->beta <= 1.0) {
        throw DomainError("invweibull: cumulative entropy requires beta > 1");
    }
}

// Probes an improper CE-type integral on growing truncations [lo, Q(1 - 10^-k)]
// after the full-range quadrature gave up; persistent >10% growth means divergence.
[[noreturn]] void classify_failure(const MarginalFamily& m, const Integrand& integrand, const QuadratureOptions& opts,
                                   const IntegrationError& original) {
    if (std::isinf(m.support_hi())) {
        QuadratureOptions probe = opts;
        probe.rel_tol = std::max(opts.rel_tol, 1e-8);
        double previous = 0.0;
        int growing = 0;
        for (int k = 3; k <= 12; k += 3) {
            const double hi = m.quantile(1.0 - std::pow(10.0, -k));
            double estimate = 0.0;
            try {
                estimate = integrate(integrand, m.support_lo(), hi, probe).value;
            } catch (const IntegrationError& e) {
                estimate = e.best_estimate();
            }
            if (k > 3 && std::abs(estimate) > 1.1 * std::abs(previous)) {
                ++growing;
            }
            previous = estimate;
        }
        if (growing == 3) {
            throw DivergentIntegral("cumulative entropy integral diverges (truncated estimates keep growing)");
        }
    }
    throw original;
}

FunctionalValue ce_quadrature(const MarginalFamily& m, const Integrand& integrand, const QuadratureOptions& opts) {
    try {
        const auto r = integrate(integrand, m.support_lo(), m.support_hi(), opts);
        return {r.value, false, r.abs_error_estimate};
    } catch (const IntegrationError& e) {
        classify_failure(m, integrand, opts, e);
    }
}

}  // namespace

double xlogx(double x) { return x == 0.0 ? 0.0 : x * std::log(x); }

MarginalFamily::MarginalFamily(Params params) : params_(std::move(params)) {
    std::visit(Overloaded{
                   [](const Exponential& p) { require_positive(p.theta, "exponential", "theta"); },
                   [](const Logistic&) {},
                   [](const Rayleigh& p) { require_positive(p.sigma, "rayleigh", "sigma"); },
                   [](const GeneralizedExponential& p) {
                       require_positive(p.theta, "genexp", "theta");
                       require_positive(p.lambda, "genexp", "lambda");
                   },
                   [](const Uniform& p) { require_positive(p.theta, "uniform", "theta"); },
                   [](const InverseWeibull& p) {
                       require_positive(p.theta, "invweibull", "theta");
                       require_positive(p.beta, "invweibull", "beta");
                   },
               },
               params_);
}

double MarginalFamily::support_lo() const {
    return std::holds_alternative<Logistic>(params_) ? -kInf : 0.0;
}

double MarginalFamily::support_hi() const {
    if (const auto* u = std::get_if<Uniform>(&params_)) {
        return u->theta;
    }
    return kInf;
}

double MarginalFamily::pdf(double y) const {
    if (std::isnan(y)) {
        return y;
    }
    if (y < support_lo() || y > support_hi()) {
        return 0.0;
    }
    return std::visit(Overloaded{
                          [&](const Exponential& p) { return std::exp(-y / p.theta) / p.theta; },
                          [&](const Logistic&) {
                              const double e = std::exp(-std::abs(y));
                              return e / ((1.0 + e) * (1.0 + e));
                          },
                          [&](const Rayleigh& p) {
                              const double s2 = p.sigma * p.sigma;
                              return y / s2 * std::exp(-0.5 * y * y / s2);
                          },
                          [&](const GeneralizedExponential&) { return std::exp(log_pdf(y)); },
                          [&](const Uniform& p) { return 1.0 / p.theta; },
                          [&](const InverseWeibull&) { return y > 0.0 ? std::exp(log_pdf(y)) : 0.0; },
                      },
                      params_);
}

double MarginalFamily::log_pdf(double y) const {
    if (std::isnan(y)) {
        return y;
    }
    if (y < support_lo() || y > support_hi()) {
        return -kInf;
    }
    return std::visit(Overloaded{
                          [&](const Exponential& p) { return -y / p.theta - std::log(p.theta); },
                          [&](const Logistic&) {
                              const double a = std::abs(y);
                              return -a - 2.0 * std::log1p(std::exp(-a));
                          },
                          [&](const Rayleigh& p) {
                              const double s2 = p.sigma * p.sigma;
                              return std::log(y / s2) - 0.5 * y * y / s2;
                          },
                          [&](const GeneralizedExponential& p) {
                              const double base = std::log(-std::expm1(-p.theta * y));
                              const double tail = p.lambda == 1.0 ? 0.0 : (p.lambda - 1.0) * base;
                              return std::log(p.lambda * p.theta) - p.theta * y + tail;
                          },
                          [&](const Uniform& p) { return -std::log(p.theta); },
                          [&](const InverseWeibull& p) {
                              if (y <= 0.0) {
                                  return -kInf;
                              }
                              const double t = std::pow(p.theta / y, p.beta);
                              if (std::isinf(t)) {
                                  return -kInf;
                              }
                              return std::log(p.beta / p.theta) + std::log(t) * (p.beta + 1.0) / p.beta - t;
                          },
                      },
                      params_);
}

double MarginalFamily::cdf(double y) const {
    if (std::isnan(y)) {
        return y;
    }
    if (y <= support_lo()) {
        return 0.0;
    }
    if (y >= support_hi()) {
        return 1.0;
    }
    return std::visit(Overloaded{
                          [&](const Exponential& p) { return -std::expm1(-y / p.theta); },
                          [&](const Logistic&) { return 1.0 / (1.0 + std::exp(-y)); },
                          [&](const Rayleigh& p) { return -std::expm1(-0.5 * y * y / (p.sigma * p.sigma)); },
                          [&](const GeneralizedExponential& p) {
                              return std::pow(-std::expm1(-p.theta * y), p.lambda);
                          },
                          [&](const Uniform& p) { return y / p.theta; },
                          [&](const InverseWeibull& p) { return std::exp(-std::pow(p.theta / y, p.beta)); },
                      },
                      params_);
}

double MarginalFamily::log_cdf(double y) const {
    if (std::isnan(y)) {
        return y;
    }
    if (y <= support_lo()) {
        return -kInf;
    }
    if (y >= support_hi()) {
        return 0.0;
    }
    return std::visit(Overloaded{
                          [&](const Exponential& p) { return std::log(-std::expm1(-y / p.theta)); },
                          [&](const Logistic&) {
                              return y < 0.0 ? y - std::log1p(std::exp(y)) : -std::log1p(std::exp(-y));
                          },
                          [&](const Rayleigh& p) { return std::log(-std::expm1(-0.5 * y * y / (p.sigma * p.sigma))); },
                          [&](const GeneralizedExponential& p) {
                              return p.lambda * std::log(-std::expm1(-p.theta * y));
                          },
                          [&](const Uniform& p) { return std::log(y / p.theta); },
                          [&](const InverseWeibull& p) { return -std::pow(p.theta / y, p.beta); },
                      },
                      params_);
}

double MarginalFamily::quantile(double u) const {
    if (!(u > 0.0 && u < 1.0)) {
        throw DomainError("quantile: probability must lie in (0, 1)");
    }
    return std::visit(Overloaded{
                          [&](const Exponential& p) { return -p.theta * std::log1p(-u); },
                          [&](const Logistic&) { return std::log(u) - std::log1p(-u); },
                          [&](const Rayleigh& p) { return p.sigma * std::sqrt(-2.0 * std::log1p(-u)); },
                          [&](const GeneralizedExponential& p) {
                              return -std::log1p(-std::pow(u, 1.0 / p.lambda)) / p.theta;
                          },
                          [&](const Uniform& p) { return p.theta * u; },
                          [&](const InverseWeibull& p) { return p.theta * std::pow(-std::log(u), -1.0 / p.beta); },
                      },
                      params_);
}

double shannon_entropy(const MarginalFamily& m) {
    return std::visit(Overloaded{
                          [](const Exponential& p) { return 1.0 + std::log(p.theta); },
                          [](const Logistic&) { return 2.0; },
                          [](const Rayleigh& p) {
                              return 1.0 + 0.5 * kEulerGamma + std::log(p.sigma / std::numbers::sqrt2);
                          },
                          [](const GeneralizedExponential& p) {
                              return -std::log(p.lambda * p.theta) + harmonic_b(p.lambda) + (p.lambda - 1.0) / p.lambda;
                          },
                          [](const Uniform& p) { return std::log(p.theta); },
                          [](const InverseWeibull& p) {
                              return 1.0 + kEulerGamma * (1.0 + 1.0 / p.beta) + std::log(p.theta / p.beta);
                          },
                      },
                      m.params());
}

double shannon_entropy_by_quadrature(const MarginalFamily& m, const QuadratureOptions& opts) {
    const auto integrand = [&m](double y) {
        const double lf = m.log_pdf(y);
        return std::isinf(lf) && lf < 0.0 ? 0.0 : -std::exp(lf) * lf;
    };
    return integrate(integrand, m.support_lo(), m.support_hi(), opts).value;
}

double phi_f(const MarginalFamily& m) {
    constexpr double ln2 = std::numbers::ln2;
    return std::visit(Overloaded{
                          [](const Exponential& p) { return -0.75 - 0.5 * std::log(p.theta); },
                          [](const Logistic&) { return -1.0; },
                          [](const Rayleigh& p) { return 0.5 * ln2 - 0.5 * std::log(p.sigma) - 0.25 * kEulerGamma - 0.75; },
                          [&m](const GeneralizedExponential& p) {
                              // H + 2 phi = -D(lambda) + (lambda - 1) / (2 lambda), D = B(2 lambda) - B(lambda)
                              const double d = harmonic_b(2.0 * p.lambda) - harmonic_b(p.lambda);
                              return 0.5 * (-d + (p.lambda - 1.0) / (2.0 * p.lambda) - shannon_entropy(m));
                          },
                          [](const Uniform& p) { return -0.5 * std::log(p.theta); },
                          [](const InverseWeibull& p) {
                              return 0.5 * std::log(p.beta / p.theta) -
                                     (p.beta + 1.0) / (2.0 * p.beta) * (kEulerGamma + ln2) - 0.25;
                          },
                      },
                      m.params());
}

double phi_f_by_quadrature(const MarginalFamily& m, const QuadratureOptions& opts) {
    const auto integrand = [&m](double u) { return u * m.log_pdf(m.quantile(u)); };
    return integrate(integrand, 0.0, 1.0, opts).value;
}

FunctionalValue cumulative_entropy_by_quadrature(const MarginalFamily& m, const QuadratureOptions& opts) {
    const auto integrand = [&m](double y) {
        const double lF = m.log_cdf(y);
        return std::isinf(lF) ? 0.0 : -std::exp(lF) * lF;
    };
    return ce_quadrature(m, integrand, opts);
}

FunctionalValue cumulative_entropy_max2_by_quadrature(const MarginalFamily& m, const QuadratureOptions& opts) {
    const auto integrand = [&m](double y) {
        const double lF = m.log_cdf(y);
        return std::isinf(lF) ? 0.0 : -2.0 * std::exp(2.0 * lF) * lF;
    };
    return ce_quadrature(m, integrand, opts);
}

FunctionalValue cumulative_entropy_eval(const MarginalFamily& m, const QuadratureOptions& opts) {
    require_finite_ce(m);
    return std::visit(
        Overloaded{
            [](const Exponential& p) { return FunctionalValue{(kPi2Over6 - 1.0) * p.theta}; },
            [](const Logistic&) { return FunctionalValue{kPi2Over6}; },
            [&](const Rayleigh&) { return cumulative_entropy_by_quadrature(m, opts); },
            [](const GeneralizedExponential& p) {
                return FunctionalValue{p.lambda / p.theta * trigamma(p.lambda + 1.0)};
            },
            [](const Uniform& p) { return FunctionalValue{p.theta / 4.0}; },
            [](const InverseWeibull& p) {
                return FunctionalValue{p.theta / p.beta * std::tgamma((p.beta - 1.0) / p.beta)};
            },
        },
        m.params());
}

FunctionalValue cumulative_entropy_max2_eval(const MarginalFamily& m, const QuadratureOptions& opts) {
    require_finite_ce(m);
    return std::visit(
        Overloaded{
            [](const Exponential& p) { return FunctionalValue{2.0 * (kPi2Over6 - 1.25) * p.theta}; },
            [](const Logistic&) { return FunctionalValue{2.0 * (kPi2Over6 - 1.0)}; },
            [&](const Rayleigh&) { return cumulative_entropy_max2_by_quadrature(m, opts); },
            [](const GeneralizedExponential& p) {
                return FunctionalValue{2.0 * p.lambda / p.theta * trigamma(2.0 * p.lambda + 1.0)};
            },
            [](const Uniform& p) { return FunctionalValue{2.0 * p.theta / 9.0}; },
            [](const InverseWeibull& p) {
                return FunctionalValue{2.0 * std::pow(2.0, 1.0 / p.beta - 1.0) * p.theta / p.beta *
                                       std::tgamma((p.beta - 1.0) / p.beta)};
            },
        },
        m.params());
}

}  // namespace cim
