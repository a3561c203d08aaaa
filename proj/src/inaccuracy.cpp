#include "cim/inaccuracy.hpp"

#include "cim/errors.hpp"

#include <cmath>
#include <numbers>

namespace cim {

std::string_view to_string(Method m) {
    switch (m) {
        case Method::closed_form:
            return "closed_form";
        case Method::quadrature:
            return "quadrature";
        case Method::quantile_form:
            return "quantile_form";
    }
    return "unknown";
}

MeasureResult inaccuracy_gos(const FgmModel& model, const GosParams& p) {
    const double coeff = model.alpha() * c_star(p);
    const auto& fy = model.marginal_y();
    return {(1.0 + coeff) * shannon_entropy(fy) + 2.0 * coeff * phi_f(fy), Method::closed_form, 0.0};
}

MeasureResult inaccuracy_gos_quadrature(const FgmModel& model, const GosParams& p, const QuadratureOptions& opts) {
    const double coeff = model.alpha() * c_star(p);
    const auto& fy = model.marginal_y();
    const auto integrand = [&](double y) {
        const double lf = fy.log_pdf(y);
        if (std::isinf(lf) && lf < 0.0) {
            return 0.0;
        }
        return -std::exp(lf) * (1.0 + coeff * (1.0 - 2.0 * fy.cdf(y))) * lf;
    };
    const auto r = integrate(integrand, fy.support_lo(), fy.support_hi(), opts);
    return {r.value, Method::quadrature, r.abs_error_estimate};
}

double closed_form_inaccuracy(const MarginalFamily& m, double coeff) {
    if (const auto* e = std::get_if<Exponential>(&m.params())) {
        return (1.0 + std::log(e->theta)) - coeff / 2.0;
    }
    if (std::holds_alternative<Logistic>(m.params())) {
        // H = 2 and phi_f = -1, so the coefficient term cancels exactly.
        return 2.0;
    }
    if (const auto* r = std::get_if<Rayleigh>(&m.params())) {
        const double psi1 = -kEulerGamma;
        return coeff * (std::log(std::numbers::sqrt2) - 0.5) + 1.0 - 0.5 * psi1 +
               std::log(r->sigma / std::numbers::sqrt2);
    }
    if (const auto* g = std::get_if<GeneralizedExponential>(&m.params())) {
        const double lambda = g->lambda;
        const auto b = [](double l) { return digamma(l + 1.0) - digamma(1.0); };
        const double d = b(2.0 * lambda) - b(lambda);
        return -std::log(lambda * g->theta) + b(lambda) - coeff * d + (lambda - 1.0) / lambda * (1.0 + coeff / 2.0);
    }
    throw UnsupportedConfiguration("closed_form_inaccuracy: no closed form for this marginal family");
}

MeasureResult reversed_inaccuracy(const FgmModel& model, const GosParams& p, const QuadratureOptions& opts) {
    const double coeff = model.alpha() * c_star(p);
    const double h = shannon_entropy(model.marginal_y());
    if (coeff == 0.0) {
        return {h, Method::quadrature, 0.0};
    }
    const auto integrand = [coeff](double u) { return std::log1p(coeff * (1.0 - 2.0 * u)); };
    const auto r = integrate(integrand, 0.0, 1.0, opts);
    return {h - r.value, Method::quadrature, r.abs_error_estimate};
}

MeasureResult quantile_form_inaccuracy(const FgmModel& model, const GosParams& p, const QuadratureOptions& opts) {
    const double coeff = model.alpha() * c_star(p);
    const auto& fy = model.marginal_y();
    // log q(u) = -log f(Q(u))
    const auto integrand = [&](double u) { return -(1.0 + coeff * (1.0 - 2.0 * u)) * fy.log_pdf(fy.quantile(u)); };
    const auto r = integrate(integrand, 0.0, 1.0, opts);
    return {r.value, Method::quantile_form, r.abs_error_estimate};
}

MeasureResult extremes_inaccuracy(const MarginalFamily& marginal_y, const HeterogeneousAlphas& alphas, Extreme which) {
    const double kappa =
        which == Extreme::min ? alphas.extremes_coefficient() : -alphas.extremes_coefficient();
    return {(1.0 + kappa) * shannon_entropy(marginal_y) + 2.0 * kappa * phi_f(marginal_y), Method::closed_form, 0.0};
}

}  // namespace cim
