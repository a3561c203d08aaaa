#include "cim/cpi.hpp"

#include "cim/errors.hpp"

#include <cmath>
#include <numbers>

namespace cim {

MeasureResult cpi_gos(const FgmModel& model, const GosParams& p, const QuadratureOptions& opts) {
    const double coeff = model.alpha() * c_star(p);
    const auto ce = cumulative_entropy_eval(model.marginal_y(), opts);
    const auto ce2 = cumulative_entropy_max2_eval(model.marginal_y(), opts);
    const double value = (1.0 + coeff) * ce.value - 0.5 * coeff * ce2.value;
    if (ce.closed_form && ce2.closed_form) {
        return {value, Method::closed_form, 0.0};
    }
    const double err = std::abs(1.0 + coeff) * ce.abs_error + 0.5 * std::abs(coeff) * ce2.abs_error;
    return {value, Method::quadrature, err};
}

MeasureResult cpi_gos_quadrature(const FgmModel& model, const GosParams& p, const QuadratureOptions& opts) {
    const double coeff = model.alpha() * c_star(p);
    const auto& fy = model.marginal_y();
    const auto integrand = [&](double y) {
        const double lF = fy.log_cdf(y);
        if (std::isinf(lF)) {
            return 0.0;
        }
        const double F = std::exp(lF);
        return -F * (1.0 + coeff * (1.0 - F)) * lF;
    };
    const auto r = integrate(integrand, fy.support_lo(), fy.support_hi(), opts);
    return {r.value, Method::quadrature, r.abs_error_estimate};
}

double closed_form_cpi(const MarginalFamily& m, double coeff) {
    if (const auto* u = std::get_if<Uniform>(&m.params())) {
        return u->theta / 4.0 + coeff * 5.0 * u->theta / 36.0;
    }
    if (const auto* e = std::get_if<Exponential>(&m.params())) {
        return (std::numbers::pi * std::numbers::pi / 6.0 - 1.0) * e->theta + coeff * e->theta / 4.0;
    }
    if (const auto* w = std::get_if<InverseWeibull>(&m.params())) {
        if (w->beta <= 1.0) {
            throw DomainError("closed_form_cpi: inverse Weibull requires beta > 1");
        }
        const double ce = w->theta / w->beta * std::tgamma((w->beta - 1.0) / w->beta);
        return ce * (1.0 + coeff * (1.0 - std::pow(2.0, 1.0 / w->beta - 1.0)));
    }
    throw UnsupportedConfiguration("closed_form_cpi: no closed form for this marginal family");
}

MeasureResult reversed_cpi(const FgmModel& model, const GosParams& p, const QuadratureOptions& opts) {
    const double coeff = model.alpha() * c_star(p);
    const auto ce = cumulative_entropy_eval(model.marginal_y(), opts);
    if (coeff == 0.0) {
        return {ce.value, Method::quadrature, ce.abs_error};
    }
    const auto& fy = model.marginal_y();
    const auto integrand = [&](double u) {
        return u * std::log1p(coeff * (1.0 - u)) * std::exp(-fy.log_pdf(fy.quantile(u)));
    };
    const auto r = integrate(integrand, 0.0, 1.0, opts);
    return {ce.value - r.value, Method::quadrature, r.abs_error_estimate + ce.abs_error};
}

std::string_view to_string(CpiBound b) {
    switch (b) {
        case CpiBound::below_ce:
            return "below_CE";
        case CpiBound::above_ce:
            return "above_CE";
        case CpiBound::equal:
            return "equal";
    }
    return "unknown";
}

CpiBound check_cpi_bounds(const FgmModel& model, const GosParams& p) {
    if (p.is_order_statistic()) {
        if (2 * p.r() > p.n() + 1) {
            throw DomainError("check_cpi_bounds: order statistics require 1 <= r <= (n + 1) / 2");
        }
    } else if (!p.is_record()) {
        throw DomainError("check_cpi_bounds: defined for order statistics and records only");
    }
    const double cpi = cpi_gos(model, p).value;
    const double ce = cumulative_entropy(model.marginal_y());
    const double diff = cpi - ce;
    if (std::abs(diff) <= 1e-14 * std::abs(ce)) {
        return CpiBound::equal;
    }
    return diff < 0.0 ? CpiBound::below_ce : CpiBound::above_ce;
}

}  // namespace cim
