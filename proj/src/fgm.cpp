#include "cim/fgm.hpp"

#include "cim/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace cim {

FgmModel::FgmModel(MarginalFamily marginal_x, MarginalFamily marginal_y, double alpha)
    : x_(std::move(marginal_x)), y_(std::move(marginal_y)), alpha_(alpha) {
    if (!(std::abs(alpha) <= 1.0)) {
        throw DomainError("fgm: association parameter alpha must satisfy |alpha| <= 1");
    }
}

double FgmModel::joint_pdf(double x, double y) const {
    const double sx = 2.0 * x_.cdf(x) - 1.0;
    const double sy = 2.0 * y_.cdf(y) - 1.0;
    return x_.pdf(x) * y_.pdf(y) * (1.0 + alpha_ * sx * sy);
}

double FgmModel::joint_cdf(double x, double y) const {
    const double u = x_.cdf(x);
    const double v = y_.cdf(y);
    return u * v * (1.0 + alpha_ * (1.0 - u) * (1.0 - v));
}

GosParams::GosParams(int r, int n, double m, double k) : r_(r), n_(n), m_(m), k_(k) {
    if (r < 1 || n < 1 || r > n) {
        throw DomainError("gos: require 1 <= r <= n (got r=" + std::to_string(r) + ", n=" + std::to_string(n) + ")");
    }
    if (!std::isfinite(m) || !(k > 0.0) || !std::isfinite(k)) {
        throw DomainError("gos: require finite m and k > 0");
    }
    // gamma_j is monotone in j, so checking both ends covers 1..n.
    if (!(gamma(1) > 0.0) || !(gamma(n) > 0.0)) {
        throw DomainError("gos: gamma_j = k + (n - j)(m + 1) must be positive for all j");
    }
}

double c_star(const GosParams& p) {
    double ratio = 1.0;
    for (int j = 1; j <= p.r(); ++j) {
        const double g = p.gamma(j);
        ratio *= g / (g + 1.0);
    }
    return 2.0 * ratio - 1.0;
}

double concomitant_pdf(const FgmModel& model, const GosParams& p, double y) {
    const auto& fy = model.marginal_y();
    const double f = fy.pdf(y);
    if (f == 0.0) {
        return 0.0;
    }
    return f * (1.0 + model.alpha() * c_star(p) * (1.0 - 2.0 * fy.cdf(y)));
}

double concomitant_cdf(const FgmModel& model, const GosParams& p, double y) {
    const double F = model.marginal_y().cdf(y);
    return F * (1.0 + model.alpha() * c_star(p) * (1.0 - F));
}

double solve_tilted_uniform(double a, double u) {
    if (u == 0.0) {
        return 0.0;
    }
    // Rationalized form of [(1 + a) - sqrt((1 + a)^2 - 4 a u)] / (2 a); avoids
    // cancellation for small |a|.
    const double b = 1.0 + a;
    const double disc = std::max(0.0, b * b - 4.0 * a * u);
    return 2.0 * u / (b + std::sqrt(disc));
}

std::pair<double, double> sample_joint(const FgmModel& model, RngStream& stream) {
    const double u = stream.uniform01();
    const double w = stream.uniform01();
    const double v = solve_tilted_uniform(model.alpha() * (1.0 - 2.0 * u), w);
    const double x = model.marginal_x().quantile(u);
    // v can round to exactly 0 or 1 only in pathological double corners.
    const double vc = std::clamp(v, 0x1.0p-60, 1.0 - 0x1.0p-53);
    return {x, model.marginal_y().quantile(vc)};
}

double sample_concomitant(const FgmModel& model, const GosParams& p, RngStream& stream) {
    if (!p.is_order_statistic() && !p.is_record()) {
        throw UnsupportedConfiguration("sample_concomitant: only order statistics (m=0,k=1) and records (m=-1,k=1)");
    }
    const double v = solve_tilted_uniform(model.alpha() * c_star(p), stream.uniform01());
    return model.marginal_y().quantile(std::clamp(v, 0x1.0p-60, 1.0 - 0x1.0p-53));
}

HeterogeneousAlphas::HeterogeneousAlphas(std::vector<double> alphas) : alphas_(std::move(alphas)) {
    if (alphas_.empty()) {
        throw DomainError("heterogeneous alphas: list must not be empty");
    }
    for (double a : alphas_) {
        if (!(std::abs(a) <= 1.0)) {
            throw DomainError("heterogeneous alphas: every alpha_i must satisfy |alpha_i| <= 1");
        }
    }
}

double HeterogeneousAlphas::extremes_coefficient() const {
    const double n = static_cast<double>(alphas_.size());
    const double sum = std::accumulate(alphas_.begin(), alphas_.end(), 0.0);
    return (n - 1.0) / ((n + 1.0) * n) * sum;
}

double extremes_pdf(const MarginalFamily& marginal_y, const HeterogeneousAlphas& alphas, Extreme which, double y) {
    const double f = marginal_y.pdf(y);
    if (f == 0.0) {
        return 0.0;
    }
    const double coeff = which == Extreme::min ? alphas.extremes_coefficient() : -alphas.extremes_coefficient();
    return f * (1.0 + coeff * (1.0 - 2.0 * marginal_y.cdf(y)));
}

}  // namespace cim
