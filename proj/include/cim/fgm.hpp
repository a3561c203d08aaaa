#pragma once

#include "cim/marginals.hpp"
#include "cim/numerics.hpp"

#include <utility>
#include <vector>

namespace cim {

/// Morgenstern (FGM) bivariate law
///   f(x, y) = f_X(x) f_Y(y) [1 + alpha (2 F_X(x) - 1)(2 F_Y(y) - 1)],  |alpha| <= 1.
class FgmModel {
public:
    // Throws DomainError if |alpha| > 1.
    FgmModel(MarginalFamily marginal_x, MarginalFamily marginal_y, double alpha);

    const MarginalFamily& marginal_x() const noexcept { return x_; }
    const MarginalFamily& marginal_y() const noexcept { return y_; }
    double alpha() const noexcept { return alpha_; }

    double joint_pdf(double x, double y) const;
    double joint_cdf(double x, double y) const;

private:
    MarginalFamily x_;
    MarginalFamily y_;
    double alpha_;
};

/// Generalized order statistic index (r, n, m, k). Ordinary order statistics
/// are m = 0, k = 1; upper records are m = -1, k = 1.
class GosParams {
public:
    // Throws DomainError unless 1 <= r <= n, k > 0 and
    // gamma_j = k + (n - j)(m + 1) > 0 for every j in 1..n.
    GosParams(int r, int n, double m, double k);

    static GosParams order_statistic(int r, int n) { return {r, n, 0.0, 1.0}; }
    // Record concomitants do not depend on n; n defaults to r.
    static GosParams record(int r, int n = 0) { return {r, n == 0 ? r : n, -1.0, 1.0}; }

    int r() const noexcept { return r_; }
    int n() const noexcept { return n_; }
    double m() const noexcept { return m_; }
    double k() const noexcept { return k_; }

    bool is_order_statistic() const noexcept { return m_ == 0.0 && k_ == 1.0; }
    bool is_record() const noexcept { return m_ == -1.0 && k_ == 1.0; }

    double gamma(int j) const noexcept { return k_ + (n_ - j) * (m_ + 1.0); }

    friend bool operator==(const GosParams&, const GosParams&) = default;

private:
    int r_;
    int n_;
    double m_;
    double k_;
};

// C*(r, n, m, k) = 2 prod_{j<=r} gamma_j / prod_{j<=r} (gamma_j + 1) - 1, in [-1, 1].
double c_star(const GosParams& p);

// Density and cdf of the concomitant of the r-th GOS:
//   g(y) = f_Y(y) [1 + alpha C* (1 - 2 F_Y(y))],  G(y) = F_Y(y) [1 + alpha C* (1 - F_Y(y))].
double concomitant_pdf(const FgmModel& model, const GosParams& p, double y);
double concomitant_cdf(const FgmModel& model, const GosParams& p, double y);

// Root in [0, 1] of v (1 + a (1 - v)) = u, for |a| <= 1 and u in (0, 1).
double solve_tilted_uniform(double a, double u);

std::pair<double, double> sample_joint(const FgmModel& model, RngStream& stream);

// Only order statistics and records are supported; other (m, k) raise
// UnsupportedConfiguration.
double sample_concomitant(const FgmModel& model, const GosParams& p, RngStream& stream);

/// Association parameters of independent, non-identically associated pairs;
/// each |alpha_i| <= 1 and the list is non-empty.
class HeterogeneousAlphas {
public:
    explicit HeterogeneousAlphas(std::vector<double> alphas);

    const std::vector<double>& values() const noexcept { return alphas_; }
    int n() const noexcept { return static_cast<int>(alphas_.size()); }
    // (n - 1) / ((n + 1) n) * sum alpha_j
    double extremes_coefficient() const;

private:
    std::vector<double> alphas_;
};

enum class Extreme { min, max };

double extremes_pdf(const MarginalFamily& marginal_y, const HeterogeneousAlphas& alphas, Extreme which, double y);

}  // namespace cim
