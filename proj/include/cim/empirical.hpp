#pragma once

#include "cim/fgm.hpp"
#include "cim/marginals.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace cim {

/// An observed Y-sample, held in ascending order. Ties are allowed and give
/// zero spacings.
class Sample {
public:
    // Throws DomainError for fewer than two values or non-finite entries.
    explicit Sample(std::vector<double> values);

    std::size_t size() const noexcept { return sorted_.size(); }
    const std::vector<double>& sorted() const noexcept { return sorted_; }
    // U_j = Z_(j+1) - Z_(j), j = 1..n-1 (stored at index j - 1).
    std::vector<double> spacings() const;

private:
    std::vector<double> sorted_;
};

// sum_j U_j (j/n)(-log(j/n))
double empirical_ce(const Sample& sample);
// sum_j U_j (j/n)^2 (-2 log(j/n))
double empirical_ce_max2(const Sample& sample);

// sum_{j=1}^{n-1} U_j (j/n)(-log(j/n)) [1 + alpha C* (1 - j/n)]
double empirical_cpi(const Sample& sample, double alpha, const GosParams& p);
double empirical_cpi_record(const Sample& sample, double alpha, int r);

struct SpacingMoments {
    double mean = 0.0;
    double variance = 0.0;
};

// Exact moments of the estimator with weight coefficient `coeff` (= alpha C*)
// when the spacings are independent exponentials with means 1 / (rate (n - j)).
SpacingMoments moments_exponential_spacings(int n, double rate, double coeff);

// Moments with every spacing Beta(1, n) and the spacings treated as independent.
SpacingMoments moments_uniform_spacings(int n, double coeff);

// Record concomitant, generalized exponential marginal with lambda = 1 and rate theta2.
SpacingMoments moments_mtbged(int n, double theta2, double alpha, int r);

// Record concomitant, uniform (0, 1) marginal.
SpacingMoments moments_mtbud(int n, double alpha, int r);

// (value - mean) / sqrt(variance); DomainError unless variance > 0.
double clt_zscore(double value, double mean, double variance);

// Lyapunov ratio (sum E|W_j - EW_j|^3)^(1/3) / (sum Var W_j)^(1/2) of the
// record estimator's summands under exponential spacings (lambda = 1).
double lyapunov_ratio(int n, double theta2, double alpha, int r);

struct EmpiricalStudy {
    Sample sample;
    GosParams config;
    double alpha = 0.0;
    double value = 0.0;
    std::optional<double> theoretical_mean;
    std::optional<double> theoretical_variance;
    std::optional<double> z_score;
};

EmpiricalStudy make_study(Sample sample, const GosParams& config, double alpha,
                          std::optional<SpacingMoments> theory = std::nullopt);

// Exact estimator moments for this Y-marginal if a closed form exists:
// exponential / generalized exponential with lambda = 1 (independent
// exponential spacings) and uniform (0, theta).
std::optional<SpacingMoments> theoretical_moments(const MarginalFamily& marginal_y, int n, double coeff);

struct McConfig {
    MarginalFamily marginal_y;
    GosParams gos;
    double alpha = 0.0;
    int n = 10;
    int replicates = 1000;
    std::uint64_t seed = 0;
    // 0 = hardware concurrency. The result does not depend on this value.
    int workers = 0;
};

struct McReport {
    int n = 0;
    int replicates = 0;
    double empirical_mean = 0.0;
    double empirical_variance = 0.0;
    std::optional<double> theoretical_mean;
    std::optional<double> theoretical_variance;
    double analytic_cpi = 0.0;
    // empirical_mean - analytic_cpi
    double bias = 0.0;
    // Standardized estimates use the theoretical moments when available,
    // otherwise the empirical ones.
    bool standardized_with_theory = false;
    double ks_statistic = 0.0;
    double ks_critical_1pct = 0.0;
    std::vector<double> estimates;
};

// Draws `replicates` Y-samples of size n (replicate i uses stream (seed, i)),
// evaluates the empirical CPI on each and summarizes. Requires replicates >= 100.
McReport mc_validate(const McConfig& config);

struct ConsistencyPoint {
    int n = 0;
    double estimate = 0.0;
    double analytic = 0.0;
    double gap = 0.0;
};

// One realization of an i.i.d. Y-sequence from stream (seed, 0); the estimate
// at each size uses the first n draws.
std::vector<ConsistencyPoint> consistency_sweep(const MarginalFamily& marginal_y, const GosParams& gos, double alpha,
                                                std::span<const int> sizes, std::uint64_t seed);

}  // namespace cim
