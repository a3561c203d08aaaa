#include "cim/empirical.hpp"

#include "cim/cpi.hpp"
#include "cim/errors.hpp"
#include "cim/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <numbers>
#include <thread>

namespace cim {

namespace {

// (j/n)(-log(j/n)) for the j-th spacing.
double spacing_weight(int j, int n) {
    const double x = static_cast<double>(j) / n;
    return -x * std::log(x);
}

double record_coefficient(double alpha, int r) {
    if (r < 1) {
        throw DomainError("record index r must be at least 1");
    }
    return alpha * (std::pow(2.0, 1 - r) - 1.0);
}

void require_alpha(double alpha) {
    if (!(std::abs(alpha) <= 1.0)) {
        throw DomainError("alpha must satisfy |alpha| <= 1");
    }
}

double estimate(const Sample& sample, double coeff) {
    const int n = static_cast<int>(sample.size());
    const auto& z = sample.sorted();
    double sum = 0.0;
    for (int j = 1; j < n; ++j) {
        const double u = z[j] - z[j - 1];
        sum += u * spacing_weight(j, n) * (1.0 + coeff * (1.0 - static_cast<double>(j) / n));
    }
    return sum;
}

// Estimator weights c_j so that the estimate is sum_j c_j U_j.
std::vector<double> estimator_weights(int n, double coeff) {
    std::vector<double> w(n - 1);
    for (int j = 1; j < n; ++j) {
        w[j - 1] = spacing_weight(j, n) * (1.0 + coeff * (1.0 - static_cast<double>(j) / n));
    }
    return w;
}

}  // namespace

Sample::Sample(std::vector<double> values) : sorted_(std::move(values)) {
    if (sorted_.size() < 2) {
        throw DomainError("sample: need at least two observations");
    }
    if (!std::all_of(sorted_.begin(), sorted_.end(), [](double v) { return std::isfinite(v); })) {
        throw DomainError("sample: observations must be finite");
    }
    std::sort(sorted_.begin(), sorted_.end());
}

std::vector<double> Sample::spacings() const {
    std::vector<double> u(sorted_.size() - 1);
    for (std::size_t j = 1; j < sorted_.size(); ++j) {
        u[j - 1] = sorted_[j] - sorted_[j - 1];
    }
    return u;
}

double empirical_ce(const Sample& sample) { return estimate(sample, 0.0); }

double empirical_ce_max2(const Sample& sample) {
    const int n = static_cast<int>(sample.size());
    const auto& z = sample.sorted();
    double sum = 0.0;
    for (int j = 1; j < n; ++j) {
        const double x = static_cast<double>(j) / n;
        sum += (z[j] - z[j - 1]) * x * x * (-2.0 * std::log(x));
    }
    return sum;
}

double empirical_cpi(const Sample& sample, double alpha, const GosParams& p) {
    require_alpha(alpha);
    return estimate(sample, alpha * c_star(p));
}

double empirical_cpi_record(const Sample& sample, double alpha, int r) {
    require_alpha(alpha);
    return estimate(sample, record_coefficient(alpha, r));
}

SpacingMoments moments_exponential_spacings(int n, double rate, double coeff) {
    if (n < 2) {
        throw DomainError("moments: n must be at least 2");
    }
    if (!(rate > 0.0) || !std::isfinite(rate)) {
        throw DomainError("moments: theta2 must be positive");
    }
    const auto w = estimator_weights(n, coeff);
    SpacingMoments m;
    for (int j = 1; j < n; ++j) {
        // U_j ~ Exp with mean 1 / (rate (n - j))
        const double mu = w[j - 1] / (rate * (n - j));
        m.mean += mu;
        m.variance += mu * mu;
    }
    return m;
}

SpacingMoments moments_uniform_spacings(int n, double coeff) {
    if (n < 2) {
        throw DomainError("moments: n must be at least 2");
    }
    const auto w = estimator_weights(n, coeff);
    const double nn = n;
    SpacingMoments m;
    for (double c : w) {
        m.mean += c;
        m.variance += c * c;
    }
    m.mean /= nn + 1.0;
    m.variance *= nn / ((nn + 1.0) * (nn + 1.0) * (nn + 2.0));
    return m;
}

SpacingMoments moments_mtbged(int n, double theta2, double alpha, int r) {
    require_alpha(alpha);
    return moments_exponential_spacings(n, theta2, record_coefficient(alpha, r));
}

SpacingMoments moments_mtbud(int n, double alpha, int r) {
    require_alpha(alpha);
    return moments_uniform_spacings(n, record_coefficient(alpha, r));
}

double clt_zscore(double value, double mean, double variance) {
    if (!(variance > 0.0)) {
        throw DomainError("clt_zscore: variance must be positive");
    }
    return (value - mean) / std::sqrt(variance);
}

double lyapunov_ratio(int n, double theta2, double alpha, int r) {
    require_alpha(alpha);
    if (n < 2) {
        throw DomainError("lyapunov_ratio: n must be at least 2");
    }
    if (!(theta2 > 0.0)) {
        throw DomainError("lyapunov_ratio: theta2 must be positive");
    }
    // Third absolute central moment of an exponential with mean mu: 2 (6 - e) / e * mu^3.
    constexpr double third = 2.0 * (6.0 - std::numbers::e) / std::numbers::e;
    const double coeff = record_coefficient(alpha, r);
    const auto w = estimator_weights(n, coeff);
    double s2 = 0.0;
    double s3 = 0.0;
    for (int j = 1; j < n; ++j) {
        const double mu = w[j - 1] / (theta2 * (n - j));
        s2 += mu * mu;
        s3 += third * mu * mu * mu;
    }
    return std::cbrt(s3) / std::sqrt(s2);
}

EmpiricalStudy make_study(Sample sample, const GosParams& config, double alpha, std::optional<SpacingMoments> theory) {
    const double value = empirical_cpi(sample, alpha, config);
    EmpiricalStudy study{std::move(sample), config, alpha, value, std::nullopt, std::nullopt, std::nullopt};
    if (theory) {
        study.theoretical_mean = theory->mean;
        study.theoretical_variance = theory->variance;
        if (theory->variance > 0.0) {
            study.z_score = clt_zscore(value, theory->mean, theory->variance);
        }
    }
    return study;
}

std::optional<SpacingMoments> theoretical_moments(const MarginalFamily& marginal_y, int n, double coeff) {
    if (const auto* e = std::get_if<Exponential>(&marginal_y.params())) {
        return moments_exponential_spacings(n, 1.0 / e->theta, coeff);
    }
    if (const auto* g = std::get_if<GeneralizedExponential>(&marginal_y.params()); g && g->lambda == 1.0) {
        return moments_exponential_spacings(n, g->theta, coeff);
    }
    if (const auto* u = std::get_if<Uniform>(&marginal_y.params())) {
        auto m = moments_uniform_spacings(n, coeff);
        m.mean *= u->theta;
        m.variance *= u->theta * u->theta;
        return m;
    }
    return std::nullopt;
}

McReport mc_validate(const McConfig& config) {
    if (config.replicates < 100) {
        throw DomainError("mc_validate: replicates must be at least 100");
    }
    if (config.n < 2) {
        throw DomainError("mc_validate: n must be at least 2");
    }
    require_alpha(config.alpha);

    const double coeff = config.alpha * c_star(config.gos);
    const int reps = config.replicates;
    std::vector<double> estimates(reps);

    const auto run_range = [&](int begin, int end) {
        std::vector<double> draws(config.n);
        for (int i = begin; i < end; ++i) {
            RngStream stream(config.seed, static_cast<std::uint64_t>(i));
            for (auto& d : draws) {
                d = config.marginal_y.quantile(stream.uniform01());
            }
            estimates[i] = estimate(Sample(draws), coeff);
        }
    };

    int workers = config.workers > 0 ? config.workers : static_cast<int>(std::thread::hardware_concurrency());
    workers = std::clamp(workers, 1, reps);
    if (workers == 1) {
        run_range(0, reps);
    } else {
        std::vector<std::exception_ptr> errors(workers);
        {
            std::vector<std::jthread> pool;
            const int chunk = (reps + workers - 1) / workers;
            for (int w = 0; w < workers; ++w) {
                const int begin = w * chunk;
                const int end = std::min(reps, begin + chunk);
                pool.emplace_back([&, w, begin, end] {
                    try {
                        run_range(begin, end);
                    } catch (...) {
                        errors[w] = std::current_exception();
                    }
                });
            }
        }
        for (const auto& e : errors) {
            if (e) {
                std::rethrow_exception(e);
            }
        }
    }

    McReport report;
    report.n = config.n;
    report.replicates = reps;
    double sum = 0.0;
    for (double e : estimates) {
        sum += e;
    }
    report.empirical_mean = sum / reps;
    double ss = 0.0;
    for (double e : estimates) {
        ss += (e - report.empirical_mean) * (e - report.empirical_mean);
    }
    report.empirical_variance = ss / (reps - 1);

    const FgmModel model(config.marginal_y, config.marginal_y, config.alpha);
    report.analytic_cpi = cpi_gos(model, config.gos).value;
    report.bias = report.empirical_mean - report.analytic_cpi;

    double mean = report.empirical_mean;
    double var = report.empirical_variance;
    if (const auto theory = theoretical_moments(config.marginal_y, config.n, coeff)) {
        report.theoretical_mean = theory->mean;
        report.theoretical_variance = theory->variance;
        report.standardized_with_theory = true;
        mean = theory->mean;
        var = theory->variance;
    }
    std::vector<double> z(reps);
    if (var > 0.0) {
        for (int i = 0; i < reps; ++i) {
            z[i] = clt_zscore(estimates[i], mean, var);
        }
        report.ks_statistic = ks_statistic(z, standard_normal_cdf);
    } else {
        report.ks_statistic = 1.0;
    }
    report.ks_critical_1pct = ks_critical_value_1pct(reps);
    report.estimates = std::move(estimates);
    return report;
}

std::vector<ConsistencyPoint> consistency_sweep(const MarginalFamily& marginal_y, const GosParams& gos, double alpha,
                                                std::span<const int> sizes, std::uint64_t seed) {
    require_alpha(alpha);
    if (sizes.empty()) {
        return {};
    }
    const int largest = *std::max_element(sizes.begin(), sizes.end());
    if (*std::min_element(sizes.begin(), sizes.end()) < 2) {
        throw DomainError("consistency_sweep: sample sizes must be at least 2");
    }
    RngStream stream(seed, 0);
    std::vector<double> draws(largest);
    for (auto& d : draws) {
        d = marginal_y.quantile(stream.uniform01());
    }
    const FgmModel model(marginal_y, marginal_y, alpha);
    const double analytic = cpi_gos(model, gos).value;
    const double coeff = alpha * c_star(gos);

    std::vector<ConsistencyPoint> out;
    out.reserve(sizes.size());
    for (int n : sizes) {
        const Sample s(std::vector<double>(draws.begin(), draws.begin() + n));
        const double est = estimate(s, coeff);
        out.push_back({n, est, analytic, std::abs(est - analytic)});
    }
    return out;
}

}  // namespace cim
