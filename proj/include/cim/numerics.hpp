#pragma once

#include <cstdint>
#include <functional>
#include <random>
#include <span>
#include <vector>

namespace cim {

struct QuadratureResult {
    double value = 0.0;
    double abs_error_estimate = 0.0;
    int evaluations = 0;
};

struct QuadratureOptions {
    double rel_tol = 1e-10;
    double abs_tol = 1e-12;
    // Upper bound on the number of subintervals kept by the adaptive scheme.
    int max_intervals = 4000;
};

using Integrand = std::function<double(double)>;

// Adaptive 7/15-point Gauss-Kronrod quadrature over [lo, hi]. Either limit may
// be infinite: [lo, +inf) uses y = lo + t/(1-t), (-inf, hi] the mirror image and
// (-inf, +inf) y = t/(1-t^2). Nodes never touch the interval endpoints, so
// integrands with log-type endpoint singularities are admissible.
//
// Throws IntegrationError (carrying the best estimate) when the budget is
// exhausted and NanIntegrand when f returns NaN.
QuadratureResult integrate(const Integrand& f, double lo, double hi, const QuadratureOptions& opts = {});

// Digamma psi(x) for x > 0.
double digamma(double x);

// Trigamma psi'(x) for x > 0.
double trigamma(double x);

inline constexpr double kEulerGamma = 0.57721566490153286060651209008240243;

/// Seedable uniform stream. Identical (seed, stream_id) pairs yield identical
/// sequences; distinct stream ids give unrelated sequences for the same seed.
/// A stream must not be shared between threads.
class RngStream {
public:
    RngStream(std::uint64_t seed, std::uint64_t stream_id);

    std::uint64_t seed() const noexcept { return seed_; }
    std::uint64_t stream_id() const noexcept { return stream_id_; }

    // Uniform on the open interval (0, 1).
    double uniform01();

private:
    std::uint64_t seed_;
    std::uint64_t stream_id_;
    std::mt19937_64 engine_;
};

inline double uniform01(RngStream& stream) { return stream.uniform01(); }

double standard_normal_cdf(double z);

// One-sample Kolmogorov-Smirnov statistic sup |F_n - F|.
double ks_statistic(std::span<const double> sample, const std::function<double(double)>& cdf);

// Asymptotic 1% critical value of the one-sample KS statistic, 1.63 / sqrt(n).
double ks_critical_value_1pct(std::size_t n);

}  // namespace cim
