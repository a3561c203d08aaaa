#include "cim/errors.hpp"
#include "cim/marginals.hpp"

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/sinh_sinh.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>
#include <boost/math/special_functions/gamma.hpp>
#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <vector>

using namespace cim;

namespace {

constexpr double kPi2over6 = std::numbers::pi * std::numbers::pi / 6.0;

std::vector<MarginalFamily> sample_families() {
    return {MarginalFamily(Exponential{0.7}),
            MarginalFamily(Logistic{}),
            MarginalFamily(Rayleigh{1.8}),
            MarginalFamily(GeneralizedExponential{1.4, 0.6}),
            MarginalFamily(GeneralizedExponential{0.5, 2.5}),
            MarginalFamily(Uniform{3.0}),
            MarginalFamily(InverseWeibull{2.0, 2.5})};
}

// 100 parameter sets spread over every family.
std::vector<MarginalFamily> parameter_grid() {
    std::vector<MarginalFamily> out;
    out.emplace_back(Logistic{});
    for (int i = 0; i < 20; ++i) {
        const double s = 0.3 + 0.25 * i;
        out.emplace_back(Exponential{s});
        out.emplace_back(Rayleigh{s});
        out.emplace_back(Uniform{s});
        out.emplace_back(GeneralizedExponential{s, 0.4 + 0.3 * (i % 7)});
        out.emplace_back(InverseWeibull{s, 1.3 + 0.4 * (i % 5)});
    }
    out.pop_back();
    return out;
}

// Independent oracle: Boost double-exponential quadrature on the natural support.
double boost_integral(const MarginalFamily& m, const std::function<double(double)>& f) {
    const double lo = m.support_lo();
    const double hi = m.support_hi();
    if (std::isinf(lo) && std::isinf(hi)) {
        return boost::math::quadrature::sinh_sinh<double>().integrate(f);
    }
    if (std::isinf(hi)) {
        return boost::math::quadrature::exp_sinh<double>().integrate([&](double y) { return f(lo + y); });
    }
    return boost::math::quadrature::tanh_sinh<double>().integrate(f, lo, hi);
}

double rel(double a, double b) { return std::abs(a - b) / std::max(1.0, std::abs(b)); }

TEST(Marginals, RejectsInvalidParameters) {
    EXPECT_THROW(MarginalFamily(Exponential{0.0}), DomainError);
    EXPECT_THROW(MarginalFamily(Rayleigh{-1.0}), DomainError);
    EXPECT_THROW(MarginalFamily(GeneralizedExponential{1.0, 0.0}), DomainError);
    EXPECT_THROW(MarginalFamily(Uniform{std::nan("")}), DomainError);
    EXPECT_THROW(MarginalFamily(InverseWeibull{1.0, -2.0}), DomainError);
}

TEST(Marginals, PdfExamples) {
    EXPECT_DOUBLE_EQ(MarginalFamily(Exponential{1.0}).pdf(0.0), 1.0);
    EXPECT_DOUBLE_EQ(MarginalFamily(Uniform{2.0}).pdf(1.0), 0.5);
    EXPECT_NEAR(MarginalFamily(Rayleigh{1.0}).pdf(1.0), std::exp(-0.5), 1e-15);
    EXPECT_EQ(MarginalFamily(Uniform{2.0}).pdf(3.0), 0.0);
    EXPECT_EQ(MarginalFamily(Exponential{1.0}).pdf(-1.0), 0.0);
}

TEST(Marginals, CdfExamples) {
    EXPECT_NEAR(MarginalFamily(Exponential{1.0}).cdf(std::log(2.0)), 0.5, 1e-15);
    EXPECT_DOUBLE_EQ(MarginalFamily(Logistic{}).cdf(0.0), 0.5);
    EXPECT_NEAR(MarginalFamily(InverseWeibull{1.0, 2.0}).cdf(1.0), std::exp(-1.0), 1e-15);
}

TEST(Marginals, QuantileExamples) {
    EXPECT_NEAR(MarginalFamily(Uniform{3.0}).quantile(0.2), 0.6, 1e-15);
    EXPECT_NEAR(MarginalFamily(Exponential{2.5}).quantile(1.0 - std::exp(-1.0)), 2.5, 1e-14);
    EXPECT_NEAR(MarginalFamily(Logistic{}).quantile(0.5), 0.0, 1e-15);
    for (double u : {0.0, 1.0, -0.1, 1.5}) {
        EXPECT_THROW(MarginalFamily(Exponential{1.0}).quantile(u), DomainError);
    }
}

TEST(Marginals, QuantileCdfRoundTrips) {
    for (const auto& m : parameter_grid()) {
        for (int i = 1; i < 100; ++i) {
            const double u = i / 100.0;
            EXPECT_NEAR(m.cdf(m.quantile(u)), u, 1e-10);
            const double y = m.quantile(u);
            EXPECT_NEAR(m.quantile(m.cdf(y)), y, 1e-8 * std::max(1.0, std::abs(y)));
        }
    }
}

TEST(Marginals, PdfIsDerivativeOfCdf) {
    for (const auto& m : sample_families()) {
        for (int i = 2; i < 98; i += 5) {
            const double y = m.quantile(i / 100.0);
            const double h = 1e-3 * (y != 0.0 ? std::abs(y) : 1.0);
            const double fd =
                (m.cdf(y - 2 * h) - 8 * m.cdf(y - h) + 8 * m.cdf(y + h) - m.cdf(y + 2 * h)) / (12 * h);
            EXPECT_NEAR(fd, m.pdf(y), 1e-6 * std::max(1.0, m.pdf(y)));
        }
    }
}

TEST(Marginals, CdfMonotoneWithLimits) {
    for (const auto& m : sample_families()) {
        double prev = 0.0;
        for (int i = 1; i < 200; ++i) {
            const double y = m.quantile(i / 200.0);
            const double f = m.cdf(y);
            EXPECT_GE(f, prev);
            prev = f;
        }
        EXPECT_NEAR(m.cdf(m.quantile(1e-12)), 0.0, 1e-11);
        EXPECT_NEAR(m.cdf(m.quantile(1 - 1e-12)), 1.0, 1e-11);
        EXPECT_NEAR(boost_integral(m, [&](double y) { return m.pdf(y); }), 1.0, 1e-8);
    }
}

TEST(Marginals, LogCdfMatchesCdf) {
    for (const auto& m : sample_families()) {
        for (int i = 1; i < 100; ++i) {
            const double y = m.quantile(i / 100.0);
            EXPECT_NEAR(m.log_cdf(y), std::log(m.cdf(y)), 1e-12);
            EXPECT_NEAR(m.log_pdf(y), std::log(m.pdf(y)), 1e-12 * std::max(1.0, std::abs(m.log_pdf(y))));
        }
    }
}

TEST(Entropy, AnalyticValues) {
    EXPECT_NEAR(shannon_entropy(MarginalFamily(Exponential{1.0})), 1.0, 1e-15);
    EXPECT_NEAR(shannon_entropy(MarginalFamily(Exponential{3.0})), 1.0 + std::log(3.0), 1e-14);
    EXPECT_NEAR(shannon_entropy(MarginalFamily(Uniform{1.0})), 0.0, 1e-15);
    // Standard logistic entropy is 2.
    EXPECT_NEAR(shannon_entropy(MarginalFamily(Logistic{})), 2.0, 1e-15);
    EXPECT_NEAR(shannon_entropy(MarginalFamily(Rayleigh{1.0})), 1.0 + kEulerGamma / 2 - std::log(std::sqrt(2.0)),
                1e-14);
}

TEST(Entropy, GeneralizedExponentialAtLambdaOneIsExponential) {
    for (double rate : {0.5, 1.0, 2.0}) {
        const MarginalFamily ge(GeneralizedExponential{rate, 1.0});
        const MarginalFamily ex(Exponential{1.0 / rate});
        EXPECT_NEAR(shannon_entropy(ge), shannon_entropy(ex), 1e-14);
        EXPECT_NEAR(phi_f(ge), phi_f(ex), 1e-14);
        EXPECT_NEAR(cumulative_entropy(ge), cumulative_entropy(ex), 1e-14);
        EXPECT_NEAR(cumulative_entropy_max2(ge), cumulative_entropy_max2(ex), 1e-14);
    }
}

TEST(PhiF, AnalyticValues) {
    EXPECT_NEAR(phi_f(MarginalFamily(Uniform{1.0})), 0.0, 1e-15);
    EXPECT_NEAR(phi_f(MarginalFamily(Exponential{1.0})), -0.75, 1e-15);
    // f(Q(u)) = u(1-u): int u log u + int u log(1-u) = -1/4 - 3/4.
    EXPECT_NEAR(phi_f(MarginalFamily(Logistic{})), -1.0, 1e-15);
}

TEST(CumulativeEntropy, AnalyticValues) {
    EXPECT_NEAR(cumulative_entropy(MarginalFamily(Uniform{2.0})), 0.5, 1e-15);
    EXPECT_NEAR(cumulative_entropy(MarginalFamily(Exponential{2.0})), 2.0 * (kPi2over6 - 1.0), 1e-14);
    EXPECT_NEAR(cumulative_entropy(MarginalFamily(InverseWeibull{3.0, 2.0})), 1.5 * std::sqrt(std::numbers::pi),
                1e-14);
    EXPECT_NEAR(cumulative_entropy_max2(MarginalFamily(Uniform{2.0})), 4.0 / 9.0, 1e-15);
    EXPECT_NEAR(cumulative_entropy_max2(MarginalFamily(Exponential{2.0})), 4.0 * (kPi2over6 - 1.25), 1e-14);
    const double b = 3.0, t = 1.5;
    EXPECT_NEAR(cumulative_entropy_max2(MarginalFamily(InverseWeibull{t, b})),
                2.0 * std::pow(2.0, 1.0 / b - 1.0) * (t / b) * boost::math::tgamma((b - 1.0) / b), 1e-13);
}

TEST(CumulativeEntropy, ClosedFormsFlaggedAsSuch) {
    EXPECT_TRUE(cumulative_entropy_eval(MarginalFamily(Exponential{1.0})).closed_form);
    const auto ray = cumulative_entropy_eval(MarginalFamily(Rayleigh{1.0}));
    EXPECT_FALSE(ray.closed_form);
    EXPECT_GT(ray.abs_error, 0.0);
}

TEST(CumulativeEntropy, InverseWeibullNeedsBetaAboveOne) {
    EXPECT_THROW(cumulative_entropy(MarginalFamily(InverseWeibull{1.0, 1.0})), DomainError);
    EXPECT_THROW(cumulative_entropy_max2(MarginalFamily(InverseWeibull{1.0, 0.5})), DomainError);
}

TEST(CumulativeEntropy, DivergenceIsDetected) {
    EXPECT_THROW(cumulative_entropy_by_quadrature(MarginalFamily(InverseWeibull{1.0, 0.8})), DivergentIntegral);
}

TEST(CumulativeEntropy, ScaleEquivariance) {
    for (double c : {0.5, 2.0, 7.0}) {
        EXPECT_EQ(cumulative_entropy(MarginalFamily(Uniform{c * 1.3})), c * cumulative_entropy(MarginalFamily(Uniform{1.3})));
        EXPECT_NEAR(cumulative_entropy(MarginalFamily(Rayleigh{c})), c * cumulative_entropy(MarginalFamily(Rayleigh{1.0})),
                    1e-9 * c);
    }
}

// Every analytic functional against an independent quadrature, on a 100-point grid.
TEST(Functionals, AgreeWithIndependentQuadrature) {
    const auto grid = parameter_grid();
    ASSERT_EQ(grid.size(), 100u);
    for (const auto& m : grid) {
        const double h = boost_integral(m, [&](double y) {
            const double f = m.pdf(y);
            return f > 0 ? -f * m.log_pdf(y) : 0.0;
        });
        EXPECT_LT(rel(shannon_entropy(m), h), 1e-8);
        const double phi = boost::math::quadrature::tanh_sinh<double>().integrate(
            [&](double u) {
                // Endpoint underflow of Q(u) can hit a singular pdf; the integrand tends to 0 there.
                const double v = u * m.log_pdf(m.quantile(u));
                return std::isfinite(v) ? v : 0.0;
            },
            0.0, 1.0);
        EXPECT_LT(rel(phi_f(m), phi), 1e-8);
        const double ce = boost_integral(m, [&](double y) {
            const double f = m.cdf(y);
            return f > 0 ? -f * m.log_cdf(y) : 0.0;
        });
        EXPECT_LT(rel(cumulative_entropy(m), ce), 1e-8);
        const double ce2 = boost_integral(m, [&](double y) {
            const double f = m.cdf(y);
            return f > 0 ? -2.0 * f * f * m.log_cdf(y) : 0.0;
        });
        EXPECT_LT(rel(cumulative_entropy_max2(m), ce2), 1e-8);
        EXPECT_GE(cumulative_entropy(m), 0.0);
        EXPECT_GE(cumulative_entropy_max2(m), 0.0);
    }
}

TEST(Functionals, InternalQuadratureAgreesWithClosedForms) {
    for (const auto& m : sample_families()) {
        EXPECT_LT(rel(shannon_entropy_by_quadrature(m), shannon_entropy(m)), 1e-8);
        EXPECT_LT(rel(phi_f_by_quadrature(m), phi_f(m)), 1e-8);
        EXPECT_LT(rel(cumulative_entropy_by_quadrature(m).value, cumulative_entropy(m)), 1e-8);
        EXPECT_LT(rel(cumulative_entropy_max2_by_quadrature(m).value, cumulative_entropy_max2(m)), 1e-8);
    }
}

TEST(Xlogx, ZeroConvention) {
    EXPECT_EQ(xlogx(0.0), 0.0);
    EXPECT_NEAR(xlogx(0.5), 0.5 * std::log(0.5), 1e-16);
}

}  // namespace
