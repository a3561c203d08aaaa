#include "cim/numerics.hpp"

#include "cim/errors.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <queue>
#include <sstream>
#include <string>

namespace cim {

namespace {

// Kronrod 15-point abscissae on [-1, 1] (positive half). Odd indices are the
// embedded 7-point Gauss nodes, index 7 is the centre.
constexpr std::array<double, 8> kXgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};

constexpr std::array<double, 8> kWgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};

constexpr std::array<double, 4> kWg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr double kTiny = std::numeric_limits<double>::min();

struct Segment {
    double a;
    double b;
    double value;
    double error;
    bool operator<(const Segment& other) const { return error < other.error; }
};

class Evaluator {
public:
    Evaluator(const Integrand& f, double lo, double hi) : f_(f), lo_(lo), hi_(hi) {
        if (std::isinf(lo) && std::isinf(hi)) {
            kind_ = Kind::both;
        } else if (std::isinf(hi)) {
            kind_ = Kind::upper;
        } else if (std::isinf(lo)) {
            kind_ = Kind::lower;
        }
    }

    // Integration range in the transformed variable.
    double t_lo() const { return kind_ == Kind::finite ? lo_ : (kind_ == Kind::both ? -1.0 : 0.0); }
    double t_hi() const { return kind_ == Kind::finite ? hi_ : 1.0; }

    double operator()(double t) {
        ++evaluations;
        double y = t;
        double jac = 1.0;
        switch (kind_) {
            case Kind::finite:
                break;
            case Kind::upper: {
                const double s = 1.0 - t;
                y = lo_ + t / s;
                jac = 1.0 / (s * s);
                break;
            }
            case Kind::lower: {
                const double s = 1.0 - t;
                y = hi_ - t / s;
                jac = 1.0 / (s * s);
                break;
            }
            case Kind::both: {
                const double s = 1.0 - t * t;
                y = t / s;
                jac = (1.0 + t * t) / (s * s);
                break;
            }
        }
        const double fy = f_(y);
        if (std::isnan(fy)) {
            std::ostringstream msg;
            msg.precision(17);
            msg << "integrand returned NaN at y = " << y;
            throw NanIntegrand(msg.str(), y);
        }
        if (fy == 0.0) {
            return 0.0;
        }
        return fy * jac;
    }

    int evaluations = 0;

private:
    enum class Kind { finite, upper, lower, both };
    const Integrand& f_;
    double lo_;
    double hi_;
    Kind kind_ = Kind::finite;
};

Segment gauss_kronrod15(Evaluator& g, double a, double b) {
    const double centre = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    const double abs_half = std::abs(half);

    const double fc = g(centre);
    double res_g = fc * kWg[3];
    double res_k = fc * kWgk[7];
    double res_abs = std::abs(res_k);

    std::array<double, 7> f1{};
    std::array<double, 7> f2{};
    for (int j = 0; j < 7; ++j) {
        const double dx = half * kXgk[j];
        f1[j] = g(centre - dx);
        f2[j] = g(centre + dx);
        const double pair = f1[j] + f2[j];
        res_k += kWgk[j] * pair;
        res_abs += kWgk[j] * (std::abs(f1[j]) + std::abs(f2[j]));
        if (j % 2 == 1) {
            res_g += kWg[j / 2] * pair;
        }
    }

    const double mean = 0.5 * res_k;
    double res_asc = kWgk[7] * std::abs(fc - mean);
    for (int j = 0; j < 7; ++j) {
        res_asc += kWgk[j] * (std::abs(f1[j] - mean) + std::abs(f2[j] - mean));
    }

    const double value = res_k * half;
    res_abs *= abs_half;
    res_asc *= abs_half;
    double err = std::abs((res_k - res_g) * half);
    if (res_asc != 0.0 && err != 0.0) {
        err = res_asc * std::min(1.0, std::pow(200.0 * err / res_asc, 1.5));
    }
    if (res_abs > kTiny / (50.0 * kEps)) {
        err = std::max(50.0 * kEps * res_abs, err);
    }
    return {a, b, value, err};
}

bool splittable(const Segment& s) {
    const double mid = 0.5 * (s.a + s.b);
    const double scale = std::max(std::abs(s.a), std::abs(s.b));
    return (s.b - s.a) > 100.0 * kEps * std::max(scale, 1e-300) && mid > s.a && mid < s.b;
}

}  // namespace

QuadratureResult integrate(const Integrand& f, double lo, double hi, const QuadratureOptions& opts) {
    if (!(opts.rel_tol > 0.0) || !(opts.abs_tol > 0.0)) {
        throw DomainError("integrate: tolerances must be positive");
    }
    if (std::isnan(lo) || std::isnan(hi) || !(lo < hi)) {
        throw DomainError("integrate: require lo < hi");
    }
    if (opts.max_intervals < 1) {
        throw DomainError("integrate: max_intervals must be at least 1");
    }

    Evaluator g(f, lo, hi);
    std::priority_queue<Segment> active;
    // Segments too narrow to bisect further; their error is final.
    double frozen_value = 0.0;
    double frozen_error = 0.0;

    const Segment first = gauss_kronrod15(g, g.t_lo(), g.t_hi());
    double total = first.value;
    double total_error = first.error;
    active.push(first);

    auto target = [&] { return std::max(opts.abs_tol, opts.rel_tol * std::abs(total)); };

    int intervals = 1;
    while (total_error > target() && !active.empty()) {
        if (intervals >= opts.max_intervals) {
            std::ostringstream msg;
            msg.precision(6);
            msg << "integrate: no convergence after " << g.evaluations << " evaluations (error estimate "
                << total_error << ")";
            throw IntegrationError(msg.str(), total, total_error);
        }
        const Segment worst = active.top();
        active.pop();
        if (!splittable(worst)) {
            frozen_value += worst.value;
            frozen_error += worst.error;
            continue;
        }
        const double mid = 0.5 * (worst.a + worst.b);
        const Segment left = gauss_kronrod15(g, worst.a, mid);
        const Segment right = gauss_kronrod15(g, mid, worst.b);
        total += left.value + right.value - worst.value;
        total_error += left.error + right.error - worst.error;
        active.push(left);
        active.push(right);
        ++intervals;
    }

    // Re-sum from scratch to shed accumulated cancellation in the running total.
    double value = frozen_value;
    double error = frozen_error;
    while (!active.empty()) {
        value += active.top().value;
        error += active.top().error;
        active.pop();
    }
    if (error > std::max(opts.abs_tol, opts.rel_tol * std::abs(value))) {
        std::ostringstream msg;
        msg.precision(6);
        msg << "integrate: tolerance not reachable, roundoff limits the error estimate to " << error;
        throw IntegrationError(msg.str(), value, error);
    }
    return {value, error, g.evaluations};
}

double digamma(double x) {
    if (!(x > 0.0) || std::isinf(x)) {
        throw DomainError("digamma: argument must be positive and finite");
    }
    double shift = 0.0;
    while (x < 10.0) {
        shift -= 1.0 / x;
        x += 1.0;
    }
    const double inv = 1.0 / x;
    const double inv2 = inv * inv;
    // Bernoulli tail: sum B_2k / (2k x^2k), k = 1..7.
    const double tail =
        inv2 * (1.0 / 12 -
                inv2 * (1.0 / 120 -
                        inv2 * (1.0 / 252 -
                                inv2 * (1.0 / 240 - inv2 * (1.0 / 132 - inv2 * (691.0 / 32760 - inv2 / 12.0))))));
    return shift + std::log(x) - 0.5 * inv - tail;
}

double trigamma(double x) {
    if (!(x > 0.0) || std::isinf(x)) {
        throw DomainError("trigamma: argument must be positive and finite");
    }
    double shift = 0.0;
    while (x < 10.0) {
        shift += 1.0 / (x * x);
        x += 1.0;
    }
    const double inv = 1.0 / x;
    const double inv2 = inv * inv;
    const double tail =
        inv * inv2 *
        (1.0 / 6 - inv2 * (1.0 / 30 - inv2 * (1.0 / 42 - inv2 * (1.0 / 30 - inv2 * (5.0 / 66 - inv2 * (691.0 / 2730 - inv2 * 7.0 / 6))))));
    return shift + inv + 0.5 * inv2 + tail;
}

RngStream::RngStream(std::uint64_t seed, std::uint64_t stream_id) : seed_(seed), stream_id_(stream_id) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(stream_id), static_cast<std::uint32_t>(stream_id >> 32),
                      0x6a09e667u};
    engine_.seed(seq);
}

double RngStream::uniform01() {
    // 53 random bits centred in their cell: never 0, never 1.
    const std::uint64_t bits = engine_() >> 11;
    return (static_cast<double>(bits) + 0.5) * 0x1.0p-53;
}

double standard_normal_cdf(double z) { return 0.5 * std::erfc(-z / std::sqrt(2.0)); }

double ks_statistic(std::span<const double> sample, const std::function<double(double)>& cdf) {
    if (sample.empty()) {
        throw DomainError("ks_statistic: empty sample");
    }
    std::vector<double> sorted(sample.begin(), sample.end());
    std::sort(sorted.begin(), sorted.end());
    const double n = static_cast<double>(sorted.size());
    double d = 0.0;
    for (std::size_t i = 0; i < sorted.size(); ++i) {
        const double fx = cdf(sorted[i]);
        d = std::max({d, static_cast<double>(i + 1) / n - fx, fx - static_cast<double>(i) / n});
    }
    return d;
}

double ks_critical_value_1pct(std::size_t n) {
    if (n == 0) {
        throw DomainError("ks_critical_value_1pct: n must be positive");
    }
    return 1.63 / std::sqrt(static_cast<double>(n));
}

}  // namespace cim
