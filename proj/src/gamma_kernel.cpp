#include "fockrad/gamma_kernel.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace fockrad {

namespace {

// Switch point between the finite Poisson survival sum and the classic
// series / continued-fraction evaluation.
constexpr std::int64_t kSurvivalSumMaxOrder = 64;

constexpr int kMaxIterations = 40000;
const double kEps = std::numeric_limits<double>::epsilon();

void require_order(std::int64_t n) {
    if (n < 0) {
        throw std::domain_error("kernel order must be nonnegative, got " + std::to_string(n));
    }
}

double require_nonnegative(double x, const char* what) {
    if (std::isnan(x) || x < 0.0) {
        throw std::domain_error(std::string(what) + " must be nonnegative, got " +
                                std::to_string(x));
    }
    return x;
}

double clamp01(double v) { return std::min(1.0, std::max(0.0, v)); }

// Q(n+1, x) = e^{-x} sum_{j=0}^{n} x^j / j!, i.e. the Poisson(x) mass at
// {0..n}. Terms are generated from the largest one outward via neighbour
// ratios; only that largest term goes through exp().
double survival_sum(std::int64_t n, double x) {
    if (x == 0.0) {
        return 1.0;
    }
    const std::int64_t j0 =
        (x >= static_cast<double>(n)) ? n : static_cast<std::int64_t>(x);
    const double t0 =
        std::exp(static_cast<double>(j0) * std::log(x) - x - log_factorial(j0));
    double sum = t0;
    double term = t0;
    for (std::int64_t j = j0; j > 0; --j) { // downward: t_{j-1} = t_j * j / x
        term *= static_cast<double>(j) / x;
        sum += term;
        if (term < sum * kEps) {
            break;
        }
    }
    term = t0;
    for (std::int64_t j = j0 + 1; j <= n; ++j) { // upward: t_j = t_{j-1} * x / j
        term *= x / static_cast<double>(j);
        sum += term;
        if (term < sum * kEps) {
            break;
        }
    }
    return clamp01(sum);
}

// Series sum S with P(a, x) = exp(a ln x - x - lgamma(a)) * S, reliable for
// x < a + 1. Returned in log form to share between linear and log callers.
double lower_series_log(double a, double x) {
    double sum = 1.0 / a;
    double term = sum;
    for (int k = 1; k <= kMaxIterations; ++k) {
        term *= x / (a + static_cast<double>(k));
        sum += term;
        if (std::abs(term) < std::abs(sum) * kEps) {
            return a * std::log(x) - x - std::lgamma(a) + std::log(sum);
        }
    }
    throw std::runtime_error("incomplete gamma series failed to converge");
}

// Continued fraction (modified Lentz) for Q(a, x), reliable for x >= a + 1.
double upper_cont_frac(double a, double x) {
    constexpr double kTiny = 1e-300;
    double b = x + 1.0 - a;
    double c = 1.0 / kTiny;
    double d = 1.0 / b;
    double h = d;
    for (int i = 1; i <= kMaxIterations; ++i) {
        const double an = -static_cast<double>(i) * (static_cast<double>(i) - a);
        b += 2.0;
        d = an * d + b;
        if (std::abs(d) < kTiny) {
            d = kTiny;
        }
        c = b + an / c;
        if (std::abs(c) < kTiny) {
            c = kTiny;
        }
        d = 1.0 / d;
        const double delta = d * c;
        h *= delta;
        if (std::abs(delta - 1.0) <= kEps) {
            return std::exp(a * std::log(x) - x - std::lgamma(a)) * h;
        }
    }
    throw std::runtime_error("incomplete gamma continued fraction failed to converge");
}

} // namespace

double log_factorial(std::int64_t n) {
    require_order(n);
    static const std::array<double, 21> table = [] {
        std::array<double, 21> t{};
        long double f = 1.0L;
        for (int i = 1; i <= 20; ++i) {
            f *= static_cast<long double>(i); // exact: 20! < 2^64
            t[static_cast<std::size_t>(i)] = static_cast<double>(std::log(f));
        }
        return t;
    }();
    if (n <= 20) {
        return table[static_cast<std::size_t>(n)];
    }
    return std::lgamma(static_cast<double>(n) + 1.0);
}

double kernel(std::int64_t n, double s) {
    require_order(n);
    require_nonnegative(s, "kernel argument s");
    if (s == 0.0) {
        return n == 0 ? 1.0 : 0.0;
    }
    return std::exp(static_cast<double>(n) * std::log(s) - s - log_factorial(n));
}

double reg_lower_gamma(std::int64_t n, double x) {
    require_order(n);
    if (std::isnan(x) || x < 0.0) {
        throw std::domain_error("reg_lower_gamma argument x must be nonnegative");
    }
    if (std::isinf(x)) {
        return 1.0;
    }
    if (x == 0.0) {
        return 0.0;
    }
    if (n <= kSurvivalSumMaxOrder) {
        const double q = survival_sum(n, x);
        if (q <= 0.5) {
            return clamp01(1.0 - q);
        }
        // q > 0.5: 1 - q is only absolutely accurate and far tails round to
        // zero outright; the series keeps the small side relative-accurate.
        return clamp01(std::exp(lower_series_log(static_cast<double>(n) + 1.0, x)));
    }
    const double a = static_cast<double>(n) + 1.0;
    if (x < a) {
        return clamp01(std::exp(lower_series_log(a, x)));
    }
    return clamp01(1.0 - upper_cont_frac(a, x));
}

double reg_upper_gamma(std::int64_t n, double x) {
    require_order(n);
    if (std::isnan(x) || x < 0.0) {
        throw std::domain_error("reg_upper_gamma argument x must be nonnegative");
    }
    if (std::isinf(x)) {
        return 0.0;
    }
    if (x == 0.0) {
        return 1.0;
    }
    if (n <= kSurvivalSumMaxOrder) {
        return survival_sum(n, x);
    }
    const double a = static_cast<double>(n) + 1.0;
    if (x >= a) {
        return clamp01(upper_cont_frac(a, x));
    }
    return clamp01(1.0 - std::exp(lower_series_log(a, x)));
}

double log_reg_lower_gamma(std::int64_t n, double x) {
    require_order(n);
    if (std::isnan(x) || x < 0.0) {
        throw std::domain_error("log_reg_lower_gamma argument x must be nonnegative");
    }
    if (x == 0.0) {
        return -std::numeric_limits<double>::infinity();
    }
    if (std::isinf(x)) {
        return 0.0;
    }
    const double a = static_cast<double>(n) + 1.0;
    if (x < a) {
        return lower_series_log(a, x);
    }
    // x >= a: P is at least ~0.4, the complement is harmless here.
    return std::log1p(-reg_upper_gamma(n, x));
}

IntervalMass interval_mass(std::int64_t n, double a, double b) {
    require_order(n);
    require_nonnegative(a, "interval endpoint a");
    if (std::isnan(b) || b < a) {
        throw std::domain_error("interval_mass requires 0 <= a <= b");
    }
    IntervalMass result{n, a, b, 0.0};
    if (a == b) {
        return result;
    }
    const double pa = reg_lower_gamma(n, a);
    const double pb = reg_lower_gamma(n, b);
    if (pa > 0.5 && pb > 0.5) {
        // Both endpoints are past the bulk; lower-tail values would cancel.
        result.mass = clamp01(reg_upper_gamma(n, a) - reg_upper_gamma(n, b));
    } else {
        result.mass = clamp01(pb - pa);
    }
    return result;
}

} // namespace fockrad
