#pragma once

#include <cstdint>

namespace fockrad {

/// Mass of the kernel h_n over [a, b]: P(n+1, b) - P(n+1, a), where P is the
/// regularized lower incomplete gamma function at integer shape n+1.
struct IntervalMass {
    std::int64_t n = 0;
    double a = 0.0;
    double b = 0.0;
    double mass = 0.0;
};

/// ln(n!). Exact-integer table for n <= 20, lgamma above; relative error
/// <= 1e-14. Throws std::domain_error for n < 0.
double log_factorial(std::int64_t n);

/// h_n(s) = s^n e^{-s} / n!, evaluated in log domain so no intermediate
/// overflows occur for any n <= 1e6. Corner case: h_0(0) = 1, h_n(0) = 0 for
/// n >= 1. Result lies in [0, 1]. Throws std::domain_error for s < 0.
double kernel(std::int64_t n, double s);

/// Regularized lower incomplete gamma P(n+1, x) = (1/n!) int_0^x s^n e^{-s} ds.
/// Finite Poisson survival sum for n <= 64 (largest term outward), series /
/// continued-fraction split above. Monotone nondecreasing in x, strictly
/// decreasing in n for fixed x > 0; absolute error <= 1e-13 for n <= 1e4.
double reg_lower_gamma(std::int64_t n, double x);

/// Upper tail Q(n+1, x) = 1 - P(n+1, x), computed on a direct path so that
/// small tails keep relative accuracy (no 1 - P cancellation).
double reg_upper_gamma(std::int64_t n, double x);

/// ln P(n+1, x). Stays finite down to P ~ e^{-745000}, far below where
/// reg_lower_gamma underflows to zero. Returns -inf for x = 0.
double log_reg_lower_gamma(std::int64_t n, double x);

/// int_a^b h_n(s) ds as a cancellation-aware difference: when both endpoint
/// values of P exceed 0.5 the mass is formed from upper-tail differences
/// instead. Requires 0 <= a <= b; result clamped to [0, 1].
IntervalMass interval_mass(std::int64_t n, double a, double b);

} // namespace fockrad
