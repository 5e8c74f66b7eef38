#pragma once

#include <cstdint>

#include "fockrad/report.hpp"
#include "fockrad/symbols.hpp"

namespace fockrad {

/// The sharp constant 1 - e^{-length} dominating every kernel mass of a
/// weight-`length` symbol. Throws std::domain_error for negative lengths.
double galbis_bound(double length);

/// The window [a, a + length] maximizing the h_n mass, with the mass it
/// achieves. For n >= 1 the maximizer is interior and pinned by the
/// stationarity condition h_n(a) = h_n(a + length); it contains n. For n = 0
/// the kernel is decreasing and the leftmost window wins (a = 0).
struct ExtremalInterval {
    std::int64_t n = 0;
    double length = 0.0;
    double a = 0.0;
    double b = 0.0;
    double mass = 0.0;
};

ExtremalInterval best_interval(std::int64_t n, double length);

/// Dominance of the extremal window: lhs is the symbol's own kernel integral,
/// rhs the best same-budget interval mass. slack = rhs - lhs must be
/// >= -1e-10; a violation throws SlackViolation (a numerical bug sentinel).
LemmaReport verify_rearrangement(const StepSymbol& symbol, std::int64_t n);

} // namespace fockrad
