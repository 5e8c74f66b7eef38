#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "fockrad/report.hpp"
#include "fockrad/symbols.hpp"

namespace fockrad {

/// Least order n* with P(n*+1, support_end) <= tol. Since every kernel
/// integral of a height-bounded symbol supported in [0, support_end] is at
/// most P(n+1, support_end), and that bound decreases in n, all orders past
/// n* contribute at most tol.
std::int64_t truncation_order(double support_end, double tol);

/// Indicator-set inequality at a fixed order: lhs = kernel integral over the
/// set, rhs = 1 - e^{-|set|}. Rejects symbols with any height != 1.
LemmaReport check_lemma_1_1(const StepSymbol& indicator_set, std::int64_t n);

/// Weighted disjoint-family inequality at a fixed order p.
LemmaReport check_lemma_1_2(const StepSymbol& symbol, std::int64_t p);

/// General-symbol inequality with the supremum over all orders replaced by a
/// certified finite scan: lhs = max over n = 0..n* of the kernel integral,
/// witness_n the argmax, truncation_bound = P(n*+1, support_end) <= tol.
LemmaReport check_lemma_1_3(const Symbol& symbol, double truncation_tol = 1e-12,
                            double quadrature_tol = 1e-10);

/// Kernel integrals for n = 0..n_max, for export and plotting.
std::vector<std::pair<std::int64_t, double>> sweep(const Symbol& symbol, std::int64_t n_max,
                                                   double quadrature_tol = 1e-10);

} // namespace fockrad
