#include "fockrad/extremal.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "fockrad/gamma_kernel.hpp"

namespace fockrad {

double galbis_bound(double length) {
    if (std::isnan(length) || length < 0.0) {
        throw std::domain_error("galbis_bound requires a nonnegative length");
    }
    return -std::expm1(-length);
}

ExtremalInterval best_interval(std::int64_t n, double length) {
    if (n < 0) {
        throw std::domain_error("best_interval requires a nonnegative order");
    }
    if (std::isnan(length) || length <= 0.0 || std::isinf(length)) {
        throw std::domain_error("best_interval requires a finite positive length");
    }
    ExtremalInterval window;
    window.n = n;
    window.length = length;
    if (n > 0) {
        // The stationarity condition h_n(a) = h_n(a + L) reduces to
        // n ln(1 + L/a) = L, whose unique root is a = L / (e^{L/n} - 1).
        // expm1 underflow for extreme L/n collapses a to 0, which is the
        // correct boundary limit.
        const double ratio = length / static_cast<double>(n);
        window.a = length / std::expm1(ratio);
        if (!std::isfinite(window.a)) {
            window.a = 0.0;
        }
    }
    window.b = window.a + length;
    window.mass = interval_mass(n, window.a, window.b).mass;
    return window;
}

LemmaReport verify_rearrangement(const StepSymbol& symbol, std::int64_t n) {
    LemmaReport report;
    report.lemma_id = LemmaId::Rearrangement;
    report.witness_n = n;
    report.n_searched = n;
    report.lhs = weighted_kernel_integral(symbol, n);
    const double budget = symbol.l1_norm();
    report.rhs = budget > 0.0 ? best_interval(n, budget).mass : 0.0;
    report.slack = report.rhs - report.lhs;
    if (report.slack < -1e-10) {
        throw SlackViolation("rearrangement dominance violated: slack=" +
                             std::to_string(report.slack) + " n=" + std::to_string(n) +
                             " lhs=" + std::to_string(report.lhs) +
                             " rhs=" + std::to_string(report.rhs) +
                             " symbol=" + save_symbol_json(symbol));
    }
    return report;
}

} // namespace fockrad
