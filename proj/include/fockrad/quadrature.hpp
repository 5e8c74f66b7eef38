#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <vector>

namespace fockrad {

struct QuadratureOptions {
    double abs_tol = 1e-10;
    double rel_tol = 1e-12;
    std::size_t max_panels = 1u << 20;
};

namespace detail {

// 15-point Kronrod extension of the 7-point Gauss rule (QUADPACK dqk15).
inline constexpr double kKronrodNodes[8] = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144838258730, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.0};

inline constexpr double kKronrodWeights[8] = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};

inline constexpr double kGaussWeights[4] = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Panel {
    double lo = 0.0;
    double hi = 0.0;
    double value = 0.0;
    double error = 0.0;

    bool operator<(const Panel& other) const { return error < other.error; }
};

template <class F>
Panel gauss_kronrod_15(F&& f, double lo, double hi) {
    const double center = 0.5 * (lo + hi);
    const double half = 0.5 * (hi - lo);
    const double f_center = f(center);
    double gauss = kGaussWeights[3] * f_center;
    double kronrod = kKronrodWeights[7] * f_center;
    for (int i = 0; i < 7; ++i) {
        const double offset = half * kKronrodNodes[i];
        const double pair = f(center - offset) + f(center + offset);
        kronrod += kKronrodWeights[i] * pair;
        if (i % 2 == 1) { // odd indices are the embedded Gauss nodes
            gauss += kGaussWeights[i / 2] * pair;
        }
    }
    Panel panel;
    panel.lo = lo;
    panel.hi = hi;
    panel.value = kronrod * half;
    panel.error = std::abs((kronrod - gauss) * half);
    return panel;
}

} // namespace detail

/// Adaptive Gauss-Kronrod integration of f over [lo, hi]. Seed points split
/// the initial interval so that each starting panel sees a smooth integrand
/// (pass grid knots and concentration points of the integrand). Refinement
/// always splits the worst panel; terminates once the summed error estimate
/// is below max(abs_tol, rel_tol * |integral|). Throws std::runtime_error if
/// the panel budget is exhausted first.
template <class F>
double integrate_adaptive(F&& f, double lo, double hi, const QuadratureOptions& options = {},
                          std::span<const double> seed_points = {}) {
    if (!(lo <= hi)) {
        throw std::domain_error("integrate_adaptive requires lo <= hi");
    }
    if (lo == hi) {
        return 0.0;
    }

    std::vector<double> cuts;
    cuts.reserve(seed_points.size() + 2);
    cuts.push_back(lo);
    for (double s : seed_points) {
        if (s > lo && s < hi) {
            cuts.push_back(s);
        }
    }
    cuts.push_back(hi);
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

    std::vector<detail::Panel> heap;
    heap.reserve(cuts.size() + 64);
    double total = 0.0;
    double total_error = 0.0;
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
        detail::Panel panel = detail::gauss_kronrod_15(f, cuts[i], cuts[i + 1]);
        total += panel.value;
        total_error += panel.error;
        heap.push_back(panel);
    }
    std::make_heap(heap.begin(), heap.end());

    while (total_error > std::max(options.abs_tol, options.rel_tol * std::abs(total))) {
        if (heap.size() >= options.max_panels) {
            throw std::runtime_error("integrate_adaptive: panel budget exhausted before "
                                     "reaching the requested tolerance");
        }
        std::pop_heap(heap.begin(), heap.end());
        const detail::Panel worst = heap.back();
        heap.pop_back();
        if (worst.hi - worst.lo <= std::abs(worst.lo) * 4.0 * 1e-16) {
            // Cannot split further in double precision; accept its estimate.
            // Re-inserting with zero error keeps the value in the total.
            detail::Panel spent = worst;
            total_error -= worst.error;
            spent.error = 0.0;
            heap.push_back(spent);
            std::push_heap(heap.begin(), heap.end());
            continue;
        }
        const double mid = 0.5 * (worst.lo + worst.hi);
        detail::Panel left = detail::gauss_kronrod_15(f, worst.lo, mid);
        detail::Panel right = detail::gauss_kronrod_15(f, mid, worst.hi);
        total += left.value + right.value - worst.value;
        total_error += left.error + right.error - worst.error;
        heap.push_back(left);
        std::push_heap(heap.begin(), heap.end());
        heap.push_back(right);
        std::push_heap(heap.begin(), heap.end());
    }
    return total;
}

} // namespace fockrad
