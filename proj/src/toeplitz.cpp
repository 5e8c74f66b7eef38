#include "fockrad/toeplitz.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <istream>
#include <numbers>
#include <stdexcept>

#include "fockrad/extremal.hpp"
#include "fockrad/gamma_kernel.hpp"
#include "fockrad/lemmas.hpp"
#include "fockrad/quadrature.hpp"
#include "parallel.hpp"

namespace fockrad {

namespace {

constexpr double kPi = std::numbers::pi;

// 2 pi int r g(r) dr for a tabulated profile, in closed form per cell.
double plane_l1_tabulated(const TabulatedSymbol& symbol) {
    const auto& grid = symbol.grid();
    const auto& values = symbol.values();
    double integral = 0.0; // int r g(r) dr
    for (std::size_t i = 0; i + 1 < grid.size(); ++i) {
        const double r0 = grid[i];
        const double r1 = grid[i + 1];
        if (symbol.interpolation() == Interpolation::PiecewiseConstantLeft) {
            integral += values[i] * 0.5 * (r1 * r1 - r0 * r0);
        } else {
            const double slope = (values[i + 1] - values[i]) / (r1 - r0);
            integral += values[i] * 0.5 * (r1 * r1 - r0 * r0) +
                        slope * ((r1 * r1 * r1 - r0 * r0 * r0) / 3.0 -
                                 r0 * 0.5 * (r1 * r1 - r0 * r0));
        }
    }
    const double tail_end = symbol.support_end();
    integral += values.back() * 0.5 * (tail_end * tail_end - grid.back() * grid.back());
    return 2.0 * kPi * integral;
}

} // namespace

StepSymbol to_t_variable(const StepSymbol& radial) {
    std::vector<StepPiece> pieces;
    pieces.reserve(radial.pieces().size());
    for (const StepPiece& p : radial.pieces()) {
        const double t_lo = kPi * p.a * p.a;
        const double t_hi = kPi * p.b * p.b;
        if (t_hi > t_lo) { // squares of distinct subnormal radii can collide
            pieces.push_back(StepPiece{t_lo, t_hi, p.eps});
        }
    }
    return StepSymbol(std::move(pieces));
}

RadialSymbol::RadialSymbol(Symbol radial_profile) : radial_(std::move(radial_profile)) {
    if (const auto* step = std::get_if<StepSymbol>(&radial_)) {
        l1_plane_ = to_t_variable(*step).l1_norm();
    } else {
        l1_plane_ = plane_l1_tabulated(std::get<TabulatedSymbol>(radial_));
    }
    const double r_end = support_end(radial_);
    t_support_end_ = kPi * r_end * r_end;
}

double eigenvalue(const RadialSymbol& symbol, std::int64_t p, double quadrature_tol) {
    if (const auto* step = std::get_if<StepSymbol>(&symbol.radial())) {
        return weighted_kernel_integral(to_t_variable(*step), p);
    }
    const auto& profile = std::get<TabulatedSymbol>(symbol.radial());
    const double t_lo = kPi * profile.grid().front() * profile.grid().front();
    const double t_hi = symbol.t_support_end();
    if (t_lo >= t_hi) {
        return 0.0;
    }
    std::vector<double> seeds;
    seeds.reserve(profile.grid().size() + 3);
    for (double r : profile.grid()) {
        seeds.push_back(kPi * r * r);
    }
    const double center = static_cast<double>(p);
    const double spread = 3.0 * std::sqrt(center);
    seeds.push_back(center - spread);
    seeds.push_back(center);
    seeds.push_back(center + spread);
    QuadratureOptions options;
    options.abs_tol = quadrature_tol;
    return integrate_adaptive(
        [&](double t) { return profile(std::sqrt(t / kPi)) * kernel(p, t); }, t_lo, t_hi,
        options, seeds);
}

EigenvalueSequence spectrum(const RadialSymbol& symbol, double tol,
                            std::optional<std::int64_t> min_max_order, double quadrature_tol) {
    std::int64_t max_order = truncation_order(symbol.t_support_end(), tol);
    if (min_max_order && *min_max_order > max_order) {
        max_order = *min_max_order;
    }
    EigenvalueSequence sequence;
    sequence.gammas.assign(static_cast<std::size_t>(max_order) + 1, 0.0);
    detail::parallel_for(0, max_order + 1, [&](std::int64_t p) {
        sequence.gammas[static_cast<std::size_t>(p)] = eigenvalue(symbol, p, quadrature_tol);
    });
    sequence.tail_bound = reg_lower_gamma(max_order, symbol.t_support_end());
    return sequence;
}

NormEstimate norm_estimate(const RadialSymbol& symbol, double tol, double quadrature_tol) {
    const EigenvalueSequence sequence = spectrum(symbol, tol, std::nullopt, quadrature_tol);
    NormEstimate estimate;
    estimate.bound = galbis_bound(symbol.l1_on_plane());

    std::int64_t witness = 0;
    for (std::int64_t p = 1; p <= sequence.max_order(); ++p) {
        if (sequence.gammas[static_cast<std::size_t>(p)] >
            sequence.gammas[static_cast<std::size_t>(witness)]) {
            witness = p;
        }
    }
    estimate.norm_lb = sequence.gammas[static_cast<std::size_t>(witness)];

    estimate.report.lemma_id = LemmaId::Lemma1_3;
    estimate.report.lhs = estimate.norm_lb;
    estimate.report.rhs = estimate.bound;
    estimate.report.slack = estimate.bound - estimate.norm_lb;
    estimate.report.witness_n = witness;
    estimate.report.n_searched = sequence.max_order();
    estimate.report.truncation_bound = sequence.tail_bound;
    if (estimate.report.slack < -1e-10) {
        throw SlackViolation("norm estimate exceeded the plane-L1 bound: norm_lb=" +
                             std::to_string(estimate.norm_lb) +
                             " bound=" + std::to_string(estimate.bound) +
                             " witness_p=" + std::to_string(witness) +
                             " symbol=" + save_symbol(symbol.radial()));
    }
    return estimate;
}

FockCoefficients::FockCoefficients(std::vector<std::complex<double>> values)
    : values_(std::move(values)) {
    for (std::size_t p = 0; p < values_.size(); ++p) {
        if (!std::isfinite(values_[p].real()) || !std::isfinite(values_[p].imag())) {
            throw ValidationError("coefficient " + std::to_string(p) + " is not finite");
        }
    }
}

double FockCoefficients::norm_sq() const noexcept {
    double total = 0.0;
    for (const auto& b : values_) {
        total += std::norm(b);
    }
    return total;
}

FockCoefficients FockCoefficients::normalized() const {
    const double n2 = norm_sq();
    if (n2 <= 0.0) {
        throw ValidationError("cannot normalize the zero coefficient vector");
    }
    const double scale = 1.0 / std::sqrt(n2);
    std::vector<std::complex<double>> scaled(values_);
    for (auto& b : scaled) {
        b *= scale;
    }
    return FockCoefficients(std::move(scaled));
}

double quadratic_form(const RadialSymbol& symbol, const FockCoefficients& coefficients,
                      double quadrature_tol) {
    if (std::abs(coefficients.norm_sq() - 1.0) > 1e-12) {
        throw ValidationError("quadratic_form requires unit coefficients: sum |b_p|^2 = " +
                              std::to_string(coefficients.norm_sq()));
    }
    const std::int64_t count = static_cast<std::int64_t>(coefficients.size());
    std::vector<double> gammas(static_cast<std::size_t>(count), 0.0);
    detail::parallel_for(0, count, [&](std::int64_t p) {
        gammas[static_cast<std::size_t>(p)] = eigenvalue(symbol, p, quadrature_tol);
    });
    double total = 0.0;
    for (std::int64_t p = 0; p < count; ++p) {
        total += std::norm(coefficients.values()[static_cast<std::size_t>(p)]) *
                 gammas[static_cast<std::size_t>(p)];
    }
    return total;
}

FockCoefficients apply_diagonal(const RadialSymbol& symbol, const FockCoefficients& coefficients,
                                double quadrature_tol) {
    const std::int64_t count = static_cast<std::int64_t>(coefficients.size());
    std::vector<std::complex<double>> image(static_cast<std::size_t>(count));
    detail::parallel_for(0, count, [&](std::int64_t p) {
        image[static_cast<std::size_t>(p)] =
            coefficients.values()[static_cast<std::size_t>(p)] *
            eigenvalue(symbol, p, quadrature_tol);
    });
    return FockCoefficients(std::move(image));
}

std::string save_spectrum_csv(const EigenvalueSequence& sequence, double l1_plane) {
    std::string out = "p,gamma\n";
    for (std::size_t p = 0; p < sequence.gammas.size(); ++p) {
        out += std::to_string(p);
        out += ',';
        out += format_double(sequence.gammas[p]);
        out += '\n';
    }
    out += "# tail_bound=";
    out += format_double(sequence.tail_bound);
    out += " l1_plane=";
    out += format_double(l1_plane);
    out += '\n';
    return out;
}

std::string save_coefficients_csv(const FockCoefficients& coefficients) {
    std::string out = "p,re,im\n";
    for (std::size_t p = 0; p < coefficients.size(); ++p) {
        out += std::to_string(p);
        out += ',';
        out += format_double(coefficients.values()[p].real());
        out += ',';
        out += format_double(coefficients.values()[p].imag());
        out += '\n';
    }
    return out;
}

FockCoefficients load_coefficients_csv(std::istream& in) {
    std::string line;
    std::size_t line_no = 0;
    bool have_header = false;
    std::vector<std::complex<double>> values;
    std::int64_t last_p = -1;

    const auto parse_number = [](const std::string& text, std::size_t line_number,
                                 const char* what) {
        double value = 0.0;
        const char* first = text.data();
        const char* last = text.data() + text.size();
        while (first != last && (*first == ' ' || *first == '\t')) {
            ++first;
        }
        const auto result = std::from_chars(first, last, value);
        if (result.ec != std::errc{} || result.ptr != last || !std::isfinite(value)) {
            throw ParseError(line_number, std::string("field \"") + what +
                                              "\": not a finite decimal: \"" + text + "\"");
        }
        return value;
    };

    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') {
            line.pop_back();
        }
        if (line.empty() || line[0] == '#') {
            continue;
        }
        if (!have_header) {
            if (line != "p,re,im") {
                throw ParseError(line_no, "expected header \"p,re,im\"");
            }
            have_header = true;
            continue;
        }
        const auto first_comma = line.find(',');
        const auto second_comma =
            first_comma == std::string::npos ? std::string::npos
                                             : line.find(',', first_comma + 1);
        if (first_comma == std::string::npos || second_comma == std::string::npos ||
            line.find(',', second_comma + 1) != std::string::npos) {
            throw ParseError(line_no, "expected exactly three comma-separated fields");
        }
        const double p_value = parse_number(line.substr(0, first_comma), line_no, "p");
        const double re =
            parse_number(line.substr(first_comma + 1, second_comma - first_comma - 1), line_no,
                         "re");
        const double im = parse_number(line.substr(second_comma + 1), line_no, "im");
        if (p_value < 0.0 || p_value != std::floor(p_value) || p_value > 1e9) {
            throw ParseError(line_no, "field \"p\": expected a small nonnegative integer");
        }
        const std::int64_t p = static_cast<std::int64_t>(p_value);
        if (p <= last_p) {
            throw ParseError(line_no, "field \"p\": indices must be strictly increasing");
        }
        values.resize(static_cast<std::size_t>(p) + 1, std::complex<double>(0.0, 0.0));
        values[static_cast<std::size_t>(p)] = std::complex<double>(re, im);
        last_p = p;
    }
    if (!have_header) {
        throw ParseError(line_no, "missing header \"p,re,im\"");
    }
    if (values.empty()) {
        throw ParseError(line_no, "no coefficient rows");
    }
    return FockCoefficients(std::move(values));
}

} // namespace fockrad
