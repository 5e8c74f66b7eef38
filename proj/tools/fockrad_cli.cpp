// Command-line front end: every capability of the library as reproducible,
// scriptable subcommands with machine-readable JSON/CSV output.
//
// Exit codes: 0 success, 2 validation/parse/usage errors, 3 slack violation
// (the numerical-bug sentinel).

#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "fockrad/extremal.hpp"
#include "fockrad/gamma_kernel.hpp"
#include "fockrad/lemmas.hpp"
#include "fockrad/symbols.hpp"
#include "fockrad/toeplitz.hpp"

namespace {

using namespace fockrad;

struct RunConfig {
    std::string subcommand;
    std::string input_path;
    std::string coeffs_path;
    std::string lemma = "1.3";
    double truncation_tol = 1e-12;
    double quadrature_tol = 1e-10;
    std::string output_format = "json";
    std::int64_t n = -1;
    std::int64_t n_max = -1;
    std::int64_t p_max = -1;
    double truncate_quantile = 1.0;
    std::uint64_t seed = 1;
    int trials = 200;
    double length = 0.0;
};

// ---------------------------------------------------------------------------
// Quantile truncation (for symbols whose far support is irrelevant): clip the
// support at the point where `quantile` of the L1 mass is captured and report
// the discarded remainder. Step symbols cut exactly; tabulated grids snap the
// cut up to the next knot (the constant tail past the grid cuts exactly).
// ---------------------------------------------------------------------------

struct Truncation {
    Symbol symbol;
    double discarded = 0.0;
};

Truncation truncate_step(const StepSymbol& symbol, double quantile) {
    const double target = quantile * symbol.l1_norm();
    std::vector<StepPiece> kept;
    double cumulative = 0.0;
    for (const StepPiece& piece : symbol.pieces()) {
        const double mass = piece.eps * (piece.b - piece.a);
        if (cumulative + mass < target || mass == 0.0) {
            kept.push_back(piece);
            cumulative += mass;
            continue;
        }
        const double cut = std::min(piece.b, piece.a + (target - cumulative) / piece.eps);
        if (cut > piece.a) {
            kept.push_back(StepPiece{piece.a, cut, piece.eps});
        }
        break;
    }
    StepSymbol clipped(std::move(kept));
    const double discarded = symbol.l1_norm() - clipped.l1_norm();
    return Truncation{Symbol(std::move(clipped)), discarded};
}

Truncation truncate_tabulated(const TabulatedSymbol& symbol, double quantile) {
    const double target = quantile * symbol.l1_norm();
    const auto& grid = symbol.grid();
    const auto& values = symbol.values();
    double cumulative = 0.0;
    std::size_t cut_index = grid.size();
    for (std::size_t i = 0; i + 1 < grid.size(); ++i) {
        const double width = grid[i + 1] - grid[i];
        const double mass = symbol.interpolation() == Interpolation::PiecewiseLinear
                                ? 0.5 * (values[i] + values[i + 1]) * width
                                : values[i] * width;
        cumulative += mass;
        if (cumulative >= target) {
            cut_index = i + 1;
            break;
        }
    }
    if (cut_index < grid.size()) {
        std::vector<double> new_grid(grid.begin(),
                                     grid.begin() + static_cast<std::ptrdiff_t>(cut_index) + 1);
        std::vector<double> new_values(
            values.begin(), values.begin() + static_cast<std::ptrdiff_t>(cut_index) + 1);
        const double support = new_grid.back();
        TabulatedSymbol clipped(std::move(new_grid), std::move(new_values),
                                symbol.interpolation(), support);
        const double discarded = symbol.l1_norm() - clipped.l1_norm();
        return Truncation{Symbol(std::move(clipped)), discarded};
    }
    // cut lands in the constant tail past the grid, where an exact cut exists
    double support = symbol.support_end();
    if (values.back() > 0.0) {
        const double tail_needed = (target - cumulative) / values.back();
        support = std::min(support, grid.back() + std::max(0.0, tail_needed));
    }
    TabulatedSymbol clipped(grid, values, symbol.interpolation(), support);
    const double discarded = symbol.l1_norm() - clipped.l1_norm();
    return Truncation{Symbol(std::move(clipped)), discarded};
}

Truncation truncate_symbol(const Symbol& symbol, double quantile) {
    if (quantile >= 1.0 || l1_norm(symbol) == 0.0) {
        return Truncation{symbol, 0.0};
    }
    if (const auto* step = std::get_if<StepSymbol>(&symbol)) {
        return truncate_step(*step, quantile);
    }
    return truncate_tabulated(std::get<TabulatedSymbol>(symbol), quantile);
}

// ---------------------------------------------------------------------------
// Output rendering.
// ---------------------------------------------------------------------------

void emit(const std::string& text) { std::cout << text << "\n"; }

std::string report_csv(const LemmaReport& report) {
    std::string out = "lemma_id,lhs,rhs,slack,witness_n,n_searched,truncation_bound\n";
    out += std::string(to_string(report.lemma_id)) + ",";
    out += format_double(report.lhs) + ",";
    out += format_double(report.rhs) + ",";
    out += format_double(report.slack) + ",";
    out += std::to_string(report.witness_n) + ",";
    out += std::to_string(report.n_searched) + ",";
    out += format_double(report.truncation_bound);
    return out;
}

int run_verify_lemma(const RunConfig& config) {
    const Symbol loaded = load_symbol_file(config.input_path);
    const Truncation truncation = truncate_symbol(loaded, config.truncate_quantile);
    const Symbol& symbol = truncation.symbol;
    const bool truncated = config.truncate_quantile < 1.0;

    LemmaReport report;
    if (config.lemma == "1.1" || config.lemma == "1.2") {
        if (config.n < 0) {
            throw ValidationError("--n is required for lemmas 1.1 and 1.2");
        }
        const auto* step = std::get_if<StepSymbol>(&symbol);
        if (step == nullptr) {
            throw ValidationError("lemmas 1.1 and 1.2 take a step symbol (JSON input)");
        }
        report = config.lemma == "1.1" ? check_lemma_1_1(*step, config.n)
                                       : check_lemma_1_2(*step, config.n);
    } else if (config.lemma == "1.3") {
        if (config.n >= 0) {
            throw ValidationError("--n does not apply to lemma 1.3 (the order is searched)");
        }
        report = check_lemma_1_3(symbol, config.truncation_tol, config.quadrature_tol);
    } else {
        throw ValidationError("unknown lemma \"" + config.lemma +
                              "\" (expected 1.1, 1.2 or 1.3)");
    }

    if (config.output_format == "csv") {
        std::string out = report_csv(report);
        if (truncated) {
            out += "\n# truncated=true discarded_l1=" + format_double(truncation.discarded);
        }
        emit(out);
    } else {
        nlohmann::ordered_json doc = nlohmann::ordered_json::parse(to_json(report));
        if (truncated) {
            doc["truncated"] = true;
            doc["discarded_l1"] = truncation.discarded;
        }
        emit(doc.dump());
    }
    return 0;
}

int run_extremal(const RunConfig& config) {
    const ExtremalInterval window = best_interval(config.n, config.length);
    if (config.output_format == "csv") {
        std::string out = "n,length,a,b,mass\n";
        out += std::to_string(window.n) + ",";
        out += format_double(window.length) + ",";
        out += format_double(window.a) + ",";
        out += format_double(window.b) + ",";
        out += format_double(window.mass);
        emit(out);
    } else {
        nlohmann::ordered_json doc;
        doc["n"] = window.n;
        doc["length"] = window.length;
        doc["a"] = window.a;
        doc["b"] = window.b;
        doc["mass"] = window.mass;
        emit(doc.dump());
    }
    return 0;
}

int run_sweep(const RunConfig& config) {
    if (config.n_max < 0) {
        throw ValidationError("--n-max is required for sweep");
    }
    const Symbol symbol = load_symbol_file(config.input_path);
    const auto rows = sweep(symbol, config.n_max, config.quadrature_tol);
    if (config.output_format == "json") {
        nlohmann::ordered_json doc = nlohmann::ordered_json::array();
        for (const auto& [n, integral] : rows) {
            nlohmann::ordered_json row;
            row["n"] = n;
            row["integral"] = integral;
            doc.push_back(std::move(row));
        }
        emit(doc.dump());
    } else {
        std::string out = "n,integral";
        for (const auto& [n, integral] : rows) {
            out += "\n" + std::to_string(n) + "," + format_double(integral);
        }
        emit(out);
    }
    return 0;
}

int run_spectrum(const RunConfig& config) {
    const RadialSymbol symbol(load_symbol_file(config.input_path));
    std::optional<std::int64_t> min_order;
    if (config.p_max >= 0) {
        min_order = config.p_max;
    }
    const EigenvalueSequence sequence =
        spectrum(symbol, config.truncation_tol, min_order, config.quadrature_tol);
    if (config.output_format == "json") {
        nlohmann::ordered_json doc;
        doc["gammas"] = sequence.gammas;
        doc["tail_bound"] = sequence.tail_bound;
        doc["l1_plane"] = symbol.l1_on_plane();
        emit(doc.dump());
    } else {
        std::cout << save_spectrum_csv(sequence, symbol.l1_on_plane());
    }
    return 0;
}

int run_norm(const RunConfig& config) {
    const RadialSymbol symbol(load_symbol_file(config.input_path));
    const NormEstimate estimate =
        norm_estimate(symbol, config.truncation_tol, config.quadrature_tol);
    const bool strict = estimate.bound - estimate.norm_lb > 1e-10;
    if (config.output_format == "csv") {
        std::string out = "norm_lb,bound,strict,l1_plane,witness_p,p_searched,tail_bound\n";
        out += format_double(estimate.norm_lb) + ",";
        out += format_double(estimate.bound) + ",";
        out += (strict ? "true," : "false,");
        out += format_double(symbol.l1_on_plane()) + ",";
        out += std::to_string(estimate.report.witness_n) + ",";
        out += std::to_string(estimate.report.n_searched) + ",";
        out += format_double(estimate.report.truncation_bound);
        emit(out);
    } else {
        nlohmann::ordered_json doc;
        doc["norm_lb"] = estimate.norm_lb;
        doc["bound"] = estimate.bound;
        doc["strict"] = strict;
        doc["l1_plane"] = symbol.l1_on_plane();
        doc["witness_p"] = estimate.report.witness_n;
        doc["p_searched"] = estimate.report.n_searched;
        doc["tail_bound"] = estimate.report.truncation_bound;
        emit(doc.dump());
    }
    return 0;
}

int run_qform(const RunConfig& config) {
    const RadialSymbol symbol(load_symbol_file(config.input_path));
    std::ifstream coeff_stream(config.coeffs_path);
    if (!coeff_stream) {
        throw ValidationError("cannot open coefficients file: " + config.coeffs_path);
    }
    const FockCoefficients coefficients = load_coefficients_csv(coeff_stream);
    const double value = quadratic_form(symbol, coefficients, config.quadrature_tol);
    const NormEstimate estimate =
        norm_estimate(symbol, config.truncation_tol, config.quadrature_tol);
    if (config.output_format == "csv") {
        std::string out = "value,norm_lb,bound\n";
        out += format_double(value) + ",";
        out += format_double(estimate.norm_lb) + ",";
        out += format_double(estimate.bound);
        emit(out);
    } else {
        nlohmann::ordered_json doc;
        doc["value"] = value;
        doc["norm_lb"] = estimate.norm_lb;
        doc["bound"] = estimate.bound;
        emit(doc.dump());
    }
    return 0;
}

// ---------------------------------------------------------------------------
// Self-check: the sharpness and identity families plus a seeded randomized
// dominance run. Any failure exits with the numerical-bug sentinel code.
// ---------------------------------------------------------------------------

int run_self_check(const RunConfig& config) {
    int failures = 0;
    const auto report_line = [&](const char* name, bool ok, const std::string& extra) {
        std::cout << "self-check " << name << ": " << (ok ? "PASS" : "FAIL");
        if (!extra.empty()) {
            std::cout << " (" << extra << ")";
        }
        std::cout << "\n";
        if (!ok) {
            ++failures;
        }
    };

    {
        double worst = 0.0;
        for (std::int64_t k = 0; k <= 64; ++k) {
            for (double length : {0.1, 0.5, 1.0, 2.0, 5.0, 10.0, 20.0, 50.0}) {
                long double term = 1.0L;
                long double sum = 1.0L;
                for (std::int64_t j = 1; j <= k; ++j) {
                    term *= static_cast<long double>(length) / static_cast<long double>(j);
                    sum += term;
                }
                const double reference = static_cast<double>(
                    1.0L - std::exp(static_cast<long double>(-length)) * sum);
                worst = std::max(worst, std::abs(reg_lower_gamma(k, length) - reference));
            }
        }
        report_line("survival-identity", worst <= 1e-12,
                    "max defect " + format_double(worst));
    }

    {
        bool ok = true;
        double worst = 0.0;
        for (int i = 1; i <= 30 && ok; ++i) {
            const double length = i;
            const StepSymbol box(std::vector<StepPiece>{StepPiece{0.0, length, 1.0}});
            const LemmaReport report = check_lemma_1_3(Symbol(box), 1e-12);
            ok = report.witness_n == 0 && std::abs(report.slack) <= 1e-12;
            worst = std::max(worst, std::abs(report.slack));
        }
        report_line("sharpness-family", ok, "max |slack| " + format_double(worst));
    }

    {
        double worst = 0.0;
        for (double radius : {0.5, 1.0, 2.0}) {
            const RadialSymbol disk(
                Symbol(StepSymbol(std::vector<StepPiece>{StepPiece{0.0, radius, 1.0}})));
            const NormEstimate estimate = norm_estimate(disk);
            worst = std::max(worst, std::abs(estimate.norm_lb - estimate.bound));
        }
        report_line("disk-sharpness", worst <= 1e-12, "max defect " + format_double(worst));
    }

    {
        bool ok = true;
        for (double length : {1.0, 5.0, 20.0}) {
            double previous_log = log_reg_lower_gamma(0, length);
            for (std::int64_t n = 1; n <= 500 && ok; ++n) {
                const double current_log = log_reg_lower_gamma(n, length);
                ok = current_log < previous_log;
                previous_log = current_log;
            }
        }
        report_line("monotone-decrease", ok, "");
    }

    {
        std::mt19937_64 rng(config.seed);
        std::uniform_int_distribution<std::int64_t> order(0, 100);
        bool ok = true;
        for (int trial = 0; trial < config.trials && ok; ++trial) {
            const StepSymbol symbol = [&rng] {
                std::uniform_int_distribution<int> pieces(1, 8);
                std::uniform_real_distribution<double> point(0.0, 50.0);
                std::uniform_real_distribution<double> height(0.0, 1.0);
                const int count = pieces(rng);
                std::vector<double> endpoints;
                for (int i = 0; i < 2 * count; ++i) {
                    endpoints.push_back(point(rng));
                }
                std::sort(endpoints.begin(), endpoints.end());
                std::vector<StepPiece> result;
                for (int i = 0; i < count; ++i) {
                    const double a = endpoints[2 * static_cast<std::size_t>(i)];
                    const double b = endpoints[2 * static_cast<std::size_t>(i) + 1];
                    if (b > a) {
                        result.push_back(StepPiece{a, b, height(rng)});
                    }
                }
                return StepSymbol(std::move(result));
            }();
            const std::int64_t n = order(rng);
            ok = verify_rearrangement(symbol, n).slack >= -1e-10 &&
                 check_lemma_1_2(symbol, n).slack >= -1e-10 &&
                 check_lemma_1_3(Symbol(symbol), 1e-12).slack >= -1e-10;
        }
        report_line("randomized-dominance", ok,
                    std::to_string(config.trials) + " trials, seed " +
                        std::to_string(config.seed));
    }

    std::cout << (failures == 0 ? "self-check: all suites passed"
                                : "self-check: FAILURES detected")
              << "\n";
    return failures == 0 ? 0 : 3;
}

} // namespace

int main(int argc, char** argv) {
    RunConfig config;
    bool self_check = false;

    CLI::App app{"Kernel-mass inequalities and radial Toeplitz norm estimates "
                 "on the Fock space"};
    app.require_subcommand(0, 1);
    app.add_flag("--self-check", self_check, "run the built-in verification suites");
    app.add_option("--seed", config.seed, "seed for randomized self-check runs");
    app.add_option("--trials", config.trials, "trial count for randomized self-check runs");

    CLI::App* verify = app.add_subcommand("verify-lemma", "evaluate one inequality instance");
    verify->add_option("--lemma", config.lemma, "which inequality: 1.1, 1.2 or 1.3")
        ->required();
    verify->add_option("--symbol", config.input_path, "symbol file (.json step, .csv tabulated)")
        ->required();
    verify->add_option("--n", config.n, "kernel order (lemmas 1.1/1.2 only)");
    verify->add_option("--tol", config.truncation_tol, "truncation tolerance (default 1e-12)");
    verify->add_option("--quad-tol", config.quadrature_tol,
                       "quadrature tolerance (default 1e-10)");
    verify->add_option("--truncate-quantile", config.truncate_quantile,
                       "clip support at this mass quantile, reporting the discarded L1")
        ->check(CLI::Range(0.0, 1.0));
    verify->add_option("--format", config.output_format, "json or csv")
        ->check(CLI::IsMember({"json", "csv"}));

    CLI::App* extremal_cmd = app.add_subcommand("extremal", "best window of given length");
    extremal_cmd->add_option("--n", config.n, "kernel order")->required();
    extremal_cmd->add_option("--length", config.length, "window length (the L1 budget)")
        ->required();
    extremal_cmd->add_option("--format", config.output_format, "json or csv")
        ->check(CLI::IsMember({"json", "csv"}));

    CLI::App* sweep_cmd = app.add_subcommand("sweep", "kernel integrals for n = 0..n_max");
    sweep_cmd->add_option("--symbol", config.input_path, "symbol file")->required();
    sweep_cmd->add_option("--n-max", config.n_max, "largest order")->required();
    sweep_cmd->add_option("--quad-tol", config.quadrature_tol, "quadrature tolerance");
    sweep_cmd->add_option("--format", config.output_format, "csv (default) or json")
        ->check(CLI::IsMember({"json", "csv"}));

    CLI::App* spectrum_cmd =
        app.add_subcommand("spectrum", "eigenvalue sequence of a radial symbol");
    spectrum_cmd->add_option("--radial", config.input_path, "radial profile file")->required();
    spectrum_cmd->add_option("--tol", config.truncation_tol, "truncation tolerance");
    spectrum_cmd->add_option("--p-max", config.p_max, "extend the sequence to at least this p");
    spectrum_cmd->add_option("--quad-tol", config.quadrature_tol, "quadrature tolerance");
    spectrum_cmd->add_option("--format", config.output_format, "csv (default) or json")
        ->check(CLI::IsMember({"json", "csv"}));

    CLI::App* norm_cmd = app.add_subcommand("norm", "operator norm estimate vs the L1 bound");
    norm_cmd->add_option("--radial", config.input_path, "radial profile file")->required();
    norm_cmd->add_option("--tol", config.truncation_tol, "truncation tolerance");
    norm_cmd->add_option("--quad-tol", config.quadrature_tol, "quadrature tolerance");
    norm_cmd->add_option("--format", config.output_format, "json or csv")
        ->check(CLI::IsMember({"json", "csv"}));

    CLI::App* qform_cmd =
        app.add_subcommand("qform", "quadratic form of unit coefficients against the symbol");
    qform_cmd->add_option("--radial", config.input_path, "radial profile file")->required();
    qform_cmd->add_option("--coeffs", config.coeffs_path, "coefficients CSV (p,re,im)")
        ->required();
    qform_cmd->add_option("--tol", config.truncation_tol, "truncation tolerance");
    qform_cmd->add_option("--quad-tol", config.quadrature_tol, "quadrature tolerance");
    qform_cmd->add_option("--format", config.output_format, "json or csv")
        ->check(CLI::IsMember({"json", "csv"}));

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& err) {
        return app.exit(err);
    } catch (const CLI::ParseError& err) {
        app.exit(err);
        return 2;
    }

    try {
        if (self_check) {
            return run_self_check(config);
        }
        if (verify->parsed()) {
            config.subcommand = "verify-lemma";
            return run_verify_lemma(config);
        }
        if (extremal_cmd->parsed()) {
            config.subcommand = "extremal";
            return run_extremal(config);
        }
        if (sweep_cmd->parsed()) {
            config.subcommand = "sweep";
            if (!sweep_cmd->count("--format")) {
                config.output_format = "csv";
            }
            return run_sweep(config);
        }
        if (spectrum_cmd->parsed()) {
            config.subcommand = "spectrum";
            if (!spectrum_cmd->count("--format")) {
                config.output_format = "csv";
            }
            return run_spectrum(config);
        }
        if (norm_cmd->parsed()) {
            config.subcommand = "norm";
            return run_norm(config);
        }
        if (qform_cmd->parsed()) {
            config.subcommand = "qform";
            return run_qform(config);
        }
        std::cerr << app.help();
        return 2;
    } catch (const SlackViolation& err) {
        std::cerr << "slack violation (numerical bug sentinel): " << err.what() << "\n";
        return 3;
    } catch (const ValidationError& err) {
        std::cerr << "validation error: " << err.what() << "\n";
        return 2;
    } catch (const ParseError& err) {
        std::cerr << "parse error: " << err.what() << "\n";
        return 2;
    } catch (const std::domain_error& err) {
        std::cerr << "domain error: " << err.what() << "\n";
        return 2;
    } catch (const std::exception& err) {
        std::cerr << "error: " << err.what() << "\n";
        return 1;
    }
}
