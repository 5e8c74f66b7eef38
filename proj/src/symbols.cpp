#include "fockrad/symbols.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <istream>
#include <sstream>
#include <system_error>

#include "fockrad/gamma_kernel.hpp"
#include "fockrad/quadrature.hpp"

#include <json.hpp>

namespace fockrad {

namespace {

bool finite_nonneg(double v) { return std::isfinite(v) && v >= 0.0; }

std::string piece_label(std::size_t k) { return "piece " + std::to_string(k); }

} // namespace

StepSymbol::StepSymbol(std::vector<StepPiece> pieces) : pieces_(std::move(pieces)) {
    double prev_end = 0.0;
    for (std::size_t k = 0; k < pieces_.size(); ++k) {
        const StepPiece& p = pieces_[k];
        if (!finite_nonneg(p.a)) {
            throw ValidationError(piece_label(k) + ": left endpoint must be finite and >= 0");
        }
        if (!std::isfinite(p.b) || !(p.b > p.a)) {
            throw ValidationError(piece_label(k) + ": right endpoint must satisfy b > a");
        }
        if (!std::isfinite(p.eps) || p.eps < 0.0) {
            throw ValidationError(piece_label(k) + ": height is negative");
        }
        if (p.eps > 1.0) {
            throw ValidationError(piece_label(k) + ": height exceeds 1");
        }
        if (k > 0 && p.a < prev_end) {
            throw ValidationError(piece_label(k) + ": overlaps or is unsorted against piece " +
                                  std::to_string(k - 1));
        }
        prev_end = p.b;
        l1_ += p.eps * (p.b - p.a);
    }
}

bool StepSymbol::all_unit_height() const noexcept {
    return std::all_of(pieces_.begin(), pieces_.end(),
                       [](const StepPiece& p) { return p.eps == 1.0; });
}

TabulatedSymbol::TabulatedSymbol(std::vector<double> grid, std::vector<double> values,
                                 Interpolation interpolation, double support_end)
    : grid_(std::move(grid)), values_(std::move(values)), interpolation_(interpolation),
      support_end_(support_end) {
    if (grid_.empty()) {
        throw ValidationError("tabulated symbol: grid is empty");
    }
    if (grid_.size() != values_.size()) {
        throw ValidationError("tabulated symbol: grid and value counts differ");
    }
    for (std::size_t i = 0; i < grid_.size(); ++i) {
        if (!finite_nonneg(grid_[i])) {
            throw ValidationError("grid point " + std::to_string(i) +
                                  ": must be finite and >= 0");
        }
        if (i > 0 && !(grid_[i] > grid_[i - 1])) {
            throw ValidationError("grid point " + std::to_string(i) +
                                  ": grid is not strictly increasing");
        }
        if (!std::isfinite(values_[i]) || values_[i] < 0.0 || values_[i] > 1.0) {
            throw ValidationError("value " + std::to_string(i) + ": height out of [0,1]");
        }
    }
    if (!std::isfinite(support_end_) || support_end_ < grid_.back()) {
        throw ValidationError("support_end must be finite and >= the last grid point");
    }

    // Closed-form L1 under the declared interpolation rule.
    for (std::size_t i = 0; i + 1 < grid_.size(); ++i) {
        const double width = grid_[i + 1] - grid_[i];
        if (interpolation_ == Interpolation::PiecewiseLinear) {
            l1_ += 0.5 * (values_[i] + values_[i + 1]) * width;
        } else {
            l1_ += values_[i] * width;
        }
    }
    l1_ += values_.back() * (support_end_ - grid_.back());
}

TabulatedSymbol::TabulatedSymbol(std::vector<double> grid, std::vector<double> values,
                                 Interpolation interpolation) {
    const double default_support = grid.empty() ? 0.0 : grid.back();
    *this = TabulatedSymbol(std::move(grid), std::move(values), interpolation, default_support);
}

double TabulatedSymbol::operator()(double s) const {
    if (!(s >= grid_.front()) || s > support_end_) {
        return 0.0;
    }
    if (s >= grid_.back()) {
        return values_.back();
    }
    const auto it = std::upper_bound(grid_.begin(), grid_.end(), s);
    const std::size_t i = static_cast<std::size_t>(it - grid_.begin()) - 1;
    if (interpolation_ == Interpolation::PiecewiseConstantLeft) {
        return values_[i];
    }
    const double t = (s - grid_[i]) / (grid_[i + 1] - grid_[i]);
    return values_[i] + t * (values_[i + 1] - values_[i]);
}

double l1_norm(const Symbol& symbol) {
    return std::visit([](const auto& s) { return s.l1_norm(); }, symbol);
}

double support_end(const Symbol& symbol) {
    return std::visit([](const auto& s) { return s.support_end(); }, symbol);
}

double weighted_kernel_integral(const StepSymbol& symbol, std::int64_t n) {
    double total = 0.0;
    for (const StepPiece& p : symbol.pieces()) {
        if (p.eps > 0.0) {
            total += p.eps * interval_mass(n, p.a, p.b).mass;
        }
    }
    return total;
}

double weighted_kernel_integral(const TabulatedSymbol& symbol, std::int64_t n, double abs_tol) {
    const double lo = symbol.grid().front();
    const double hi = symbol.support_end();
    if (lo >= hi) {
        return 0.0; // single sample with zero-width support
    }
    std::vector<double> seeds(symbol.grid().begin(), symbol.grid().end());
    const double center = static_cast<double>(n);
    const double spread = 3.0 * std::sqrt(center);
    seeds.push_back(center - spread);
    seeds.push_back(center);
    seeds.push_back(center + spread);
    QuadratureOptions options;
    options.abs_tol = abs_tol;
    return integrate_adaptive([&](double s) { return symbol(s) * kernel(n, s); }, lo, hi,
                              options, seeds);
}

double weighted_kernel_integral(const Symbol& symbol, std::int64_t n, double abs_tol) {
    if (const auto* step = std::get_if<StepSymbol>(&symbol)) {
        return weighted_kernel_integral(*step, n);
    }
    return weighted_kernel_integral(std::get<TabulatedSymbol>(symbol), n, abs_tol);
}

// ---------------------------------------------------------------------------
// Serialization.
// ---------------------------------------------------------------------------

std::string format_double(double value) {
    char buffer[32];
    const auto result = std::to_chars(buffer, buffer + sizeof(buffer), value);
    return std::string(buffer, result.ptr);
}

std::string save_symbol_json(const StepSymbol& symbol) {
    nlohmann::ordered_json doc;
    doc["type"] = "step";
    doc["pieces"] = nlohmann::ordered_json::array();
    for (const StepPiece& p : symbol.pieces()) {
        nlohmann::ordered_json piece;
        piece["a"] = p.a;
        piece["b"] = p.b;
        piece["eps"] = p.eps;
        doc["pieces"].push_back(std::move(piece));
    }
    return doc.dump();
}

std::string save_symbol_csv(const TabulatedSymbol& symbol) {
    std::string out = "s,g\n";
    for (std::size_t i = 0; i < symbol.grid().size(); ++i) {
        out += format_double(symbol.grid()[i]);
        out += ',';
        out += format_double(symbol.values()[i]);
        out += '\n';
    }
    out += "# interpolation=";
    out += symbol.interpolation() == Interpolation::PiecewiseLinear ? "linear" : "constant-left";
    out += " support_end=";
    out += format_double(symbol.support_end());
    out += '\n';
    return out;
}

std::string save_symbol(const Symbol& symbol) {
    if (const auto* step = std::get_if<StepSymbol>(&symbol)) {
        return save_symbol_json(*step);
    }
    return save_symbol_csv(std::get<TabulatedSymbol>(symbol));
}

StepSymbol load_step_symbol_json(std::istream& in) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(in);
    } catch (const nlohmann::json::parse_error& err) {
        throw ParseError(1, std::string("invalid JSON: ") + err.what());
    }
    if (!doc.is_object() || !doc.contains("type") || doc["type"] != "step") {
        throw ParseError(1, "expected a step symbol document with \"type\":\"step\"");
    }
    if (!doc.contains("pieces") || !doc["pieces"].is_array()) {
        throw ParseError(1, "expected a \"pieces\" array");
    }
    std::vector<StepPiece> pieces;
    pieces.reserve(doc["pieces"].size());
    std::size_t index = 0;
    for (const auto& item : doc["pieces"]) {
        if (!item.is_object()) {
            throw ParseError(1, "pieces[" + std::to_string(index) + "]: expected an object");
        }
        for (const char* field : {"a", "b", "eps"}) {
            if (!item.contains(field) || !item[field].is_number()) {
                throw ParseError(1, "pieces[" + std::to_string(index) + "]: field \"" + field +
                                        "\" missing or not a number");
            }
        }
        for (const auto& [key, value] : item.items()) {
            (void)value;
            if (key != "a" && key != "b" && key != "eps") {
                throw ParseError(1, "pieces[" + std::to_string(index) + "]: unknown field \"" +
                                        key + "\"");
            }
        }
        pieces.push_back(StepPiece{item["a"].get<double>(), item["b"].get<double>(),
                                   item["eps"].get<double>()});
        ++index;
    }
    return StepSymbol(std::move(pieces));
}

namespace {

double parse_field(const std::string& text, std::size_t line, const char* what) {
    double value = 0.0;
    const char* first = text.data();
    const char* last = text.data() + text.size();
    while (first != last && (*first == ' ' || *first == '\t')) {
        ++first;
    }
    const auto result = std::from_chars(first, last, value);
    if (result.ec != std::errc{} || result.ptr != last) {
        throw ParseError(line, std::string("field \"") + what + "\": not a finite decimal: \"" +
                                   text + "\"");
    }
    if (!std::isfinite(value)) {
        throw ParseError(line, std::string("field \"") + what + "\": not finite");
    }
    return value;
}

void parse_metadata(const std::string& line_text, std::size_t line_no,
                    Interpolation& interpolation, double& support_end, bool& have_support_end) {
    std::istringstream tokens(line_text.substr(1));
    std::string token;
    while (tokens >> token) {
        const auto eq = token.find('=');
        if (eq == std::string::npos) {
            throw ParseError(line_no, "metadata token \"" + token + "\" is not key=value");
        }
        const std::string key = token.substr(0, eq);
        const std::string value = token.substr(eq + 1);
        if (key == "interpolation") {
            if (value == "linear") {
                interpolation = Interpolation::PiecewiseLinear;
            } else if (value == "constant-left") {
                interpolation = Interpolation::PiecewiseConstantLeft;
            } else {
                throw ParseError(line_no, "unknown interpolation \"" + value + "\"");
            }
        } else if (key == "support_end") {
            support_end = parse_field(value, line_no, "support_end");
            have_support_end = true;
        } else {
            throw ParseError(line_no, "unknown metadata key \"" + key + "\"");
        }
    }
}

} // namespace

TabulatedSymbol load_tabulated_symbol_csv(std::istream& in) {
    std::string line;
    std::size_t line_no = 0;
    std::vector<double> grid;
    std::vector<double> values;
    Interpolation interpolation = Interpolation::PiecewiseLinear;
    double support_end = 0.0;
    bool have_support_end = false;
    bool have_header = false;

    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') {
            line.pop_back();
        }
        if (line.empty()) {
            continue;
        }
        if (line[0] == '#') {
            parse_metadata(line, line_no, interpolation, support_end, have_support_end);
            continue;
        }
        if (!have_header) {
            if (line != "s,g") {
                throw ParseError(line_no, "expected header \"s,g\"");
            }
            have_header = true;
            continue;
        }
        const auto comma = line.find(',');
        if (comma == std::string::npos || line.find(',', comma + 1) != std::string::npos) {
            throw ParseError(line_no, "expected exactly two comma-separated fields");
        }
        grid.push_back(parse_field(line.substr(0, comma), line_no, "s"));
        values.push_back(parse_field(line.substr(comma + 1), line_no, "g"));
        if (values.back() < 0.0 || values.back() > 1.0) {
            throw ParseError(line_no, "height out of [0,1]");
        }
    }
    if (!have_header) {
        throw ParseError(line_no, "missing header \"s,g\"");
    }
    if (grid.empty()) {
        throw ParseError(line_no, "no data rows");
    }
    if (!have_support_end) {
        support_end = grid.back();
    }
    return TabulatedSymbol(std::move(grid), std::move(values), interpolation, support_end);
}

Symbol load_symbol(std::istream& in, SymbolFormat format) {
    if (format == SymbolFormat::StepJson) {
        return Symbol(load_step_symbol_json(in));
    }
    return Symbol(load_tabulated_symbol_csv(in));
}

Symbol load_symbol_file(const std::string& path) {
    const std::filesystem::path fs_path(path);
    const std::string ext = fs_path.extension().string();
    SymbolFormat format;
    if (ext == ".json") {
        format = SymbolFormat::StepJson;
    } else if (ext == ".csv") {
        format = SymbolFormat::TabulatedCsv;
    } else {
        throw ValidationError("cannot infer symbol format from extension \"" + ext +
                              "\" (expected .json or .csv)");
    }
    std::ifstream in(fs_path);
    if (!in) {
        throw ValidationError("cannot open symbol file: " + path);
    }
    return load_symbol(in, format);
}

} // namespace fockrad
