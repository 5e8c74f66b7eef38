#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <variant>
#include <vector>

#include "fockrad/errors.hpp"

namespace fockrad {

struct StepPiece {
    double a = 0.0;
    double b = 0.0;
    double eps = 0.0;

    friend bool operator==(const StepPiece&, const StepPiece&) = default;
};

/// Finite union of disjoint intervals [a_k, b_k] with heights eps_k in [0,1],
/// sorted so b_k <= a_{k+1}. Immutable once constructed; the constructor
/// validates every invariant and throws ValidationError naming the first
/// violation. The default-constructed symbol is the zero symbol.
class StepSymbol {
public:
    StepSymbol() = default;
    explicit StepSymbol(std::vector<StepPiece> pieces);

    const std::vector<StepPiece>& pieces() const noexcept { return pieces_; }
    bool empty() const noexcept { return pieces_.empty(); }

    /// Exact sum eps_k * (b_k - a_k).
    double l1_norm() const noexcept { return l1_; }

    /// Right end of the last piece; 0 for the zero symbol.
    double support_end() const noexcept { return pieces_.empty() ? 0.0 : pieces_.back().b; }

    /// True iff every height is exactly 1 (an indicator of a union of intervals).
    bool all_unit_height() const noexcept;

    friend bool operator==(const StepSymbol&, const StepSymbol&) = default;

private:
    std::vector<StepPiece> pieces_;
    double l1_ = 0.0;
};

enum class Interpolation { PiecewiseConstantLeft, PiecewiseLinear };

/// Grid-sampled symbol g with a declared interpolation rule. Values live in
/// [0,1]; g is zero left of the grid and beyond support_end, and holds the
/// last sample constant on (s_M, support_end].
class TabulatedSymbol {
public:
    TabulatedSymbol(std::vector<double> grid, std::vector<double> values,
                    Interpolation interpolation, double support_end);
    TabulatedSymbol(std::vector<double> grid, std::vector<double> values,
                    Interpolation interpolation = Interpolation::PiecewiseLinear);

    double operator()(double s) const;

    const std::vector<double>& grid() const noexcept { return grid_; }
    const std::vector<double>& values() const noexcept { return values_; }
    Interpolation interpolation() const noexcept { return interpolation_; }
    double support_end() const noexcept { return support_end_; }

    /// L1 norm under the declared interpolation rule (closed form, no
    /// quadrature).
    double l1_norm() const noexcept { return l1_; }

    friend bool operator==(const TabulatedSymbol&, const TabulatedSymbol&) = default;

private:
    std::vector<double> grid_;
    std::vector<double> values_;
    Interpolation interpolation_ = Interpolation::PiecewiseLinear;
    double support_end_ = 0.0;
    double l1_ = 0.0;
};

using Symbol = std::variant<StepSymbol, TabulatedSymbol>;

double l1_norm(const Symbol& symbol);
double support_end(const Symbol& symbol);

/// (1/n!) int_0^inf s^n e^{-s} g(s) ds.
/// Step symbols: the exact value sum_k eps_k * interval_mass(n, a_k, b_k),
/// no quadrature error beyond the gamma evaluations. Tabulated symbols:
/// adaptive quadrature of h_n * g at the requested absolute tolerance, with
/// panels seeded at every grid knot and at s = n -+ 3 sqrt(n).
double weighted_kernel_integral(const StepSymbol& symbol, std::int64_t n);
double weighted_kernel_integral(const TabulatedSymbol& symbol, std::int64_t n,
                                double abs_tol = 1e-10);
double weighted_kernel_integral(const Symbol& symbol, std::int64_t n, double abs_tol = 1e-10);

// ---------------------------------------------------------------------------
// File formats.
//
// Step symbols travel as JSON: {"type":"step","pieces":[{"a":..,"b":..,"eps":..}]}
// Tabulated symbols travel as CSV with header "s,g", one "s,g" row per grid
// point and a trailing metadata line "# interpolation=linear support_end=40".
// Writers are byte-deterministic: stable field order and shortest
// round-trip decimal rendering.
// ---------------------------------------------------------------------------

enum class SymbolFormat { StepJson, TabulatedCsv };

std::string save_symbol_json(const StepSymbol& symbol);
std::string save_symbol_csv(const TabulatedSymbol& symbol);
std::string save_symbol(const Symbol& symbol);

StepSymbol load_step_symbol_json(std::istream& in);
TabulatedSymbol load_tabulated_symbol_csv(std::istream& in);
Symbol load_symbol(std::istream& in, SymbolFormat format);

/// Loads from a file, picking the format by extension: ".json" -> step JSON,
/// ".csv" -> tabulated CSV.
Symbol load_symbol_file(const std::string& path);

/// Shortest decimal rendering that parses back to the same double.
std::string format_double(double value);

} // namespace fockrad
