#pragma once

#include <complex>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "fockrad/report.hpp"
#include "fockrad/symbols.hpp"

namespace fockrad {

/// Radial Toeplitz symbol on the plane: |F(z)| = g(|z|) with the profile g
/// given as a validated symbol in the radius variable r. The change of
/// variables t = pi r^2 turns its eigenvalue integrals into kernel integrals,
/// and its plane L1 norm is 2 pi int g(r) r dr (closed form, exact for step
/// profiles).
class RadialSymbol {
public:
    explicit RadialSymbol(Symbol radial_profile);

    const Symbol& radial() const noexcept { return radial_; }
    double l1_on_plane() const noexcept { return l1_plane_; }
    double t_support_end() const noexcept { return t_support_end_; }

private:
    Symbol radial_;
    double l1_plane_ = 0.0;
    double t_support_end_ = 0.0;
};

/// Exact change of variables for step profiles: a radius piece (a, b, eps)
/// becomes the t-piece (pi a^2, pi b^2, eps). The L1 norm of the result is
/// the plane L1 norm of the radial symbol.
StepSymbol to_t_variable(const StepSymbol& radial);

/// Eigenvalue gamma_p = int_0^inf g(sqrt(t/pi)) h_p(t) dt of the diagonal
/// Toeplitz operator. Exact interval masses for step profiles; adaptive
/// quadrature of the composed integrand otherwise. Stable up to p = 1e6.
double eigenvalue(const RadialSymbol& symbol, std::int64_t p, double quadrature_tol = 1e-10);

/// Diagonal of the operator for p = 0..max_order(), plus a certified bound on
/// every eigenvalue beyond it.
struct EigenvalueSequence {
    std::vector<double> gammas;
    double tail_bound = 0.0;

    std::int64_t max_order() const noexcept {
        return static_cast<std::int64_t>(gammas.size()) - 1;
    }
};

/// Computes the diagonal up to the certified truncation point for `tol` (the
/// least P with P(P+1, t_support_end) <= tol). `min_max_order`, when given,
/// only extends the sequence further; the tail bound always refers to the
/// last computed order.
EigenvalueSequence spectrum(const RadialSymbol& symbol, double tol = 1e-12,
                            std::optional<std::int64_t> min_max_order = std::nullopt,
                            double quadrature_tol = 1e-10);

/// Operator norm report: for a nonnegative radial symbol the operator is
/// diagonal with entries gamma_p, so max_p gamma_p is the norm up to the
/// certified tail. The report states it against 1 - exp(-l1_on_plane).
struct NormEstimate {
    double norm_lb = 0.0;
    double bound = 0.0;
    LemmaReport report;
};

NormEstimate norm_estimate(const RadialSymbol& symbol, double tol = 1e-12,
                           double quadrature_tol = 1e-10);

/// Coefficients b_p of a Fock-space vector in the orthonormal monomial basis.
class FockCoefficients {
public:
    FockCoefficients() = default;
    explicit FockCoefficients(std::vector<std::complex<double>> values);

    const std::vector<std::complex<double>>& values() const noexcept { return values_; }
    std::size_t size() const noexcept { return values_.size(); }

    /// sum_p |b_p|^2.
    double norm_sq() const noexcept;

    /// Scaled copy with norm_sq() == 1. Throws ValidationError on the zero
    /// vector.
    FockCoefficients normalized() const;

    friend bool operator==(const FockCoefficients&, const FockCoefficients&) = default;

private:
    std::vector<std::complex<double>> values_;
};

/// sum_p |b_p|^2 gamma_p for a unit vector; requires |norm_sq - 1| <= 1e-12.
double quadratic_form(const RadialSymbol& symbol, const FockCoefficients& coefficients,
                      double quadrature_tol = 1e-10);

/// Diagonal action (gamma_p b_p)_p; the quadratic form is the inner product
/// of the input with this image.
FockCoefficients apply_diagonal(const RadialSymbol& symbol, const FockCoefficients& coefficients,
                                double quadrature_tol = 1e-10);

// CSV interchange: eigenvalues as "p,gamma" rows with a trailing
// "# tail_bound=... l1_plane=..." line; coefficients as "p,re,im" rows.
std::string save_spectrum_csv(const EigenvalueSequence& sequence, double l1_plane);
std::string save_coefficients_csv(const FockCoefficients& coefficients);
FockCoefficients load_coefficients_csv(std::istream& in);

} // namespace fockrad
