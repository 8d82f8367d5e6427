#ifndef FDBEC_SPECTRUM_HPP
#define FDBEC_SPECTRUM_HPP

#include <string>
#include <vector>

#include "fdbec/params.hpp"
#include "fdbec/steady_state.hpp"

namespace fdbec {

/// Two candidate linearizations of the cubic drift around the steady state.
/// `paper_as_printed` evaluates the published coefficient expressions
/// verbatim; `rederived` uses the exact Wirtinger Jacobian of the drift.
/// The two differ in a single term of A (see linearization_coeffs) and the
/// mean-field relaxation oracle arbitrates empirically between them.
enum class LinearizationMode { paper_as_printed, rederived };

const char* to_string(LinearizationMode mode);
LinearizationMode mode_from_string(const std::string& s);

/// Linear-fluctuation coefficients:  d(db)/dt = A db + B db+ + noise.
struct FluctuationCoeffs {
    Complex a_coef;
    Complex b_coef;
    LinearizationMode mode = LinearizationMode::paper_as_printed;

    double drift_trace() const { return 2.0 * a_coef.real(); }
    double drift_determinant() const { return std::norm(a_coef) - std::norm(b_coef); }
};

/// Coefficients at a converged steady state. With em = eta - kappa:
///   B = i sqrt(N) g em beta + 2i omega_bar em beta^2        (both modes)
///   A = -i Delta - Gamma + i sqrt(N) g em (beta + beta*)  + last term:
///     paper_as_printed: - 4i omega_bar em beta^2
///     rederived:        + 4i omega_bar em |beta|^2   (the drift Jacobian)
/// The modes coincide exactly when beta is purely imaginary.
FluctuationCoeffs linearization_coeffs(const SteadyState& ss, const PhysicalParams& p,
                                       LinearizationMode mode);

/// Characteristic function |A|^2 - |B|^2 - w^2 - i w (A + A*). Zeros of its
/// modulus locate the spectral peaks. Fourier convention is e^{-i w t}
/// throughout the library (time derivative -> +i w).
Complex char_function_E(double omega, const FluctuationCoeffs& c);

/// Routh-Hurwitz stability of the 2x2 drift [[A,B],[B*,A*]]:
/// Re(A) < 0 and |A|^2 - |B|^2 > 0.
bool stability_check(const FluctuationCoeffs& c);

/// Uniform frequency grid in gamma-units; strictly increasing, n >= 2.
std::vector<double> frequency_grid(double lo, double hi, int n);
std::vector<double> default_frequency_grid();  // 2001 points on [-50, 50]

/// Scattered-light spectrum S(w) = |B|^2 / |E(w)|^2 on the given grid,
/// plus the 2*Gamma-normalized variant that restores the input-noise
/// prefactor dropped by the bare formula.
struct SpectrumResult {
    std::vector<double> omega_over_gamma;
    std::vector<double> s_values;
    std::vector<double> s_normalized;  // 2 Gamma * s_values
    PhysicalParams params;
    FluctuationCoeffs coeffs;
    bool stable = false;
};
SpectrumResult spectrum_S(const std::vector<double>& grid, const SteadyState& ss,
                          const PhysicalParams& p, LinearizationMode mode);

} // namespace fdbec

#endif
