#include "fdbec/spectrum.hpp"

#include <cmath>

namespace fdbec {

const char* to_string(LinearizationMode mode) {
    return mode == LinearizationMode::paper_as_printed ? "paper" : "rederived";
}

LinearizationMode mode_from_string(const std::string& s) {
    if (s == "paper" || s == "paper_as_printed") return LinearizationMode::paper_as_printed;
    if (s == "rederived") return LinearizationMode::rederived;
    throw std::invalid_argument("unknown linearization mode: " + s);
}

FluctuationCoeffs linearization_coeffs(const SteadyState& ss, const PhysicalParams& p,
                                       LinearizationMode mode) {
    if (!ss.converged)
        throw std::invalid_argument("linearization_coeffs: steady state not converged");
    const Complex i(0.0, 1.0);
    const Complex b = ss.beta;
    const double em = p.eta() - p.kappa;
    const double root_n_g = std::sqrt(static_cast<double>(p.n_atoms)) * p.g;

    FluctuationCoeffs c;
    c.mode = mode;
    c.b_coef = i * root_n_g * em * b + 2.0 * i * p.omega_bar * em * b * b;
    const Complex a_common =
        -i * p.detuning() - p.big_gamma() + i * root_n_g * em * (b + std::conj(b));
    if (mode == LinearizationMode::paper_as_printed) {
        c.a_coef = a_common - 4.0 * i * p.omega_bar * em * b * b;
    } else {
        // exact Jacobian: matches drift_derivatives(beta).d_dbeta
        c.a_coef = a_common + 4.0 * i * p.omega_bar * em * std::norm(b);
    }
    return c;
}

Complex char_function_E(double omega, const FluctuationCoeffs& c) {
    return Complex(std::norm(c.a_coef) - std::norm(c.b_coef) - omega * omega,
                   -omega * 2.0 * c.a_coef.real());
}

bool stability_check(const FluctuationCoeffs& c) {
    return c.a_coef.real() < 0.0 && c.drift_determinant() > 0.0;
}

std::vector<double> frequency_grid(double lo, double hi, int n) {
    if (!(lo < hi) || n < 2)
        throw std::invalid_argument("frequency_grid: need lo < hi and n >= 2");
    if (!std::isfinite(lo) || !std::isfinite(hi))
        throw std::invalid_argument("frequency_grid: bounds must be finite");
    std::vector<double> w(static_cast<size_t>(n));
    for (int k = 0; k < n; ++k)
        w[static_cast<size_t>(k)] = lo + (hi - lo) * k / (n - 1);
    return w;
}

std::vector<double> default_frequency_grid() { return frequency_grid(-50.0, 50.0, 2001); }

SpectrumResult spectrum_S(const std::vector<double>& grid, const SteadyState& ss,
                          const PhysicalParams& p, LinearizationMode mode) {
    SpectrumResult r;
    r.omega_over_gamma = grid;
    r.params = p;
    r.coeffs = linearization_coeffs(ss, p, mode);
    r.stable = stability_check(r.coeffs);  // unstable results are still
                                           // returned, flagged, for diagnostics
    const double b2 = std::norm(r.coeffs.b_coef);
    const double two_gamma = 2.0 * p.big_gamma();
    r.s_values.reserve(grid.size());
    r.s_normalized.reserve(grid.size());
    for (double w : grid) {
        const double s = b2 / std::norm(char_function_E(w, r.coeffs));
        r.s_values.push_back(s);
        r.s_normalized.push_back(two_gamma * s);
    }
    return r;
}

} // namespace fdbec
