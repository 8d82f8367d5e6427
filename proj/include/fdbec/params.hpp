#ifndef FDBEC_PARAMS_HPP
#define FDBEC_PARAMS_HPP

#include <complex>
#include <stdexcept>
#include <string>

namespace fdbec {

using Complex = std::complex<double>;

/// Driven-condensate parameters. All frequencies and rates are stored in
/// units of the one-atom linewidth gamma (hbar = 1 throughout); gamma itself
/// is kept explicit so inputs given in other units can be rescaled.
struct PhysicalParams {
    double omega_bar = 50.0;    // atomic transition frequency
    double omega_laser = 50.0;  // drive (laser) frequency
    double g = 2.5;             // classical-field coupling
    double gamma = 1.0;         // one-atom linewidth, sets the unit scale
    long n_atoms = 100;         // total atom number N (= condensate number)
    double kappa = 0.0;         // collision rate

    double detuning() const { return omega_bar - omega_laser; }
    double big_gamma() const;             // collective damping gamma*sqrt(N)
    double eta() const;                   // intrinsic deformation 1/N

    /// Throws std::invalid_argument unless gamma > 0, n_atoms >= 1,
    /// g >= 0 and kappa >= 0.
    void validate() const;
};

struct DerivedParams {
    double delta;       // omega_bar - omega_laser
    double big_gamma;   // gamma*sqrt(N)
    double eta;         // 1/N
};

/// Detuning, collective damping and intrinsic deformation for valid params.
DerivedParams derive_params(const PhysicalParams& p);

/// Undeformed steady-state amplitude -i g sqrt(N) / (Gamma + i Delta).
/// Sign convention: the drive enters the equation of motion as -i g sqrt(N),
/// so at zero detuning arg(beta0) = -pi/2.
Complex beta0(const PhysicalParams& p);

/// Kinetic-theory collision rate rho * pi * a^2 * v_rms.
double collision_rate(double density, double scatt_length, double v_rms);

/// Loads parameters from a flat key-value text file (lines "key = value",
/// '#' comments). Keys: omega_bar, omega_laser, g, gamma, n_atoms, kappa,
/// all in gamma-units. Every key is required; unknown keys are rejected.
PhysicalParams load_params_file(const std::string& path);

} // namespace fdbec

#endif
