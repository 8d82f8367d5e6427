#ifndef FDBEC_ORACLES_HPP
#define FDBEC_ORACLES_HPP

#include <array>
#include <cstdint>
#include <vector>

#include "fdbec/spectrum.hpp"

namespace fdbec {

/// 2x2 drift [[A,B],[B*,A*]] of the linear fluctuation system together with
/// the input-noise strength. The only nonvanishing input correlation is
/// <b_in(t) b_in+(t')> = delta(t - t'), entering with weight 2*Gamma.
struct DriftMatrix {
    Complex a;
    Complex b;
    double two_gamma;  // noise weight 2*Gamma

    std::array<Complex, 2> eigenvalues() const;
};
DriftMatrix make_drift(const FluctuationCoeffs& c, double big_gamma);

/// Frequency-domain solve of the 2x2 linear system from scratch: inverts
/// i w I - M numerically per grid point (no use of the characteristic
/// function) and contracts with the vacuum input covariance.
///   normally_ordered: <db+ db> component, vanishes unless B != 0;
///   symmetrized:      classical (full) power spectrum of db(t).
/// `ok` is false where the shifted drift is numerically singular
/// (possible only for an unstable drift).
struct ResolventSpectrum {
    std::vector<double> normally_ordered;
    std::vector<double> symmetrized;
    std::vector<bool> ok;
    bool stable = false;
};
ResolventSpectrum resolvent_spectrum(const std::vector<double>& grid,
                                     const FluctuationCoeffs& c, double big_gamma);

/// Ensemble configuration for the stochastic trajectory oracle.
struct TrajectoryConfig {
    double dt = 1e-3;       // requested integration step (rounded, see below)
    double t_total = 20.0;  // recorded span per trajectory
    int n_traj = 4096;
    std::uint64_t seed = 1;
    double burn_in = 0.0;   // 0 = automatic (20 relaxation times)

    void validate() const;
};

/// Euler-Maruyama ensemble estimate of the stationary power spectrum of the
/// linear fluctuation equation driven by complex white noise of unit
/// one-sided covariance (the c-number stand-in for the vacuum input: a
/// classical simulation realizes symmetric statistics, so the estimate
/// converges to the SYMMETRIZED resolvent spectrum, validating |E(w)|^2;
/// the normally-ordered numerator is the resolvent oracle's job).
///
/// dt is rounded so that t_total spans a power-of-two number of steps;
/// trajectories are recorded at a stride keeping <= 8192 samples and
/// reduced to Hann-windowed averaged periodograms,
///   S_est(w_k) = dt_rec |sum_n w_n z_n e^{-i w_k t_n}|^2 / sum_n w_n^2,
/// normalized so that (1/2pi) integral S dw equals the variance of z.
/// Trajectory j draws from an engine seeded by (seed, j); the reduction
/// order is fixed, so results are reproducible bit for bit.
struct SdeSpectrum {
    std::vector<double> omega;     // ascending, length n_samples
    std::vector<double> s_mean;    // averaged periodogram
    std::vector<double> s_stderr;  // per-bin standard error over trajectories
    double var_time = 0.0;         // plain time-domain variance estimate
    // per-trajectory difference (integral of periodogram)/(2pi) - variance:
    double parseval_diff_mean = 0.0;
    double parseval_diff_stderr = 0.0;
    double dt_eff = 0.0;
    double dt_rec = 0.0;
    int n_samples = 0;
    int stride = 0;
};
SdeSpectrum sde_spectrum(const FluctuationCoeffs& c, double big_gamma,
                         const TrajectoryConfig& cfg);

/// Noise-free integration of the cubic mean-field drift with an embedded
/// Dormand-Prince 5(4) adaptive step. Throws on divergence (|b| > 1e6).
struct MeanfieldResult {
    std::vector<double> t;
    std::vector<Complex> b;
    Complex b_final;
};
MeanfieldResult nonlinear_meanfield(const PhysicalParams& p, Complex beta_init,
                                    double t_total, double rtol = 1e-11,
                                    double sample_dt = 0.0);

/// Empirical drift eigenvalues from the relaxation of two independently
/// perturbed mean-field trajectories: the 2x2 transition matrix over the
/// fit window yields the eigenvalue pair through a matrix logarithm.
/// Requires |Im(eigenvalue)| * fit_window < pi to avoid branch wrapping.
struct RelaxationFit {
    std::array<Complex, 2> eigenvalues;
};
RelaxationFit fit_relaxation_eigenvalues(const PhysicalParams& p, Complex beta_fixed,
                                         double eps = 1e-6, double fit_window = 0.05);

/// Largest relative mismatch between two eigenvalue pairs under the best
/// pairing, scaled by the larger modulus in the pair.
double eigenvalue_pair_distance(const std::array<Complex, 2>& fitted,
                                const std::array<Complex, 2>& analytic);

} // namespace fdbec

#endif
