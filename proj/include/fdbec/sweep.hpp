#ifndef FDBEC_SWEEP_HPP
#define FDBEC_SWEEP_HPP

#include <string>
#include <vector>

#include "fdbec/spectrum.hpp"

namespace fdbec {

/// One steady-state point of an amplitude-deviation sweep:
/// deviation = | |beta| - |beta0| |.
struct DeviationRow {
    double axis = 0.0;
    double deviation = 0.0;
    std::string status = "ok";  // solver failures recorded, row kept
};

/// One parameter point of a spectrum sweep. `spectrum` is valid only when
/// status == "ok"; failed points carry the failure reason instead.
struct SweepPoint {
    PhysicalParams params;
    std::string status = "ok";
    SteadyState steady;
    SpectrumResult spectrum;
};

/// Deviation of the deformed amplitude from the undeformed one as a
/// function of atom number (collisions switched off).
std::vector<DeviationRow> sweep_deviation_vs_n(const std::vector<long>& n_values,
                                               PhysicalParams p0, int workers = 1);

/// Deviation as a function of the collision rate at fixed atom number.
std::vector<DeviationRow> sweep_deviation_vs_kappa(const std::vector<double>& kappa_values,
                                                   PhysicalParams p0, int workers = 1);

/// Spectrum surface over atom number (collisions forced off).
std::vector<SweepPoint> sweep_spectrum_vs_n(const std::vector<long>& n_values,
                                            const std::vector<double>& grid,
                                            PhysicalParams p0, LinearizationMode mode,
                                            int workers = 1);

/// Spectrum surface over the collision rate at fixed atom number.
std::vector<SweepPoint> sweep_spectrum_vs_kappa(const std::vector<double>& kappa_values,
                                                const std::vector<double>& grid,
                                                PhysicalParams p0, LinearizationMode mode,
                                                int workers = 1);

double max_spectrum_value(const SpectrumResult& r);

/// Log-spaced integer atom numbers (duplicates removed, sorted).
std::vector<long> log_spaced_atoms(long lo, long hi, int count);

/// Uniformly spaced values on [lo, hi].
std::vector<double> linspace(double lo, double hi, int count);

} // namespace fdbec

#endif
