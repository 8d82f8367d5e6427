#ifndef FDBEC_STEADY_STATE_HPP
#define FDBEC_STEADY_STATE_HPP

#include <vector>

#include "fdbec/params.hpp"

namespace fdbec {

/// Thrown when the Newton/homotopy solver cannot reach the requested
/// residual tolerance; carries the last iterate for diagnostics.
struct ConvergenceError : std::runtime_error {
    ConvergenceError(const std::string& msg, Complex last, double rnorm)
        : std::runtime_error(msg), last_iterate(last), residual_norm(rnorm) {}
    Complex last_iterate;
    double residual_norm;
};

/// Semiclassical steady state of the deformed condensate amplitude.
struct SteadyState {
    Complex beta;
    Complex beta_undeformed;       // closed-form kappa = eta reference
    double residual_norm = 0.0;
    int homotopy_steps = 0;        // accepted continuation nodes
    int newton_iterations = 0;     // total Newton steps over all nodes
    bool converged = false;
    // |kappa - eta| |beta|^2 > 0.5: the first-order operator expansion
    // behind the cubic drift is no longer trustworthy.
    bool strong_deformation_warning = false;
};

/// Deformed drift evaluated at the c-number amplitude (beta and beta*
/// entering independently):
///   -i Delta b - 2i omega_bar (kappa-eta) b|b|^2 - i g sqrt(N)
///   - i g sqrt(N) (kappa-eta) (|b|^2 + b^2/2) - Gamma b.
/// Zero exactly at a steady state.
Complex residual(Complex beta, const PhysicalParams& p);

/// Wirtinger derivatives d(residual)/d(beta) and d(residual)/d(beta*),
/// the exact Jacobian data of the cubic drift.
struct DriftDerivs {
    Complex d_dbeta;
    Complex d_dbeta_conj;
};
DriftDerivs drift_derivatives(Complex beta, const PhysicalParams& p);

struct SolveOptions {
    double tolerance = 1e-12;  // residual norm
    int max_newton = 200;      // Newton steps per continuation node
    double ds_init = 1.0;      // first continuation step in s
    double ds_min = 1e-7;      // give up below this step
    double ds_max = 1.0;       // forced upper bound on the continuation step
};

/// Root of the steady-state condition on the branch continuously connected
/// to the undeformed amplitude: damped Newton in (Re beta, Im beta), seeded
/// by homotopy continuation in a scalar s in [0,1] multiplying (kappa-eta).
/// At kappa = eta the closed form is returned directly.
/// Throws ConvergenceError when a node cannot be converged at any step size.
SteadyState solve_beta(const PhysicalParams& p, const SolveOptions& opt = {});

/// All steady-state roots found by multi-start damped Newton from a coarse
/// grid on [-box, box]^2, deduplicated at distance 1e-8 and restricted to
/// the box; always includes the solve_beta branch root when it lies inside.
/// Sorted by (Re, Im) for reproducibility.
std::vector<Complex> all_roots(const PhysicalParams& p, double box,
                               const SolveOptions& opt = {});

} // namespace fdbec

#endif
