#include "fdbec/steady_state.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace fdbec {

namespace {

// Drift with the deformation strength (kappa - eta) scaled by s.
Complex residual_scaled(Complex b, const PhysicalParams& p, double s) {
    const double km = s * (p.kappa - p.eta());
    const double root_n_g = std::sqrt(static_cast<double>(p.n_atoms)) * p.g;
    const Complex i(0.0, 1.0);
    const double b2 = std::norm(b);
    return -i * p.detuning() * b - 2.0 * i * p.omega_bar * km * b * b2 -
           i * root_n_g - i * root_n_g * km * (b2 + b * b / 2.0) -
           p.big_gamma() * b;
}

DriftDerivs drift_derivatives_scaled(Complex b, const PhysicalParams& p, double s) {
    const double km = s * (p.kappa - p.eta());
    const double root_n_g = std::sqrt(static_cast<double>(p.n_atoms)) * p.g;
    const Complex i(0.0, 1.0);
    const Complex bc = std::conj(b);
    DriftDerivs d;
    d.d_dbeta = -i * p.detuning() - p.big_gamma() -
                4.0 * i * p.omega_bar * km * std::norm(b) -
                i * root_n_g * km * (bc + b);
    d.d_dbeta_conj = -2.0 * i * p.omega_bar * km * b * b - i * root_n_g * km * b;
    return d;
}

// Damped Newton on the two real equations (Re R, Im R) = 0.
// Returns true when the residual norm reaches opt.tolerance.
bool newton(Complex& b, const PhysicalParams& p, double s, const SolveOptions& opt,
            int& iterations, bool throw_on_singular = false) {
    for (int it = 0; it < opt.max_newton; ++it) {
        const Complex r = residual_scaled(b, p, s);
        const double rn = std::abs(r);
        if (rn <= opt.tolerance) return true;
        ++iterations;

        const DriftDerivs d = drift_derivatives_scaled(b, p, s);
        // dR = Rb db + Rbc conj(db):
        //   [du/dx du/dy; dv/dx dv/dy] with R = u + iv, db = dx + i dy
        const Complex sum = d.d_dbeta + d.d_dbeta_conj;
        const Complex dif = Complex(0.0, 1.0) * (d.d_dbeta - d.d_dbeta_conj);
        const double a11 = sum.real(), a12 = dif.real();
        const double a21 = sum.imag(), a22 = dif.imag();
        const double det = a11 * a22 - a12 * a21;
        if (!(std::abs(det) > 1e-300)) {
            if (throw_on_singular) {
                std::ostringstream os;
                os << "solve_beta: singular Jacobian at continuation node s = " << s
                   << "; retry with a smaller continuation step";
                throw ConvergenceError(os.str(), b, rn);
            }
            return false;
        }
        const double dx = (-r.real() * a22 + r.imag() * a12) / det;
        const double dy = (-a11 * r.imag() + a21 * r.real()) / det;
        Complex step(dx, dy);

        // step halving on residual increase
        double lambda = 1.0;
        Complex bn = b + step;
        for (int h = 0; h < 60 && std::abs(residual_scaled(bn, p, s)) >= rn; ++h) {
            lambda *= 0.5;
            bn = b + lambda * step;
        }
        if (std::abs(residual_scaled(bn, p, s)) >= rn) return false;  // stalled
        b = bn;
    }
    return std::abs(residual_scaled(b, p, s)) <= opt.tolerance;
}

} // namespace

Complex residual(Complex beta, const PhysicalParams& p) {
    return residual_scaled(beta, p, 1.0);
}

DriftDerivs drift_derivatives(Complex beta, const PhysicalParams& p) {
    return drift_derivatives_scaled(beta, p, 1.0);
}

SteadyState solve_beta(const PhysicalParams& p, const SolveOptions& opt) {
    p.validate();
    SteadyState ss;
    ss.beta_undeformed = beta0(p);

    if (p.kappa == p.eta()) {
        // every deformation term carries (kappa - eta): the drift is linear
        ss.beta = ss.beta_undeformed;
        ss.residual_norm = std::abs(residual(ss.beta, p));
        ss.converged = true;
        return ss;
    }

    Complex b = ss.beta_undeformed;
    double s = 0.0;
    double ds = std::min(opt.ds_init, opt.ds_max);
    while (s < 1.0) {
        ds = std::min({ds, opt.ds_max, 1.0 - s});
        Complex trial = b;
        int iters = 0;
        const bool last_chance = ds <= opt.ds_min * 2.0;
        const bool ok = newton(trial, p, s + ds, opt, iters, last_chance);
        ss.newton_iterations += iters;
        if (ok) {
            b = trial;
            s += ds;
            ++ss.homotopy_steps;
            ds *= 2.0;
        } else {
            ds *= 0.5;
            if (ds < opt.ds_min) {
                std::ostringstream os;
                os << "solve_beta: continuation stalled at s = " << s
                   << " (N = " << p.n_atoms << ", kappa = " << p.kappa << ")";
                throw ConvergenceError(os.str(), trial,
                                       std::abs(residual_scaled(trial, p, s + ds)));
            }
        }
    }

    ss.beta = b;
    ss.residual_norm = std::abs(residual(b, p));
    ss.converged = ss.residual_norm <= opt.tolerance;
    ss.strong_deformation_warning =
        std::abs(p.kappa - p.eta()) * std::norm(b) > 0.5;
    if (!ss.converged)
        throw ConvergenceError("solve_beta: residual tolerance not reached", b,
                               ss.residual_norm);
    return ss;
}

std::vector<Complex> all_roots(const PhysicalParams& p, double box,
                               const SolveOptions& opt) {
    p.validate();
    if (!(box > 0.0))
        throw std::invalid_argument("all_roots: box must be > 0");

    std::vector<Complex> roots;
    auto add = [&](Complex r) {
        if (std::abs(r.real()) > box || std::abs(r.imag()) > box) return;
        for (const Complex& q : roots)
            if (std::abs(q - r) < 1e-8) return;
        roots.push_back(r);
    };

    const int grid_n = 13;
    for (int ix = 0; ix < grid_n; ++ix)
        for (int iy = 0; iy < grid_n; ++iy) {
            Complex b(-box + 2.0 * box * ix / (grid_n - 1),
                      -box + 2.0 * box * iy / (grid_n - 1));
            int iters = 0;
            SolveOptions local = opt;
            local.max_newton = 100;
            if (newton(b, p, 1.0, local, iters)) add(b);
        }

    try {
        add(solve_beta(p, opt).beta);
    } catch (const ConvergenceError&) {
        // branch root unavailable; the multi-start set stands on its own
    }

    std::sort(roots.begin(), roots.end(), [](Complex a, Complex b) {
        return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag();
    });
    return roots;
}

} // namespace fdbec
