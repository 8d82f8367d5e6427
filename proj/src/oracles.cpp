#include "fdbec/oracles.hpp"

#include <algorithm>
#include <cmath>
#include <iostream>
#include <numbers>
#include <random>
#include <sstream>

namespace fdbec {

namespace {

constexpr double kDivergenceBound = 1e6;

// Iterative radix-2 FFT (e^{-2 pi i k n / N} kernel), N a power of two.
class Fft {
public:
    explicit Fft(int n) : n_(n) {
        rev_.resize(static_cast<size_t>(n));
        int log2n = 0;
        while ((1 << log2n) < n) ++log2n;
        for (int i = 0; i < n; ++i) {
            int r = 0;
            for (int b = 0; b < log2n; ++b)
                if (i & (1 << b)) r |= 1 << (log2n - 1 - b);
            rev_[static_cast<size_t>(i)] = r;
        }
        twiddle_.resize(static_cast<size_t>(n) / 2);
        for (int k = 0; k < n / 2; ++k)
            twiddle_[static_cast<size_t>(k)] =
                std::polar(1.0, -2.0 * std::numbers::pi * k / n);
    }

    void transform(std::vector<Complex>& x) const {
        for (int i = 0; i < n_; ++i) {
            const int r = rev_[static_cast<size_t>(i)];
            if (i < r) std::swap(x[static_cast<size_t>(i)], x[static_cast<size_t>(r)]);
        }
        for (int len = 2; len <= n_; len <<= 1) {
            const int half = len / 2;
            const int step = n_ / len;
            for (int start = 0; start < n_; start += len)
                for (int k = 0; k < half; ++k) {
                    const Complex w = twiddle_[static_cast<size_t>(k * step)];
                    Complex& lo = x[static_cast<size_t>(start + k)];
                    Complex& hi = x[static_cast<size_t>(start + k + half)];
                    const Complex t = w * hi;
                    hi = lo - t;
                    lo += t;
                }
        }
    }

private:
    int n_;
    std::vector<int> rev_;
    std::vector<Complex> twiddle_;
};

// 2x2 complex linear solve, partial pivoting. Returns false on a
// (numerically) singular matrix.
bool solve2(const std::array<Complex, 4>& m, const std::array<Complex, 2>& rhs,
            std::array<Complex, 2>& x) {
    Complex a = m[0], b = m[1], c = m[2], d = m[3];
    Complex r0 = rhs[0], r1 = rhs[1];
    if (std::abs(c) > std::abs(a)) {
        std::swap(a, c);
        std::swap(b, d);
        std::swap(r0, r1);
    }
    if (std::abs(a) < 1e-300) return false;
    const Complex f = c / a;
    const Complex d2 = d - f * b;
    if (std::abs(d2) < 1e-300 * std::max(1.0, std::abs(b))) return false;
    x[1] = (r1 - f * r0) / d2;
    x[0] = (r0 - b * x[1]) / a;
    return true;
}

} // namespace

std::array<Complex, 2> DriftMatrix::eigenvalues() const {
    // trace 2 Re A, determinant |A|^2 - |B|^2: the discriminant
    // 4(|B|^2 - Im(A)^2) is always real.
    const double re = a.real(), im = a.imag();
    const double disc = std::norm(b) - im * im;
    const Complex root = disc >= 0.0 ? Complex(std::sqrt(disc), 0.0)
                                     : Complex(0.0, std::sqrt(-disc));
    return {Complex(re, 0.0) + root, Complex(re, 0.0) - root};
}

DriftMatrix make_drift(const FluctuationCoeffs& c, double big_gamma) {
    return {c.a_coef, c.b_coef, 2.0 * big_gamma};
}

ResolventSpectrum resolvent_spectrum(const std::vector<double>& grid,
                                     const FluctuationCoeffs& c, double big_gamma) {
    const DriftMatrix m = make_drift(c, big_gamma);
    ResolventSpectrum out;
    out.stable = stability_check(c);
    out.normally_ordered.resize(grid.size());
    out.symmetrized.resize(grid.size());
    out.ok.resize(grid.size(), true);

    for (size_t i = 0; i < grid.size(); ++i) {
        const Complex iw(0.0, grid[i]);
        // i w I - M with M = [[A, B], [B*, A*]]
        const std::array<Complex, 4> z = {iw - m.a, -m.b, -std::conj(m.b),
                                          iw - std::conj(m.a)};
        std::array<Complex, 2> col0, col1;
        if (!solve2(z, {1.0, 0.0}, col0) || !solve2(z, {0.0, 1.0}, col1)) {
            out.ok[i] = false;
            out.normally_ordered[i] = out.symmetrized[i] = 0.0;
            continue;
        }
        // first row of the resolvent: db(w) = sqrt(2G)(R00 b_in + R01 b_in+)
        const double r00 = std::norm(col0[0]);
        const double r01 = std::norm(col1[0]);
        out.normally_ordered[i] = m.two_gamma * r01;
        out.symmetrized[i] = m.two_gamma * (r00 + r01);
    }
    return out;
}

void TrajectoryConfig::validate() const {
    if (!(dt > 0.0)) throw std::invalid_argument("TrajectoryConfig: dt must be > 0");
    if (!(t_total > 0.0))
        throw std::invalid_argument("TrajectoryConfig: t_total must be > 0");
    if (n_traj < 1) throw std::invalid_argument("TrajectoryConfig: n_traj must be >= 1");
}

SdeSpectrum sde_spectrum(const FluctuationCoeffs& c, double big_gamma,
                         const TrajectoryConfig& cfg) {
    cfg.validate();
    if (!stability_check(c))
        throw std::invalid_argument("sde_spectrum: drift is unstable");
    if (cfg.t_total * big_gamma < 20.0)
        std::cerr << "warning: sde_spectrum: t_total * Gamma = "
                  << cfg.t_total * big_gamma << " < 20, estimate may not be stationary\n";

    const DriftMatrix m = make_drift(c, big_gamma);

    // power-of-two step count closest to the requested dt
    const double target = cfg.t_total / cfg.dt;
    int k = static_cast<int>(std::lround(std::log2(target)));
    k = std::clamp(k, 8, 24);
    const long n_steps = 1L << k;
    const double dt = cfg.t_total / static_cast<double>(n_steps);
    const int stride = 1 << std::max(0, k - 13);
    const int n_samples = static_cast<int>(n_steps / stride);
    const double dt_rec = dt * stride;

    const double relax = 1.0 / std::abs(c.a_coef.real());
    const double burn_time = cfg.burn_in > 0.0 ? cfg.burn_in : 20.0 * relax;
    const long burn_steps = static_cast<long>(std::ceil(burn_time / dt));

    const Fft fft(n_samples);
    std::vector<double> window(static_cast<size_t>(n_samples));
    double window_power = 0.0;
    for (int n = 0; n < n_samples; ++n) {
        window[static_cast<size_t>(n)] =
            0.5 * (1.0 - std::cos(2.0 * std::numbers::pi * n / n_samples));
        window_power += window[static_cast<size_t>(n)] * window[static_cast<size_t>(n)];
    }

    const double noise_amp = std::sqrt(m.two_gamma) * std::sqrt(dt / 2.0);
    std::vector<double> acc(static_cast<size_t>(n_samples), 0.0);
    std::vector<double> acc2(static_cast<size_t>(n_samples), 0.0);
    std::vector<Complex> buf(static_cast<size_t>(n_samples));
    std::vector<Complex> samples(static_cast<size_t>(n_samples));
    double var_sum = 0.0;
    double pd_sum = 0.0, pd_sum2 = 0.0;

    for (int j = 0; j < cfg.n_traj; ++j) {
        // (seed, trajectory index) -> independent stream; seed_seq entries
        // are 32-bit, so the seed is split
        std::seed_seq seq{static_cast<std::uint32_t>(cfg.seed & 0xffffffffu),
                          static_cast<std::uint32_t>(cfg.seed >> 32),
                          static_cast<std::uint32_t>(j)};
        std::mt19937_64 rng(seq);
        std::normal_distribution<double> normal;

        Complex z = 0.0;
        auto step = [&] {
            z += dt * (m.a * z + m.b * std::conj(z)) +
                 noise_amp * Complex(normal(rng), normal(rng));
        };
        for (long n = 0; n < burn_steps; ++n) step();
        if (std::abs(z) > kDivergenceBound)
            throw std::runtime_error("sde_spectrum: trajectory diverged during burn-in");

        double var_j = 0.0;
        for (int n = 0; n < n_samples; ++n) {
            samples[static_cast<size_t>(n)] = z;
            var_j += std::norm(z);
            for (int s = 0; s < stride; ++s) step();
        }
        if (std::abs(z) > kDivergenceBound)
            throw std::runtime_error("sde_spectrum: trajectory diverged");
        var_j /= n_samples;

        for (int n = 0; n < n_samples; ++n)
            buf[static_cast<size_t>(n)] =
                window[static_cast<size_t>(n)] * samples[static_cast<size_t>(n)];
        fft.transform(buf);

        double integral = 0.0;
        for (int n = 0; n < n_samples; ++n) {
            const double s = dt_rec * std::norm(buf[static_cast<size_t>(n)]) / window_power;
            acc[static_cast<size_t>(n)] += s;
            acc2[static_cast<size_t>(n)] += s * s;
            integral += s;
        }
        // (1/2pi) integral S dw with dw = 2pi/(n_samples dt_rec)
        const double pd = integral / (n_samples * dt_rec) - var_j;
        pd_sum += pd;
        pd_sum2 += pd * pd;
        var_sum += var_j;
    }

    SdeSpectrum out;
    out.dt_eff = dt;
    out.dt_rec = dt_rec;
    out.n_samples = n_samples;
    out.stride = stride;
    out.var_time = var_sum / cfg.n_traj;
    const double nt = cfg.n_traj;
    out.parseval_diff_mean = pd_sum / nt;
    out.parseval_diff_stderr =
        cfg.n_traj > 1
            ? std::sqrt(std::max(0.0, (pd_sum2 / nt - out.parseval_diff_mean *
                                                          out.parseval_diff_mean) /
                                          (nt - 1.0)))
            : 0.0;

    // fftshift: bin k <-> w = 2 pi k / (n dt_rec), negative half above n/2
    out.omega.resize(static_cast<size_t>(n_samples));
    out.s_mean.resize(static_cast<size_t>(n_samples));
    out.s_stderr.resize(static_cast<size_t>(n_samples));
    const double dw = 2.0 * std::numbers::pi / (n_samples * dt_rec);
    for (int n = 0; n < n_samples; ++n) {
        const int k_signed = n - n_samples / 2;
        const int bin = (k_signed + n_samples) % n_samples;
        const double mean = acc[static_cast<size_t>(bin)] / nt;
        const double var =
            cfg.n_traj > 1
                ? std::max(0.0, (acc2[static_cast<size_t>(bin)] / nt - mean * mean) /
                                    (nt - 1.0))
                : 0.0;
        out.omega[static_cast<size_t>(n)] = k_signed * dw;
        out.s_mean[static_cast<size_t>(n)] = mean;
        out.s_stderr[static_cast<size_t>(n)] = std::sqrt(var);
    }
    return out;
}

MeanfieldResult nonlinear_meanfield(const PhysicalParams& p, Complex beta_init,
                                    double t_total, double rtol, double sample_dt) {
    p.validate();
    if (!(t_total > 0.0))
        throw std::invalid_argument("nonlinear_meanfield: t_total must be > 0");

    // Dormand-Prince 5(4) coefficients (autonomous drift, no time nodes)
    static constexpr double a21 = 1.0 / 5;
    static constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
    static constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
    static constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187,
                            a53 = 64448.0 / 6561, a54 = -212.0 / 729;
    static constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33,
                            a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                            a65 = -5103.0 / 18656;
    static constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192,
                            b5 = -2187.0 / 6784, b6 = 11.0 / 84;
    static constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                            e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;

    auto f = [&p](Complex b) { return residual(b, p); };

    MeanfieldResult out;
    double t = 0.0;
    Complex y = beta_init;
    Complex k1 = f(y);
    double h = 1e-4 / std::max(1.0, p.big_gamma());
    double next_sample = 0.0;
    const bool sampling = sample_dt > 0.0;

    auto record = [&](double tt, Complex yy) {
        out.t.push_back(tt);
        out.b.push_back(yy);
    };
    record(t, y);
    if (sampling) next_sample = sample_dt;

    while (t < t_total) {
        if (std::abs(y) > kDivergenceBound) {
            std::ostringstream os;
            os << "nonlinear_meanfield: divergence at t = " << t
               << " (N = " << p.n_atoms << ", kappa = " << p.kappa
               << ", Delta = " << p.detuning() << ")";
            throw std::runtime_error(os.str());
        }
        double h_try = std::min(h, t_total - t);
        if (sampling && t + h_try > next_sample) h_try = next_sample - t;

        const Complex k2 = f(y + h_try * (a21 * k1));
        const Complex k3 = f(y + h_try * (a31 * k1 + a32 * k2));
        const Complex k4 = f(y + h_try * (a41 * k1 + a42 * k2 + a43 * k3));
        const Complex k5 = f(y + h_try * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4));
        const Complex k6 =
            f(y + h_try * (a61 * k1 + a62 * k2 + a63 * k3 + a64 * k4 + a65 * k5));
        const Complex y5 =
            y + h_try * (b1 * k1 + b3 * k3 + b4 * k4 + b5 * k5 + b6 * k6);
        const Complex k7 = f(y5);
        const Complex err_c =
            h_try * (e1 * k1 + e3 * k3 + e4 * k4 + e5 * k5 + e6 * k6 + e7 * k7);

        const double scale = 1e-14 + rtol * std::max(std::abs(y), std::abs(y5));
        const double err = std::abs(err_c) / scale;
        if (err <= 1.0) {
            t += h_try;
            y = y5;
            k1 = k7;  // FSAL
            if (sampling && t >= next_sample - 1e-15) {
                record(t, y);
                next_sample += sample_dt;
            }
        }
        const double factor =
            std::clamp(0.9 * std::pow(std::max(err, 1e-10), -0.2), 0.2, 5.0);
        h = h_try * factor;
    }
    if (!sampling) record(t, y);
    out.b_final = y;
    return out;
}

RelaxationFit fit_relaxation_eigenvalues(const PhysicalParams& p, Complex beta_fixed,
                                         double eps, double fit_window) {
    const MeanfieldResult r1 =
        nonlinear_meanfield(p, beta_fixed + Complex(eps, 0.0), fit_window, 1e-12);
    const MeanfieldResult r2 =
        nonlinear_meanfield(p, beta_fixed + Complex(0.0, eps), fit_window, 1e-12);
    const Complex d1 = r1.b_final - beta_fixed;
    const Complex d2 = r2.b_final - beta_fixed;

    // transition matrix over the window: columns are the images of the unit
    // perturbations along 1 and i
    const double g11 = d1.real() / eps, g12 = d2.real() / eps;
    const double g21 = d1.imag() / eps, g22 = d2.imag() / eps;
    const double tr = g11 + g22;
    const double det = g11 * g22 - g12 * g21;
    const double disc = tr * tr - 4.0 * det;
    const Complex root = disc >= 0.0 ? Complex(std::sqrt(disc), 0.0)
                                     : Complex(0.0, std::sqrt(-disc));
    const Complex l1 = (tr + root) / 2.0;
    const Complex l2 = (tr - root) / 2.0;

    RelaxationFit fit;
    fit.eigenvalues = {std::log(l1) / fit_window, std::log(l2) / fit_window};
    return fit;
}

double eigenvalue_pair_distance(const std::array<Complex, 2>& fitted,
                                const std::array<Complex, 2>& analytic) {
    const double scale = std::max(std::abs(analytic[0]), std::abs(analytic[1]));
    if (scale == 0.0)
        return std::max(std::abs(fitted[0]), std::abs(fitted[1]));
    const double direct = std::max(std::abs(fitted[0] - analytic[0]),
                                   std::abs(fitted[1] - analytic[1]));
    const double swapped = std::max(std::abs(fitted[0] - analytic[1]),
                                    std::abs(fitted[1] - analytic[0]));
    return std::min(direct, swapped) / scale;
}

} // namespace fdbec
