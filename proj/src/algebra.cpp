#include "fdbec/algebra.hpp"

#include <cmath>
#include <cstdio>
#include <iostream>
#include <numbers>
#include <sstream>

namespace fdbec {

namespace {

void warn(const std::string& msg) { std::cerr << "warning: " << msg << "\n"; }

// Rejects theta within 1e-9 of a nonzero multiple of pi, where the
// sinh -> sin continuation has a pole.
void check_continuation_pole(double theta) {
    const double k = std::round(theta / std::numbers::pi);
    if (k >= 1.0 && std::abs(theta - k * std::numbers::pi) < 1e-9) {
        std::ostringstream os;
        os << "f_squared: analytic-continuation pole, tau*|mu| = " << theta
           << " is a multiple of pi";
        throw std::domain_error(os.str());
    }
}

// sinh(m x)/(x sinh m) with m = sqrt(v), continued to sin for v < 0 and to
// the series exp((x^2-1)v/6 - (x^4-1)v^2/180) for |v| < 1e-8 (|tau mu| < 1e-4).
// x > 0.
double sinh_ratio(double x, double v) {
    if (std::abs(v) < 1e-8)
        return std::exp((x * x - 1.0) * v / 6.0 -
                        (x * x * x * x - 1.0) * v * v / 180.0);
    if (v > 0.0) {
        const double m = std::sqrt(v);
        return std::sinh(m * x) / (x * std::sinh(m));
    }
    const double theta = std::sqrt(-v);
    check_continuation_pole(theta);
    return std::sin(theta * x) / (x * std::sin(theta));
}

// Limit x -> 0 of sinh_ratio: m/sinh(m).
double sinh_ratio_at_zero(double v) {
    if (std::abs(v) < 1e-8)
        return std::exp(-v / 6.0 + v * v / 180.0);
    if (v > 0.0) {
        const double m = std::sqrt(v);
        return m / std::sinh(m);
    }
    const double theta = std::sqrt(-v);
    check_continuation_pole(theta);
    return theta / std::sin(theta);
}

} // namespace

AlgebraParams AlgebraParams::from_canonical(double tau, double nu, double mu_sq,
                                            double beta_exp, double omega0) {
    return AlgebraParams{tau, nu, mu_sq, beta_exp, omega0};
}

AlgebraParams AlgebraParams::from_exponents(double tau, double alpha, double beta_exp,
                                            double gamma, double omega0) {
    const double mu = (alpha - gamma) / 2.0;
    return AlgebraParams{tau, (alpha + gamma) / 2.0, mu * mu, beta_exp, omega0};
}

double AlgebraParams::mu() const {
    if (mu_sq < 0.0)
        throw std::domain_error("AlgebraParams: mu is imaginary (mu_sq < 0)");
    return std::sqrt(mu_sq);
}

double AlgebraParams::alpha() const { return nu + mu(); }
double AlgebraParams::gamma_exp() const { return nu - mu(); }
double AlgebraParams::q() const { return std::exp(tau); }

double q_bracket(double x, double q) {
    if (!(q > 0.0))
        throw std::invalid_argument("q_bracket: q must be > 0");
    if (std::abs(q - 1.0) < 1e-6) {
        // q = e^t, [x] = sinh(t x)/sinh(t) = x (1 + t^2 (x^2 - 1)/6 + ...)
        const double t = std::log(q);
        return x * (1.0 + t * t * (x * x - 1.0) / 6.0);
    }
    return (std::pow(q, x) - std::pow(q, -x)) / (q - 1.0 / q);
}

double f_squared(long n, const AlgebraParams& a) {
    if (n < 0)
        throw std::invalid_argument("f_squared: n must be >= 0");
    const double v = a.tau * a.tau * a.mu_sq;  // (tau mu)^2, sign carried by mu_sq
    const double nn = static_cast<double>(n);
    const double ratio = (n == 0) ? sinh_ratio_at_zero(v) : sinh_ratio(nn, v);
    return ratio * std::exp(a.tau * (a.beta_exp + a.nu * (nn - 1.0)));
}

std::vector<double> free_hamiltonian_energies(int dim, const AlgebraParams& a) {
    if (dim < 1)
        throw std::invalid_argument("free_hamiltonian_energies: dim must be >= 1");
    std::vector<double> e(static_cast<size_t>(dim));
    double f2_n = f_squared(0, a);  // unused at n = 0 (multiplied by n)
    for (int n = 0; n < dim; ++n) {
        const double f2_np1 = f_squared(n + 1, a);
        e[static_cast<size_t>(n)] =
            0.5 * (f2_np1 * (n + 1.0) + (n == 0 ? 0.0 : f2_n * n));
        f2_n = f2_np1;
    }
    return e;
}

double expansion_linear_coef(double nu, double mu_sq) {
    return (2.0 * mu_sq + 6.0 * nu) / 3.0;
}

double expansion_pair_coef(double nu, double mu_sq) {
    return 0.5 * mu_sq + 2.0 * nu;
}

std::vector<double> expanded_hamiltonian_energies(int dim, double nu, double mu_sq,
                                                  ExpansionForm form) {
    if (dim < 1)
        throw std::invalid_argument("expanded_hamiltonian_energies: dim must be >= 1");
    if (std::abs(nu) > 0.1 || std::abs(mu_sq) > 0.1)
        warn("expanded_hamiltonian_energies: |nu| or |mu^2| above 0.1, "
             "truncated expansion is inaccurate");
    std::vector<double> e(static_cast<size_t>(dim));
    const double lin = expansion_linear_coef(nu, mu_sq);
    const double pair = expansion_pair_coef(nu, mu_sq);
    for (int n = 0; n < dim; ++n) {
        const double nn = n;
        e[static_cast<size_t>(n)] =
            (form == ExpansionForm::regrouped)
                ? (2.0 * nn + 1.0) + lin * nn + pair * nn * (nn - 1.0)
                : (2.0 * nn + 1.0) + (mu_sq / 6.0) * nn + pair * nn * nn;
    }
    return e;
}

std::vector<double> collision_hamiltonian_energies(int dim, double kappa) {
    if (dim < 1)
        throw std::invalid_argument("collision_hamiltonian_energies: dim must be >= 1");
    std::vector<double> e(static_cast<size_t>(dim));
    for (int n = 0; n < dim; ++n)
        e[static_cast<size_t>(n)] = 0.5 * kappa * static_cast<double>(n) * n;
    return e;
}

double f1_of_n(long n, double eta) {
    const double r = 1.0 - eta * (static_cast<double>(n) - 1.0);
    if (r < 0.0) {
        std::ostringstream os;
        os << "f1_of_n: negative radicand at n = " << n
           << " (occupation exceeds N + 1 for eta = " << eta << ")";
        throw std::domain_error(os.str());
    }
    return std::sqrt(r);
}

double f2_of_n(long n, double kappa) {
    const double r = kappa * static_cast<double>(n) + 1.0 - kappa;
    if (r < 0.0) {
        std::ostringstream os;
        os << "f2_of_n: negative radicand at n = " << n << ", kappa = " << kappa;
        throw std::domain_error(os.str());
    }
    return std::sqrt(r);
}

FockMatrix FockMatrix::identity(int dim) {
    FockMatrix m(dim);
    for (int i = 0; i < dim; ++i) m.at(i, i) = 1.0;
    return m;
}

FockMatrix FockMatrix::diagonal(const std::vector<double>& d) {
    FockMatrix m(static_cast<int>(d.size()));
    for (int i = 0; i < m.dim; ++i) m.at(i, i) = d[static_cast<size_t>(i)];
    return m;
}

FockMatrix FockMatrix::annihilation(int dim) {
    FockMatrix m(dim);
    for (int n = 1; n < dim; ++n) m.at(n - 1, n) = std::sqrt(static_cast<double>(n));
    return m;
}

FockMatrix FockMatrix::adjoint() const {
    FockMatrix m(dim);
    for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j) m.at(j, i) = std::conj(at(i, j));
    return m;
}

FockMatrix FockMatrix::operator*(const FockMatrix& rhs) const {
    FockMatrix m(dim);
    for (int i = 0; i < dim; ++i)
        for (int k = 0; k < dim; ++k) {
            const Complex lik = at(i, k);
            if (lik == Complex{}) continue;
            for (int j = 0; j < dim; ++j) m.at(i, j) += lik * rhs.at(k, j);
        }
    return m;
}

FockMatrix FockMatrix::operator+(const FockMatrix& rhs) const {
    FockMatrix m(dim);
    for (size_t i = 0; i < entries.size(); ++i) m.entries[i] = entries[i] + rhs.entries[i];
    return m;
}

FockMatrix FockMatrix::operator-(const FockMatrix& rhs) const {
    FockMatrix m(dim);
    for (size_t i = 0; i < entries.size(); ++i) m.entries[i] = entries[i] - rhs.entries[i];
    return m;
}

FockMatrix FockMatrix::scaled(Complex c) const {
    FockMatrix m(dim);
    for (size_t i = 0; i < entries.size(); ++i) m.entries[i] = c * entries[i];
    return m;
}

std::vector<double> FockMatrix::real_diagonal() const {
    std::vector<double> d(static_cast<size_t>(dim));
    for (int i = 0; i < dim; ++i) d[static_cast<size_t>(i)] = at(i, i).real();
    return d;
}

double FockMatrix::max_abs_diff(const FockMatrix& rhs) const {
    double m = 0.0;
    for (size_t i = 0; i < entries.size(); ++i)
        m = std::max(m, std::abs(entries[i] - rhs.entries[i]));
    return m;
}

void FockMatrix::write_csv(std::ostream& os) const {
    char buf[80];
    for (int i = 0; i < dim; ++i) {
        for (int j = 0; j < dim; ++j) {
            const Complex& z = at(i, j);
            std::snprintf(buf, sizeof buf, "%.17g%+.17gj", z.real(), z.imag());
            os << (j ? "," : "") << buf;
        }
        os << "\n";
    }
}

std::pair<FockMatrix, FockMatrix> gardiner_ops(long n_atoms, int dim) {
    if (n_atoms < 1)
        throw std::invalid_argument("gardiner_ops: n_atoms must be >= 1");
    if (dim < 2)
        throw std::invalid_argument("gardiner_ops: dim must be >= 2");
    if (dim > n_atoms + 1)
        throw std::invalid_argument("gardiner_ops: dim exceeds n_atoms + 1");
    const double eta = 1.0 / static_cast<double>(n_atoms);
    FockMatrix bq(dim);
    for (int n = 1; n < dim; ++n)
        bq.at(n - 1, n) = std::sqrt(static_cast<double>(n)) * f1_of_n(n, eta);
    return {bq, bq.adjoint()};
}

std::pair<FockMatrix, FockMatrix> small_deformation_ops(long n_atoms, double kappa, int dim) {
    if (n_atoms < 1)
        throw std::invalid_argument("small_deformation_ops: n_atoms must be >= 1");
    if (dim < 2)
        throw std::invalid_argument("small_deformation_ops: dim must be >= 2");
    const double eta = 1.0 / static_cast<double>(n_atoms);
    if (kappa * dim > 0.8 || eta * dim * dim > 0.8)
        warn("small_deformation_ops: kappa*dim or eta*dim^2 approaches 1, "
             "first-order operator expansion is inaccurate");

    const FockMatrix b = FockMatrix::annihilation(dim);
    const FockMatrix bdag = b.adjoint();
    const FockMatrix num = bdag * b;
    const FockMatrix id = FockMatrix::identity(dim);

    // b - b+ b b / (2N)
    const FockMatrix bq = b - (bdag * b * b).scaled(0.5 * eta);
    // 1 - (kappa/2) [1 - (b+ b - b+ b+ b b / N)]
    const FockMatrix occupancy = num - (bdag * bdag * b * b).scaled(eta);
    const FockMatrix factor = id - (id - occupancy).scaled(0.5 * kappa);

    const FockMatrix Bq = bq * factor;
    return {Bq, Bq.adjoint()};
}

} // namespace fdbec
