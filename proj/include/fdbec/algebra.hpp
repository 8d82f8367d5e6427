#ifndef FDBEC_ALGEBRA_HPP
#define FDBEC_ALGEBRA_HPP

#include <ostream>
#include <utility>
#include <vector>

#include "fdbec/params.hpp"

namespace fdbec {

/// Four-parameter deformed-oscillator data. The algebra exponents
/// (alpha, beta, gamma) of  A A+ - q^gamma A+ A = q^(alpha n + beta),
/// q = e^tau, are stored in the canonical form
///   nu = (alpha + gamma)/2,  mu_sq = ((alpha - gamma)/2)^2,
/// so that mu_sq < 0 (complex-conjugate exponent pair) is representable.
struct AlgebraParams {
    double tau = 1.0;
    double nu = 0.0;
    double mu_sq = 0.0;
    double beta_exp = 0.0;  // the additive exponent beta
    double omega0 = 1.0;    // reference oscillator frequency

    static AlgebraParams from_canonical(double tau, double nu, double mu_sq,
                                        double beta_exp, double omega0 = 1.0);
    /// Round-trip exact with alpha()/gamma_exp() below.
    static AlgebraParams from_exponents(double tau, double alpha, double beta_exp,
                                        double gamma, double omega0 = 1.0);

    bool exponents_real() const { return mu_sq >= 0.0; }
    double mu() const;         // sqrt(mu_sq); throws if mu_sq < 0
    double alpha() const;      // nu + mu;     throws if mu_sq < 0
    double gamma_exp() const;  // nu - mu;     throws if mu_sq < 0
    double q() const;          // e^tau
};

/// Symmetric q-number (q^x - q^-x)/(q - q^-1). Continuous at q -> 1
/// (series branch for |q - 1| < 1e-6). q <= 0 is rejected.
double q_bracket(double x, double q);

/// |f(n)|^2 of the deformed ladder operators:
///   sinh(tau mu n)/(n sinh(tau mu)) * exp(tau [beta + nu (n-1)]),
/// with sinh -> sin analytic continuation for mu_sq < 0 and a series branch
/// for |tau mu| < 1e-4. n = 0 returns the n -> 0 continuous limit
/// (the vacuum contribution |f(0)|^2 * 0 vanishes wherever it is used).
/// Throws std::domain_error at a continuation pole sin(tau|mu|) = 0.
double f_squared(long n, const AlgebraParams& a);

/// Free deformed-oscillator levels E_n/(hbar omega0), n = 0..dim-1, from
/// (1/2)[|f(n+1)|^2 (n+1) + |f(n)|^2 n].
std::vector<double> free_hamiltonian_energies(int dim, const AlgebraParams& a);

/// Small-(nu, mu^2) expansion of the free deformed oscillator, in units of
/// hbar omega0 / 2. The two algebraically identical printed groupings are
/// both available:
///   intermediate: (2n+1) + (mu^2/6) n + (mu^2/2 + 2 nu) n^2
///   regrouped:    (2n+1) + (2 mu^2/3 + 2 nu) n + (mu^2/2 + 2 nu) n(n-1)
enum class ExpansionForm { regrouped, intermediate };
std::vector<double> expanded_hamiltonian_energies(int dim, double nu, double mu_sq,
                                                  ExpansionForm form = ExpansionForm::regrouped);

/// Coefficient of n in the regrouped expansion, evaluated as
/// (2 mu_sq + 6 nu)/3 so that mu_sq = -3 nu cancels exactly in floating point.
double expansion_linear_coef(double nu, double mu_sq);
/// Coefficient of n(n-1) in the regrouped expansion: mu_sq/2 + 2 nu.
double expansion_pair_coef(double nu, double mu_sq);

/// Two-body collision levels (kappa/2) n^2, hbar = 1, n = 0..dim-1.
std::vector<double> collision_hamiltonian_energies(int dim, double kappa);

/// Intrinsic finite-N deformation sqrt(1 - eta (n - 1)).
/// Throws std::domain_error when the radicand is negative (n > N + 1).
double f1_of_n(long n, double eta);

/// Collision deformation sqrt(kappa n + 1 - kappa).
/// Throws std::domain_error when the radicand is negative.
double f2_of_n(long n, double kappa);

/// Dense complex matrix on the truncated number basis |0..dim-1>.
/// Column-vector convention: an operator product O1 O2 (O2 acting first)
/// is the matrix product mat(O1) * mat(O2).
struct FockMatrix {
    int dim = 0;
    std::vector<Complex> entries;  // row-major dim x dim

    FockMatrix() = default;
    explicit FockMatrix(int d) : dim(d), entries(static_cast<size_t>(d) * d) {}

    Complex& at(int i, int j) { return entries[static_cast<size_t>(i) * dim + j]; }
    const Complex& at(int i, int j) const { return entries[static_cast<size_t>(i) * dim + j]; }

    static FockMatrix identity(int dim);
    static FockMatrix diagonal(const std::vector<double>& d);
    static FockMatrix annihilation(int dim);  // standard ladder, sqrt(n) entries

    FockMatrix adjoint() const;
    FockMatrix operator*(const FockMatrix& rhs) const;
    FockMatrix operator+(const FockMatrix& rhs) const;
    FockMatrix operator-(const FockMatrix& rhs) const;
    FockMatrix scaled(Complex c) const;

    std::vector<double> real_diagonal() const;
    double max_abs_diff(const FockMatrix& rhs) const;

    /// Dense CSV dump, one "re<sign>im j" cell per entry (debug aid).
    void write_csv(std::ostream& os) const;
};

/// Number-conserving phonon operators b f1(n) and the exact adjoint, on the
/// excited-atom number basis. Requires dim <= n_atoms + 1; the top level
/// dim-1 is truncation-contaminated in products and quadratic identities
/// hold only for n <= dim-2.
std::pair<FockMatrix, FockMatrix> gardiner_ops(long n_atoms, int dim);

/// Doubly deformed phonon operators to first order in kappa and 1/N,
///   (b - b+bb/(2N)) [1 - (kappa/2)(1 - (b+b - b+b+bb/N))],
/// built from standard ladder matrices, and the exact adjoint.
std::pair<FockMatrix, FockMatrix> small_deformation_ops(long n_atoms, double kappa, int dim);

} // namespace fdbec

#endif
