#include <doctest.h>

#include <cmath>
#include <complex>
#include <numbers>
#include <random>
#include <sstream>

#include "fdbec/algebra.hpp"

using namespace fdbec;

namespace {

// Independent closed form of the free-oscillator levels (in units of
// hbar omega0): 0.5 e^{tau(beta + nu n)} [sh(tm(n+1)) + e^{-tau nu} sh(tm n)]
// / sh(tm), evaluated with raw sinh/sin (test restricted to |tau mu| where
// that is well conditioned).
double closed_form_energy(long n, const AlgebraParams& a) {
    const double v = a.tau * a.tau * a.mu_sq;
    auto sh = [&](double x) -> double {
        if (v == 0.0) return x;  // limit tm -> 0 of sh(tm x)/tm
        if (v > 0.0) return std::sinh(std::sqrt(v) * x);
        return std::sin(std::sqrt(-v) * x);
    };
    const double denom = sh(1.0);
    return 0.5 * std::exp(a.tau * (a.beta_exp + a.nu * n)) *
           (sh(n + 1.0) + std::exp(-a.tau * a.nu) * sh(static_cast<double>(n))) / denom;
}

// Per-level solution of the algebra recursion
//   |f(n+1)|^2 (n+1) = q^(alpha n + beta) + q^gamma |f(n)|^2 n,
// complex exponents allowed (mu_sq < 0), vacuum weight |f(0)|^2 * 0 = 0.
double recursion_f_squared(long n, const AlgebraParams& a) {
    const std::complex<double> mu = a.mu_sq >= 0.0
                                        ? std::complex<double>(std::sqrt(a.mu_sq), 0.0)
                                        : std::complex<double>(0.0, std::sqrt(-a.mu_sq));
    const std::complex<double> alpha = a.nu + mu;
    const std::complex<double> gamma = a.nu - mu;
    std::complex<double> f2 = 0.0;
    for (long k = 0; k < n; ++k) {
        const std::complex<double> rhs =
            std::exp(a.tau * (alpha * static_cast<double>(k) + a.beta_exp));
        const std::complex<double> carry =
            k == 0 ? std::complex<double>(0.0)
                   : std::exp(a.tau * gamma) * f2 * static_cast<double>(k);
        f2 = (rhs + carry) / static_cast<double>(k + 1);
    }
    return f2.real();
}

} // namespace

TEST_CASE("q-bracket classical limit, fixed point, and direct value") {
    CHECK(q_bracket(3.7, 1.0) == 3.7);
    CHECK(q_bracket(5.0, 1.0 + 1e-9) == doctest::Approx(5.0).epsilon(1e-12));
    for (double q : {0.5, 1.7, 3.0})
        CHECK(q_bracket(1.0, q) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(q_bracket(2.0, 2.0) == doctest::Approx(2.5).epsilon(1e-15));
    CHECK_THROWS_AS(q_bracket(1.0, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(q_bracket(1.0, -2.0), std::invalid_argument);
}

TEST_CASE("q-bracket is symmetric under q -> 1/q") {
    std::mt19937 rng(7);
    std::uniform_real_distribution<double> xd(-8.0, 8.0), qd(0.2, 5.0);
    for (int i = 0; i < 200; ++i) {
        const double x = xd(rng), q = qd(rng);
        const double a = q_bracket(x, q), b = q_bracket(x, 1.0 / q);
        CHECK(a == doctest::Approx(b).epsilon(1e-12));
    }
}

TEST_CASE("deformation profile in the undeformed limit") {
    const AlgebraParams a0 = AlgebraParams::from_canonical(0.0, 0.3, 0.04, 0.1);
    const AlgebraParams a1 = AlgebraParams::from_canonical(1e-9, 0.3, 0.04, 0.1);
    for (long n = 1; n <= 20; ++n) {
        CHECK(f_squared(n, a0) == 1.0);
        CHECK(f_squared(n, a1) == doctest::Approx(1.0).epsilon(1e-8));
    }
}

TEST_CASE("deformation profile at mu = 0 reduces to a pure exponential") {
    const AlgebraParams a = AlgebraParams::from_canonical(1.0, 0.07, 0.0, 0.25);
    for (long n = 1; n <= 30; ++n) {
        const double expected = std::exp(a.tau * (a.beta_exp + a.nu * (n - 1.0)));
        CHECK(f_squared(n, a) == doctest::Approx(expected).epsilon(1e-14));
    }
}

TEST_CASE("deformation profile matches the algebra recursion") {
    // includes the published comparison point tau=1, mu=0.1, nu=0.05, beta=0
    const AlgebraParams pt = AlgebraParams::from_canonical(1.0, 0.05, 0.01, 0.0);
    CHECK(f_squared(3, pt) == doctest::Approx(recursion_f_squared(3, pt)).epsilon(1e-12));

    for (double nu : {0.0, 0.125, 0.25, 0.5})
        for (double mu : {0.0, 0.125, 0.25, 0.5})
            for (double beta : {0.0, 0.3}) {
                const AlgebraParams a =
                    AlgebraParams::from_canonical(1.0, nu, mu * mu, beta);
                for (long n = 1; n <= 50; ++n) {
                    const double closed = f_squared(n, a);
                    const double rec = recursion_f_squared(n, a);
                    CHECK(std::abs(closed - rec) <= 1e-12 * std::abs(closed));
                }
            }
}

TEST_CASE("deformation profile continues analytically to mu_sq < 0") {
    // the recursion with complex-conjugate exponents stays real and matches
    for (double nu : {0.02, 0.1})
        for (double mu_sq : {-0.01, -0.09}) {
            const AlgebraParams a = AlgebraParams::from_canonical(1.0, nu, mu_sq, 0.0);
            for (long n = 1; n <= 30; ++n)
                CHECK(f_squared(n, a) ==
                      doctest::Approx(recursion_f_squared(n, a)).epsilon(1e-12));
        }
}

TEST_CASE("continuation pole is reported with the offending argument") {
    const AlgebraParams a = AlgebraParams::from_canonical(
        1.0, 0.0, -std::numbers::pi * std::numbers::pi, 0.0);
    CHECK_THROWS_WITH_AS(f_squared(3, a), doctest::Contains("pole"), std::domain_error);
}

TEST_CASE("deformation profile at the vacuum returns the n -> 0 limit") {
    // tau mu / sinh(tau mu) * exp(tau (beta - nu)); the value only ever
    // enters multiplied by n = 0
    const AlgebraParams a = AlgebraParams::from_canonical(1.0, 0.05, 0.04, 0.2);
    const double expected = 0.2 / std::sinh(0.2) * std::exp(0.2 - 0.05);
    CHECK(f_squared(0, a) == doctest::Approx(expected).epsilon(1e-14));
    CHECK_THROWS_AS(f_squared(-1, a), std::invalid_argument);
}

TEST_CASE("exponent reparametrization round trip") {
    const AlgebraParams a = AlgebraParams::from_exponents(0.7, 0.31, 0.1, 0.11);
    CHECK(a.nu == doctest::Approx(0.21).epsilon(1e-15));
    CHECK(a.alpha() == doctest::Approx(0.31).epsilon(1e-14));
    CHECK(a.gamma_exp() == doctest::Approx(0.11).epsilon(1e-14));
    CHECK(a.exponents_real());
    CHECK(a.q() == doctest::Approx(std::exp(0.7)).epsilon(1e-15));

    const AlgebraParams kerr = AlgebraParams::from_canonical(1.0, 0.1, -0.3, 0.0);
    CHECK(!kerr.exponents_real());
    CHECK_THROWS_AS(kerr.alpha(), std::domain_error);
}

TEST_CASE("free oscillator ladder in the undeformed limit") {
    const AlgebraParams a = AlgebraParams::from_canonical(0.0, 0.0, 0.0, 0.0);
    const auto e = free_hamiltonian_energies(8, a);
    for (int n = 0; n < 8; ++n)
        CHECK(e[static_cast<size_t>(n)] == doctest::Approx(n + 0.5).epsilon(1e-15));
}

TEST_CASE("free oscillator levels equal the closed form per level") {
    for (double nu : {0.0, 0.03, 0.1})
        for (double mu_sq : {0.0, 0.04, -0.02})
            for (double beta : {0.0, 0.2}) {
                const AlgebraParams a = AlgebraParams::from_canonical(1.0, nu, mu_sq, beta);
                const auto e = free_hamiltonian_energies(30, a);
                for (long n = 0; n < 30; ++n)
                    CHECK(e[static_cast<size_t>(n)] ==
                          doctest::Approx(closed_form_energy(n, a)).epsilon(1e-12));
            }
}

TEST_CASE("collision limit of the free oscillator is first order in nu") {
    // mu^2 = 0, nu = kappa/(2 omega0): interaction approaches (kappa/2) n^2,
    // relative error linear in nu
    const double kappa = 0.1;
    auto max_rel_err = [&](double nu) {
        const AlgebraParams a = AlgebraParams::from_canonical(1.0, nu, 0.0, 0.0,
                                                              kappa / (2.0 * nu));
        const auto e = free_hamiltonian_energies(11, a);
        double worst = 0.0;
        for (long n = 1; n <= 10; ++n) {
            // energies are per hbar omega0; interaction in hbar units
            const double interaction =
                (e[static_cast<size_t>(n)] - (n + 0.5)) * a.omega0;
            const double target = 0.5 * kappa * static_cast<double>(n) * n;
            worst = std::max(worst, std::abs(interaction / target - 1.0));
        }
        return worst;
    };
    const double e1 = max_rel_err(1e-3);
    const double e2 = max_rel_err(5e-4);
    CHECK(e1 <= 5e-2);
    CHECK(e1 / e2 == doctest::Approx(2.0).epsilon(0.15));  // first order in nu
}

TEST_CASE("expanded levels: undeformed, direct value, and grouping identity") {
    const auto plain = expanded_hamiltonian_energies(6, 0.0, 0.0);
    for (int n = 0; n < 6; ++n)
        CHECK(plain[static_cast<size_t>(n)] == 2.0 * n + 1.0);

    // nu = 1e-3, mu^2 = 0, n = 4: 9 + 2e-3 * 16 = 9.032
    const auto e = expanded_hamiltonian_energies(5, 1e-3, 0.0);
    CHECK(e[4] == doctest::Approx(9.032).epsilon(1e-15));

    for (double nu : {0.0, 0.01, -0.02})
        for (double mu_sq : {0.0, 0.05, -0.03}) {
            const auto reg =
                expanded_hamiltonian_energies(20, nu, mu_sq, ExpansionForm::regrouped);
            const auto mid =
                expanded_hamiltonian_energies(20, nu, mu_sq, ExpansionForm::intermediate);
            for (int n = 0; n < 20; ++n)
                CHECK(reg[static_cast<size_t>(n)] ==
                      doctest::Approx(mid[static_cast<size_t>(n)]).epsilon(1e-14));
        }
}

TEST_CASE("Kerr reduction: linear coefficient cancels exactly at mu^2 = -3 nu") {
    for (double nu : {1e-4, 1e-3, 0.017, 0.1, 0.25}) {
        const double mu_sq = -3.0 * nu;
        CHECK(expansion_linear_coef(nu, mu_sq) == 0.0);  // exact cancellation
        CHECK(expansion_pair_coef(nu, mu_sq) ==
              doctest::Approx(nu / 2.0).epsilon(1e-14));
    }
    // pair coefficient nu/2 with nu = 2k/omega0 gives the n(n-1) weight k/2
    // in energy units: (omega0/2) * (nu/2) = k/2
    const double k = 0.05, omega0 = 1.7;
    const double nu = 2.0 * k / omega0;
    CHECK(0.5 * omega0 * expansion_pair_coef(nu, -3.0 * nu) ==
          doctest::Approx(0.5 * k).epsilon(1e-14));
}

TEST_CASE("expansion error: nu-part shrinks quadratically when nu halves") {
    // error of the truncated expansion against the closed form, with the
    // pure mu^2 offset subtracted; at mu^2 = 0 the reduction is a clean 4x
    auto nu_part = [](double nu, double mu_sq, long n) {
        const AlgebraParams a = AlgebraParams::from_canonical(1.0, nu, mu_sq, 0.0);
        const AlgebraParams a0 = AlgebraParams::from_canonical(1.0, 0.0, mu_sq, 0.0);
        const double e26 =
            expanded_hamiltonian_energies(static_cast<int>(n) + 1, nu, mu_sq)
                [static_cast<size_t>(n)] / 2.0;
        const double e26_0 =
            expanded_hamiltonian_energies(static_cast<int>(n) + 1, 0.0, mu_sq)
                [static_cast<size_t>(n)] / 2.0;
        const double err = e26 - closed_form_energy(n, a);
        const double err0 = e26_0 - closed_form_energy(n, a0);
        return err - err0;
    };

    const long n = 6;
    const double pure = nu_part(1e-3, 0.0, n) / nu_part(5e-4, 0.0, n);
    CHECK(pure == doctest::Approx(4.0).epsilon(0.05));

    // with mu^2 = 1e-4 a nu mu^2 cross term mixes in and the factor drops
    // toward 2; it must stay within the second-order window
    const double mixed = nu_part(1e-3, 1e-4, n) / nu_part(5e-4, 1e-4, n);
    CHECK(mixed >= 2.0);
    CHECK(mixed <= 4.5);
}

TEST_CASE("collision levels") {
    const auto zero = collision_hamiltonian_energies(6, 0.0);
    for (double v : zero) CHECK(v == 0.0);

    const auto e = collision_hamiltonian_energies(6, 0.1);
    CHECK(e[5] == doctest::Approx(1.25).epsilon(1e-15));

    // identical to the expansion's interaction part at mu^2 = 0, nu = k/(2 w0)
    const double kappa = 0.08, omega0 = 2.0;
    const double nu = kappa / (2.0 * omega0);
    const auto exp_e = expanded_hamiltonian_energies(12, nu, 0.0);
    const auto col_e = collision_hamiltonian_energies(12, kappa);
    for (int n = 0; n < 12; ++n) {
        const double interaction =
            0.5 * omega0 * (exp_e[static_cast<size_t>(n)] - (2.0 * n + 1.0));
        CHECK(interaction == doctest::Approx(col_e[static_cast<size_t>(n)]).epsilon(1e-12));
    }
}

TEST_CASE("intrinsic and collisional deformation factors") {
    for (long n : {0L, 1L, 7L, 100L}) CHECK(f1_of_n(n, 0.0) == 1.0);
    CHECK(f1_of_n(1, 0.3) == 1.0);
    CHECK(f1_of_n(5, 0.01) == doctest::Approx(std::sqrt(0.96)).epsilon(1e-15));
    CHECK_THROWS_WITH_AS(f1_of_n(12, 0.1), doctest::Contains("radicand"),
                         std::domain_error);

    for (long n : {0L, 1L, 7L}) CHECK(f2_of_n(n, 0.0) == 1.0);
    CHECK(f2_of_n(1, 0.77) == 1.0);
    CHECK(f2_of_n(5, 0.1) == doctest::Approx(std::sqrt(1.4)).epsilon(1e-15));
    CHECK_THROWS_AS(f2_of_n(0, 2.0), std::domain_error);
}

TEST_CASE("phonon commutator diagonal is 1 - 2n/N") {
    const long n_atoms = 10;
    const int dim = 9;
    const auto [bq, bqd] = gardiner_ops(n_atoms, dim);
    const FockMatrix comm = bq * bqd - bqd * bq;
    CHECK(comm.at(0, 0).real() == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(std::abs(comm.at(5, 5).real()) <= 1e-14);  // 1 - 2*5/10
    for (int n = 0; n + 2 <= dim; ++n) {
        const double expected = 1.0 - 2.0 * n / static_cast<double>(n_atoms);
        CHECK(comm.at(n, n).real() == doctest::Approx(expected).epsilon(1e-13));
        CHECK(std::abs(comm.at(n, n).imag()) == 0.0);
    }
}

TEST_CASE("phonon operators: exact adjoint and truncation-safe identity") {
    const auto [bq, bqd] = gardiner_ops(100, 20);
    for (int i = 0; i < 20; ++i)
        for (int j = 0; j < 20; ++j)
            CHECK(bqd.at(i, j) == std::conj(bq.at(j, i)));

    const FockMatrix comm = bq * bqd - bqd * bq;
    double worst = 0.0;
    for (int n = 0; n + 2 <= 20; ++n)
        worst = std::max(worst, std::abs(comm.at(n, n) - Complex(1.0 - 0.02 * n)));
    CHECK(worst <= 1e-13);

    CHECK_THROWS_AS(gardiner_ops(10, 12), std::invalid_argument);
    CHECK_THROWS_AS(gardiner_ops(0, 2), std::invalid_argument);
}

TEST_CASE("doubly deformed operators reduce correctly") {
    // both deformations effectively off
    const auto [b_off, b_off_dag] = small_deformation_ops(1000000000000L, 0.0, 8);
    CHECK(b_off.max_abs_diff(FockMatrix::annihilation(8)) <= 1e-10);
    CHECK(b_off_dag.max_abs_diff(FockMatrix::annihilation(8).adjoint()) <= 1e-10);

    // collisions off: exactly b - b+bb/(2N)
    const long n_atoms = 100;
    const int dim = 10;
    const FockMatrix b = FockMatrix::annihilation(dim);
    const FockMatrix expected =
        b - (b.adjoint() * b * b).scaled(0.5 / static_cast<double>(n_atoms));
    const auto [bq_k0, bq_k0_dag] = small_deformation_ops(n_atoms, 0.0, dim);
    CHECK(bq_k0.max_abs_diff(expected) == 0.0);
}

TEST_CASE("doubly deformed operators approach the exact composition quadratically") {
    // exact composition: gardiner annihilator times f2 of its own number
    // operator, evaluated on the diagonal
    auto exact_composition = [](long n_atoms, double kappa, int dim) {
        const auto [bq, bqd] = gardiner_ops(n_atoms, dim);
        const FockMatrix nq = bqd * bq;
        std::vector<double> f2_diag(static_cast<size_t>(dim));
        for (int i = 0; i < dim; ++i)
            f2_diag[static_cast<size_t>(i)] =
                std::sqrt(kappa * nq.at(i, i).real() + 1.0 - kappa);
        return bq * FockMatrix::diagonal(f2_diag);
    };

    const int dim = 10;
    const auto [b1, b1d] = small_deformation_ops(100, 0.05, dim);
    const double d1 = b1.max_abs_diff(exact_composition(100, 0.05, dim));
    const auto [b2, b2d] = small_deformation_ops(200, 0.025, dim);
    const double d2 = b2.max_abs_diff(exact_composition(200, 0.025, dim));

    CHECK(d1 > 0.0);
    CHECK(d1 / d2 == doctest::Approx(4.0).epsilon(0.4));  // dropped terms are 2nd order
}

TEST_CASE("dense CSV export") {
    FockMatrix m(2);
    m.at(0, 1) = Complex(1.5, -2.0);
    std::ostringstream os;
    m.write_csv(os);
    CHECK(os.str() == "0+0j,1.5-2j\n0+0j,0+0j\n");
}
