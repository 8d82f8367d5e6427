#ifndef FDBEC_VERIFY_HPP
#define FDBEC_VERIFY_HPP

#include <cstdint>
#include <string>
#include <vector>

namespace fdbec {

struct CheckResult {
    std::string name;
    bool pass = false;
    std::string detail;  // observed vs expected values
};

struct VerifyOptions {
    std::uint64_t seed = 1;
    int sde_n_traj = 1024;
    /// Test hook: scales the analytic B coefficient inside the
    /// resolvent-ratio check so the check's sensitivity is itself testable.
    double b_corruption = 1.0;
    /// When nonempty, an audit CSV with per-source rows is written here.
    std::string csv_path;
};

/// Runs the full cross-check suite:
///   gardiner-commutator      matrix commutator diagonal vs 1 - 2n/N
///   algebra-recursion        closed-form |f(n)|^2 vs the algebra recursion
///   undeformed-null-spectrum kappa = eta collapse to the linear theory
///   resolvent-ratio          spectrum formula vs frequency-domain solve
///   sde-spectrum             periodogram ensemble vs symmetrized resolvent
///   meanfield-fixed-point    flow limit vs root, relaxation-rate verdict
/// Deterministic for a fixed seed (byte-identical CSV output).
std::vector<CheckResult> run_verify(const VerifyOptions& opt = {});

bool all_passed(const std::vector<CheckResult>& results);

} // namespace fdbec

#endif
