#ifndef SPECTRA_VERIFY_HPP
#define SPECTRA_VERIFY_HPP

#include <cstdint>
#include <string>
#include <vector>

namespace spectra::verify {

struct CheckResult {
    std::string name;
    bool pass = false;
    double measured = 0.0;  // worst residual / deviation observed
    double tolerance = 0.0;
    std::string detail;
};

/// Fast suite: every deterministic criterion (no Monte Carlo). ~<60 s.
std::vector<CheckResult> run_fast();

/// Full suite: fast + Monte Carlo concordance and the sampling sanity checks.
std::vector<CheckResult> run_full(std::uint64_t seed = 2024);

// Individual criteria, exposed for the acceptance binary.
CheckResult c1_density_ode_residuals();
CheckResult c2_mass_checks();
CheckResult c3_mgf_density_consistency();
CheckResult c4_mgf_ode_residuals();
CheckResult c5_exact_gue_moments();
CheckResult c6_gue_recursion();
CheckResult c7_expansion_convergence();
CheckResult c8_step_identity();
CheckResult c9_monte_carlo(std::uint64_t seed);
CheckResult c10_section7_expansions();
CheckResult c11_hermite_suite();
CheckResult alpha_denominator_crosscheck();
CheckResult semicircle_sampling_sanity(std::uint64_t seed);

} // namespace spectra::verify

#endif
