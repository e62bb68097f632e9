// Acceptance suite: one pass/fail line per criterion; exit 0 iff all pass.
#include <chrono>
#include <cstdio>

#include "spectra/verify.hpp"

namespace {

bool report(int idx, const spectra::verify::CheckResult& c, double ms) {
    std::printf("%s criterion %2d (%s): measured=%.3e tolerance=%.3e [%.1f s]%s%s\n",
                c.pass ? "PASS" : "FAIL", idx, c.name.c_str(), c.measured, c.tolerance,
                ms / 1000.0, c.detail.empty() ? "" : " -- ", c.detail.c_str());
    std::fflush(stdout);
    return c.pass;
}

template <class F>
bool timed(int idx, F&& fn) {
    auto t0 = std::chrono::steady_clock::now();
    auto c = fn();
    auto t1 = std::chrono::steady_clock::now();
    return report(idx, c, std::chrono::duration<double, std::milli>(t1 - t0).count());
}

} // namespace

int main() {
    using namespace spectra::verify;
    bool ok = true;
    ok &= timed(1, [] { return c1_density_ode_residuals(); });
    ok &= timed(2, [] { return c2_mass_checks(); });
    ok &= timed(3, [] { return c3_mgf_density_consistency(); });
    ok &= timed(4, [] { return c4_mgf_ode_residuals(); });
    ok &= timed(5, [] { return c5_exact_gue_moments(); });
    ok &= timed(6, [] { return c6_gue_recursion(); });
    ok &= timed(7, [] { return c7_expansion_convergence(); });
    ok &= timed(8, [] { return c8_step_identity(); });
    ok &= timed(9, [] { return c9_monte_carlo(2024); });
    ok &= timed(10, [] { return c10_section7_expansions(); });
    ok &= timed(11, [] { return c11_hermite_suite(); });
    std::printf("%s\n", ok ? "ALL CRITERIA PASS" : "CRITERIA FAILED");
    return ok ? 0 : 1;
}
