#include <doctest.h>

#include <cmath>

#include "spectra/densities.hpp"
#include "spectra/quadrature.hpp"
#include "spectra/specialfn.hpp"

using namespace spectra;
using namespace spectra::densities;

namespace {

// quadrature oracle for the defining sign-integral of tau_n
double tau_defining_integral(int n, double x) {
    auto phi_n = [n](double t) { return specialfn::hermite_fn(n, t); };
    double left = quadrature::adaptive(phi_n, -30.0, x, 1e-12, 32, 20);
    double right = quadrature::adaptive(phi_n, x, 30.0, 1e-12, 32, 20);
    return std::sqrt(n / 2.0) * specialfn::hermite_fn(n - 1, x) * 0.5 * (left - right);
}

} // namespace

TEST_CASE("tau closed form: n=1 reduction and quadrature oracle") {
    CHECK(tau_eval(1, 0.0) == doctest::Approx(-1.0 / std::sqrt(M_PI)).epsilon(1e-14));
    for (double x : {-0.8, 0.4, 1.9})
        CHECK(tau_eval(1, x) == doctest::Approx(-std::exp(-x * x) / std::sqrt(M_PI)).epsilon(1e-13));
    CHECK(tau_eval(2, 3.0) == doctest::Approx(tau_defining_integral(2, 3.0)).epsilon(1e-9));
    CHECK(tau_eval(5, 1.2) == doctest::Approx(tau_defining_integral(5, 1.2)).epsilon(1e-9));
    CHECK(tau_eval(6, -0.7) == doctest::Approx(tau_defining_integral(6, -0.7)).epsilon(1e-9));
}

TEST_CASE("tau parity") {
    for (int n : {1, 2, 3, 5, 8})
        for (double x : {0.3, 1.7})
            CHECK(tau_eval(n, x) == doctest::Approx(tau_eval(n, -x)).epsilon(1e-13));
}

TEST_CASE("tau derivatives match central differences") {
    const double h = 1e-5;
    for (int n : {2, 4, 7}) {
        for (double x : {-1.3, 0.6}) {
            double fd1 = (tau_eval(n, x + h) - tau_eval(n, x - h)) / (2 * h);
            CHECK(tau_eval(n, x, 1) == doctest::Approx(fd1).epsilon(1e-8));
            double fd2 = (tau_eval(n, x + h, 1) - tau_eval(n, x - h, 1)) / (2 * h);
            CHECK(tau_eval(n, x, 2) == doctest::Approx(fd2).epsilon(1e-8));
            double fd3 = (tau_eval(n, x + h, 2) - tau_eval(n, x - h, 2)) / (2 * h);
            CHECK(tau_eval(n, x, 3) == doctest::Approx(fd3).epsilon(1e-8));
        }
    }
}

TEST_CASE("density reductions at n = 1") {
    // GUE n=1, sigma^2=1: standard normal
    CHECK(density_eval({{Kind::GUE, 1, 1.0, Normalization::mean_count}, 0.0, 0})
          == doctest::Approx(1.0 / std::sqrt(2 * M_PI)).epsilon(1e-14));
    // GOE n=1, sigma^2=1/2: N(0, 2 sigma^2) = N(0,1) -- the variance-convention witness
    CHECK(density_eval({{Kind::GOE, 1, 0.5, Normalization::mean_count}, 0.0, 0})
          == doctest::Approx(1.0 / std::sqrt(2 * M_PI)).epsilon(1e-14));
    // and the full profile
    for (double x : {-1.2, 0.5, 2.0}) {
        CHECK(density_eval({{Kind::GOE, 1, 0.5, Normalization::mean_count}, x, 0})
              == doctest::Approx(std::exp(-x * x / 2) / std::sqrt(2 * M_PI)).epsilon(1e-13));
        CHECK(density_eval({{Kind::GSE, 1, 1.0, Normalization::mean_count}, x, 0})
              == doctest::Approx(std::exp(-x * x / 2) / std::sqrt(2 * M_PI)).epsilon(1e-13));
    }
}

TEST_CASE("probability normalization integrates to one") {
    EnsembleSpec spec{Kind::GUE, 3, 0.5, Normalization::probability};
    double mass = integrate_against(spec, PolyQ::monomial(0, Rational(1)));
    CHECK(mass == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("mean-count mass equals n") {
    for (Kind kind : {Kind::GOE, Kind::GUE, Kind::GSE})
        for (int n : {1, 2, 3, 5, 6}) {
            EnsembleSpec spec{kind, n, 0.5, Normalization::mean_count};
            double mass = integrate_against(spec, PolyQ::monomial(0, Rational(1)));
            CHECK(mass == doctest::Approx(double(n)).epsilon(1e-9));
        }
}

TEST_CASE("density ODE residuals vanish") {
    for (double x : {-2.0, -0.3, 0.0, 0.7, 1.1, 2.4}) {
        CHECK(std::fabs(density_ode_residual({Kind::GUE, 1, 1.0, {}}, x)) < 1e-12);
        CHECK(std::fabs(density_ode_residual({Kind::GUE, 5, 0.5, {}}, x)) < 1e-9);
        CHECK(std::fabs(density_ode_residual({Kind::GOE, 4, 0.5, {}}, x)) < 1e-9);
        CHECK(std::fabs(density_ode_residual({Kind::GOE, 7, 0.5, {}}, x)) < 1e-9);
        CHECK(std::fabs(density_ode_residual({Kind::GSE, 3, 0.5, {}}, x)) < 1e-9);
        CHECK(std::fabs(density_ode_residual({Kind::GSE, 6, 0.25, {}}, x)) < 1e-9);
    }
}

TEST_CASE("tau ODE residual") {
    CHECK(std::fabs(tau_ode_residual(1, 0.0)) < 1e-10);
    CHECK(std::fabs(tau_ode_residual(2, 0.5)) < 1e-9);
    CHECK(std::fabs(tau_ode_residual(3, -1.4)) < 1e-9);
    CHECK(std::fabs(tau_ode_residual(3, 1.4)) < 1e-9);
    CHECK(std::fabs(tau_ode_residual(9, 2.3)) < 1e-9);
}

TEST_CASE("densities are even and nonnegative on the window") {
    for (Kind kind : {Kind::GOE, Kind::GUE, Kind::GSE})
        for (int n : {1, 4, 9}) {
            EnsembleSpec spec{kind, n, 0.5, Normalization::mean_count};
            DensityEvaluator ev(spec, 0);
            double R = window(spec);
            for (int i = 0; i <= 40; ++i) {
                double x = -R + 2 * R * i / 40.0;
                double v = ev(x, 0);
                CHECK(v >= -1e-12);
                CHECK(v == doctest::Approx(ev(-x, 0)).epsilon(1e-12));
            }
        }
}

TEST_CASE("GUE density derivative identity (sigma^2 = 1/2)") {
    for (int n : {1, 3, 10})
        for (double x : {-2.1, 0.4, 1.8}) {
            EnsembleSpec spec{Kind::GUE, n, 0.5, Normalization::mean_count};
            DensityEvaluator ev(spec, 1);
            double rhs = -std::sqrt(2.0 * n) * specialfn::hermite_fn(n, x)
                       * specialfn::hermite_fn(n - 1, x);
            CHECK(ev(x, 1) == doctest::Approx(rhs).epsilon(1e-12));
        }
}

TEST_CASE("integrate_against second and fourth moment identities") {
    for (int n : {2, 5, 10}) {
        EnsembleSpec spec{Kind::GUE, n, 1.0 / n, Normalization::probability};
        CHECK(integrate_against(spec, PolyQ::monomial(2, Rational(1)))
              == doctest::Approx(1.0).epsilon(1e-9));
    }
    EnsembleSpec spec{Kind::GUE, 2, 0.5, Normalization::probability};
    CHECK(integrate_against(spec, PolyQ::monomial(4, Rational(1)))
          == doctest::Approx(2.25).epsilon(1e-9)); // Harer-Zagier 2 + 1/n^2
}

TEST_CASE("semicircle limit of the scaled GUE density") {
    EnsembleSpec spec{Kind::GUE, 200, 1.0 / 200, Normalization::probability};
    DensityEvaluator ev(spec, 0);
    for (double x : {0.0, 1.0, 1.9}) {
        double sc = std::sqrt(4.0 - x * x) / (2 * M_PI);
        CHECK(std::fabs(ev(x, 0) - sc) < 2e-2);
    }
}

TEST_CASE("derivative order is capped at three") {
    CHECK_THROWS_AS(density_eval({{Kind::GUE, 2, 0.5, {}}, 0.0, 4}), std::domain_error);
}

TEST_CASE("grid kernel: OpenMP and serial paths are bit-identical") {
    EnsembleSpec spec{Kind::GSE, 6, 0.5, Normalization::probability};
    auto a = density_grid(spec, -4.0, 4.0, 2001, 1);
    auto b = density_grid_serial(spec, -4.0, 4.0, 2001, 1);
    REQUIRE(a.size() == b.size());
    for (size_t i = 0; i < a.size(); ++i) CHECK(a[i] == b[i]);
}

TEST_CASE("alpha denominator closed form vs quadrature") {
    for (int k : {0, 2, 6, 12}) {
        double quad = quadrature::adaptive(
            [k](double t) { return specialfn::hermite_fn(k, t); }, -30.0, 30.0, 1e-12, 64, 16);
        CHECK(phi_integral_closed(k) == doctest::Approx(quad).epsilon(1e-10));
    }
}

TEST_CASE("adaptive quadrature reports refinement failure") {
    // a pseudo-random integrand never meets the relative agreement target
    auto noisy = [](double x) {
        double v = std::sin(1e9 * x) * std::sin(7e8 * x + 1.0);
        return v;
    };
    CHECK_THROWS_AS((void)quadrature::adaptive(noisy, 0.0, 1.0, 1e-14, 4, 6),
                    std::runtime_error);
}
