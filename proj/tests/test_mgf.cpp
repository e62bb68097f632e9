#include <doctest.h>

#include <cmath>

#include "spectra/densities.hpp"
#include "spectra/expansion.hpp"
#include "spectra/mgf.hpp"
#include "spectra/quadrature.hpp"
#include "spectra/specialfn.hpp"

using namespace spectra;
using namespace spectra::mgf;
using densities::EnsembleSpec;
using densities::Kind;
using densities::Normalization;

TEST_CASE("mgf_eval reductions and masses") {
    for (int n : {1, 2, 5})
        CHECK(mgf_eval(Kind::GUE, n, 0.7, 0.0) == doctest::Approx(double(n)).epsilon(1e-14));
    for (double s : {-1.0, 0.4, 2.0}) {
        double u = 0.7 * s * s;
        CHECK(mgf_eval(Kind::GUE, 1, 0.7, s) == doctest::Approx(std::exp(u / 2)).epsilon(1e-14));
        CHECK(mgf_eval(Kind::GSE, 1, 0.7, s, MGFConvention::mass_consistent,
                       Normalization::probability)
              == doctest::Approx(std::exp(u / 2)).epsilon(1e-13));
    }
    // masses, both parities, through n = 8
    for (Kind kind : {Kind::GOE, Kind::GUE, Kind::GSE})
        for (int n = 1; n <= 8; ++n)
            CHECK(mgf_eval(kind, n, 0.5, 0.0) == doctest::Approx(double(n)).epsilon(1e-10));
    // the printed GSE formula has mass n-1 at s=0
    CHECK(mgf_eval(Kind::GSE, 4, 0.5, 0.0, MGFConvention::as_printed)
          == doctest::Approx(3.0).epsilon(1e-12));
}

TEST_CASE("mass_consistent self-check passes for every kind") {
    for (Kind kind : {Kind::GOE, Kind::GUE, Kind::GSE})
        for (int n = 1; n <= 8; ++n)
            CHECK_NOTHROW((void)mgf_eval(kind, n, 0.5, 0.3));
}

TEST_CASE("mgf is even in s") {
    for (Kind kind : {Kind::GOE, Kind::GUE, Kind::GSE})
        for (int n : {2, 3, 6})
            for (double s : {0.4, 1.3}) {
                double a = mgf_eval(kind, n, 0.5, s);
                double b = mgf_eval(kind, n, 0.5, -s);
                CHECK(a == doctest::Approx(b).epsilon(1e-12));
            }
}

TEST_CASE("mgf matches quadrature of exp(sx) against the density") {
    for (Kind kind : {Kind::GOE, Kind::GUE, Kind::GSE})
        for (int n : {1, 2, 3})
            for (double s : {-1.5, 0.8}) {
                EnsembleSpec spec{kind, n, 0.5, Normalization::mean_count};
                double quad = densities::integrate_weighted(
                    spec, [s](double x) { return std::exp(s * x); });
                CHECK(mgf_eval(kind, n, 0.5, s) == doctest::Approx(quad).epsilon(1e-9));
            }
    // away from sigma^2 = 1/2 the even-n gauss-integral term and the odd-n
    // Fourier-eigenfunction term both carry the sigma scaling
    for (int n : {3, 4})
        for (double s2 : {0.3, 1.0})
            for (double s : {-0.9, 0.6}) {
                EnsembleSpec spec{Kind::GOE, n, s2, Normalization::mean_count};
                double quad = densities::integrate_weighted(
                    spec, [s](double x) { return std::exp(s * x); });
                CHECK(mgf_eval(Kind::GOE, n, s2, s) == doctest::Approx(quad).epsilon(1e-9));
            }
}

TEST_CASE("mgf ODE residuals") {
    for (double s : {0.3, 1.0})
        CHECK(std::fabs(mgf_ode_residual(Kind::GUE, 1, 0.8, s)) < 1e-12);
    CHECK(mgf_ode_residual(Kind::GUE, 2, 0.5, 0.0) == 0.0);
    CHECK(std::fabs(mgf_ode_residual(Kind::GUE, 3, 0.5, 0.5)) < 1e-9);
    for (Kind kind : {Kind::GOE, Kind::GUE, Kind::GSE})
        for (int n : {1, 2, 4, 7})
            for (double s : {-1.7, -0.4, 0.9, 2.0})
                CHECK(std::fabs(mgf_ode_residual(kind, n, 0.5, s)) < 1e-9);
}

TEST_CASE("GSE/GUE order coupling: 8n+2 = 4(2n+1) - 2") {
    for (int n = 1; n <= 12; ++n) CHECK(8 * n + 2 == 4 * (2 * n + 1) - 2);
}

TEST_CASE("exact moments from the series representation") {
    for (int n : {1, 2, 4, 8}) {
        auto m = moments_from_mgf(Kind::GUE, n, frac(1, n), 8,
                                  MGFConvention::mass_consistent, Normalization::probability);
        CHECK(m[0] == 1);
        CHECK(m[1] == 0);
        CHECK(m[2] == 1);
        CHECK(m[3] == 0);
        CHECK(m[4] == Rational(2) + Rational(1) / (Rational(n) * n));
    }
    // GOE n=2: diag var 2 sigma^2, off-diag sigma^2: m2 = (1/2)(2*1 + 2*1/2)
    auto goe = moments_from_mgf(Kind::GOE, 2, frac(1, 2), 4,
                                MGFConvention::mass_consistent, Normalization::probability);
    CHECK(goe[2] == frac(3, 2));
    // GSE n=2 mass and second moment: sigma^2 (2n-1)
    auto gse = moments_from_mgf(Kind::GSE, 2, frac(1, 2), 4,
                                MGFConvention::mass_consistent, Normalization::probability);
    CHECK(gse[0] == 1);
    CHECK(gse[2] == frac(3, 2));
    CHECK_THROWS_AS((void)moments_from_mgf(Kind::GUE, 2, frac(1, 2), 5), std::domain_error);
}

TEST_CASE("series moments equal gue_expand exactly") {
    for (int n : {2, 5}) {
        auto mom = moments_from_mgf(Kind::GUE, n, frac(1, n), 8,
                                    MGFConvention::mass_consistent, Normalization::probability);
        for (int m = 1; m <= 4; ++m) {
            auto rep = expansion::gue_expand(PolyQ::monomial(2 * m, Rational(1)), n);
            Rational total(0);
            for (const auto& t : rep.terms_exact) total += t;
            CHECK(total == mom[2 * m]);
        }
    }
}

TEST_CASE("two-Hermite Laplace integral") {
    for (double s : {0.3, 1.1})
        CHECK(two_hermite_laplace(0, 0, s)
              == doctest::Approx(std::sqrt(M_PI) * std::exp(s * s / 4)).epsilon(1e-14));
    for (int nn : {1, 3, 6}) {
        double expect = std::sqrt(M_PI) * std::pow(2.0, nn);
        for (int j = 2; j <= nn; ++j) expect *= j;
        CHECK(two_hermite_laplace(nn, nn, 0.0) == doctest::Approx(expect).epsilon(1e-13));
    }
    // quadrature oracle for (nn, k, s) = (1, 0, 0.7)
    double quad = quadrature::adaptive(
        [](double x) {
            return std::exp(0.7 * x - x * x) * specialfn::hermite_poly(1, x);
        },
        -30.0, 30.0, 1e-13, 64, 16);
    CHECK(two_hermite_laplace(1, 0, 0.7) == doctest::Approx(quad).epsilon(1e-10));
    CHECK(two_hermite_laplace(1, 0, 0.7)
          == doctest::Approx(std::sqrt(M_PI) * 0.7 * std::exp(0.1225)).epsilon(1e-13));
}

namespace {
double a_integral_quadrature(int idx, double s) {
    return quadrature::adaptive(
        [idx, s](double x) {
            return std::exp(s * x - x * x / 2) * specialfn::hermite_poly(idx, x)
                 * specialfn::gauss_integral(x);
        },
        -30.0, 30.0, 1e-12, 64, 16);
}
} // namespace

TEST_CASE("a_series_value against quadrature and its recurrence") {
    CHECK(a_series_value(2, 0.0) == doctest::Approx(2.0 * std::sqrt(M_PI)).epsilon(1e-13));
    CHECK(a_series_value(2, 1.0) == doctest::Approx(a_integral_quadrature(1, 1.0)).epsilon(1e-8));
    CHECK(a_series_value(4, 0.8) == doctest::Approx(a_integral_quadrature(3, 0.8)).epsilon(1e-8));
    // A_{m+1} = 2 s A_m + 2 m A_{m-1} + 2 sqrt(pi) e^{s^2/4} s^m at m = 1
    const double s = 0.5;
    double A0 = std::sqrt(2 * M_PI) * std::exp(s * s / 2) * specialfn::gauss_integral(s / std::sqrt(2.0));
    double A1 = a_series_value(2, s);
    double A2 = a_integral_quadrature(2, s);
    CHECK(A2 == doctest::Approx(2 * s * A1 + 2 * A0 + 2 * std::sqrt(M_PI) * std::exp(s * s / 4) * s)
                    .epsilon(1e-9));
}

TEST_CASE("1/n expansion of the normalized transforms") {
    // GUE: s = 0 collapses to n
    auto p0 = mgf_expansion_1n(Kind::GUE, 0.0, 7, 3);
    CHECK(p0.back() == doctest::Approx(7.0).epsilon(1e-14));
    // full order reproduces the closed form
    for (int n : {5, 10}) {
        auto partials = mgf_expansion_1n(Kind::GUE, 1.0, n, 4);
        double closed = mgf_eval(Kind::GUE, n, 1.0 / n, 1.0);
        CHECK(partials.back() == doctest::Approx(closed).epsilon(1e-12));
        // the truncation error decreases monotonically through K = 4
        double prev = std::fabs(partials[0] - closed);
        for (int K = 1; K <= 4; ++K) {
            double err = std::fabs(partials[K] - closed);
            CHECK(err <= prev * (1 + 1e-12));
            prev = err;
        }
    }
    // GSE section-7.2 double sum vs the direct second term
    auto gse = mgf_expansion_1n(Kind::GSE, 1.0, 4, 4);
    CHECK(gse.back() == doctest::Approx(gse_mgf_second_term(4, 1.0)).epsilon(1e-10));
}

TEST_CASE("series moments agree with quadrature for every ensemble") {
    // the series path and the density evaluator share no code beyond the
    // Hermite recurrences, so this pins both
    for (Kind kind : {Kind::GOE, Kind::GUE, Kind::GSE})
        for (int n : {2, 3, 5}) {
            auto mom = moments_from_mgf(kind, n, frac(1, 2), 6,
                                        MGFConvention::mass_consistent,
                                        Normalization::probability);
            EnsembleSpec spec{kind, n, 0.5, Normalization::probability};
            for (int k : {2, 4, 6}) {
                double quad = densities::integrate_against(spec, PolyQ::monomial(k, Rational(1)));
                CHECK(mom[k].get_d() == doctest::Approx(quad).epsilon(1e-9));
            }
        }
}
