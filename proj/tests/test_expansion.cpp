#include <doctest.h>

#include <cmath>

#include "spectra/expansion.hpp"
#include "spectra/mgf.hpp"

using namespace spectra;
using namespace spectra::expansion;
using densities::Kind;

namespace {

PolyQ xpow(int d) { return PolyQ::monomial(d, Rational(1)); }

// deterministic "random" rationals for property checks
Rational rq(int i) { return frac(((i * 37) % 19) - 9, 1 + (i * 53) % 7); }

PolyQ defect(const PolyQ& g) {
    // (x^2-4) S(g)' + 3x S(g) + avg - g, zero as a polynomial when S solves it
    PolyQ f = op_S(g);
    PolyQ fp = f.derivative();
    PolyQ x2m4 = xpow(2) - PolyQ::monomial(0, Rational(4));
    PolyQ lhs = x2m4 * fp + xpow(1).scaled(Rational(3)) * f;
    return lhs + PolyQ::monomial(0, semicircle_avg_q(g)) - g;
}

} // namespace

TEST_CASE("op_S worked examples") {
    CHECK(op_S(PolyQ::monomial(0, Rational(1))).is_zero());
    PolyQ s2 = op_S(xpow(2));
    CHECK(s2.degree() == 1);
    CHECK(s2.coeff(1) == frac(1, 4));
    PolyQ s4 = op_S(xpow(4));
    CHECK(s4.coeff(3) == frac(1, 6));
    CHECK(s4.coeff(1) == frac(1, 2));
    CHECK(s4.coeff(0) == 0);
    CHECK(s4.coeff(2) == 0);
}

TEST_CASE("op_S defining identity holds exactly up to degree 10") {
    for (int d = 0; d <= 10; ++d) {
        std::vector<Rational> c(d + 1);
        for (int i = 0; i <= d; ++i) c[i] = rq(7 * d + i);
        c[d] += 1; // keep the degree
        CHECK(defect(PolyQ(c)).is_zero());
    }
}

TEST_CASE("op_S linearity and parity") {
    PolyQ g1 = xpow(6) + xpow(2).scaled(frac(3, 7));
    PolyQ g2 = xpow(8) - xpow(4).scaled(frac(11, 5));
    Rational a(2, 3), b(-5, 4);
    CHECK(op_S(g1.scaled(a) + g2.scaled(b)) == op_S(g1).scaled(a) + op_S(g2).scaled(b));
    CHECK(op_S(xpow(6)).is_odd());
    CHECK(op_S(xpow(5)).is_even());
    CHECK(op_T(xpow(8)).is_even());
    CHECK(op_T(xpow(7)).is_odd());
}

TEST_CASE("op_T degree law and examples") {
    CHECK(op_T(xpow(2)).is_zero());
    CHECK(op_T(PolyQ::monomial(0, Rational(1))).is_zero());
    PolyQ t4 = op_T(xpow(4));
    CHECK(t4.degree() == 0);
    CHECK(t4.coeff(0) == 1);
    for (int d = 4; d <= 10; ++d) CHECK(op_T(xpow(d)).degree() == d - 4);
}

TEST_CASE("gue_expand terminating values") {
    auto r2 = gue_expand(xpow(2), 7);
    REQUIRE(r2.terms_exact.size() == 1);
    CHECK(r2.terms_exact[0] == 1);

    auto r4 = gue_expand(xpow(4), 2);
    REQUIRE(r4.terms_exact.size() == 2);
    CHECK(r4.terms_exact[0] == 2);
    CHECK(r4.terms_exact[1] == frac(1, 4));

    auto r6 = gue_expand(xpow(6), 3);
    REQUIRE(r6.terms_exact.size() == 2);
    CHECK(r6.terms_exact[0] == 5);
    CHECK(r6.terms_exact[1] == frac(10, 9));
}

TEST_CASE("auxiliary series seeds and hand-checked coefficients") {
    // g = x^2, GSE, n = 1: h_2 = h_3 = 0, h_4 = -1/48, h_6 = 1/576
    auto h = aux_h_series(xpow(2), 1, Kind::GSE, 8, Rational(0), Rational(0));
    CHECK(h[2] == 0);
    CHECK(h[3] == 0);
    CHECK(h[4] == frac(-1, 48));
    CHECK(h[5] == 0);
    CHECK(h[6] == frac(1, 576));

    TruncParams tp;
    tp.trunc_degree = 40;
    CHECK(solve_aux_f(PolyQ(), 1, Kind::GSE, tp).is_zero());
    CHECK(solve_aux_f(xpow(2), 1, Kind::GSE, tp).is_odd());
}

TEST_CASE("auxiliary solution satisfies its equation through degree D-3") {
    for (int n : {1, 4, 10}) {
        for (Kind kind : {Kind::GSE, Kind::GOE}) {
            PolyQ g = xpow(6) + xpow(2).scaled(frac(5, 3));
            TruncParams tp;
            tp.trunc_degree = 48;
            PolyQ f = solve_aux_f(g, n, kind, tp);
            PolyQ fppp = f.derivative().derivative().derivative();
            Rational c = kind == Kind::GSE ? frac(8 * n + 2, n) : frac(4 * n - 2, n);
            PolyQ lhs = fppp.scaled(Rational(-4) / (Rational(n) * n))
                      + (PolyQ::monomial(2, Rational(1)) - PolyQ::monomial(0, c)) * f.derivative();
            PolyQ resid = lhs - g;
            for (int m = 0; m <= tp.trunc_degree - 3; ++m) CHECK(resid.coeff(m) == 0);
        }
    }
}

TEST_CASE("calibrated expansions converge to the quadrature references") {
    TruncParams tp;
    tp.precision_bits = 256;
    // GOE cells stabilize already at D = 200 (the bounded solution decays)
    tp.trunc_degree = 200;
    for (int n : {10, 20}) {
        auto rep = gse_goe_expand(xpow(2), n, Kind::GOE, 6, tp);
        REQUIRE(rep.reference.has_value());
        CHECK(std::fabs(rep.partials.back() - *rep.reference) < 1e-4);
        CHECK_FALSE(rep.divergence_flag);
    }
    // GSE n=20 needs the doubled budget; at D=200 the report must flag itself
    {
        auto flagged = gse_goe_expand(xpow(2), 20, Kind::GSE, 6, tp, ExpansionVariant::calibrated,
                                      false);
        CHECK(flagged.divergence_flag);
        tp.trunc_degree = 400;
        auto rep = gse_goe_expand(xpow(2), 20, Kind::GSE, 6, tp);
        REQUIRE(rep.reference.has_value());
        CHECK(std::fabs(rep.partials.back() - *rep.reference) < 1e-4);
        CHECK_FALSE(rep.divergence_flag);
    }
}

TEST_CASE("as_printed j=0 term is the semicircle average of the seeded q") {
    TruncParams tp;
    tp.trunc_degree = 120;
    tp.precision_bits = 192;
    int n = 6;
    auto rep = gse_goe_expand(xpow(2), n, Kind::GSE, 0, tp, ExpansionVariant::as_printed, false);
    PolyQ f = solve_aux_f(xpow(2), n, Kind::GSE, tp);
    PolyQ q = f.derivative().scaled(frac(1, n)) - f.times_x();
    Rational expect_q = frac(3, 2) * semicircle_avg_q(q);
    double expect = expect_q.get_d();
    CHECK(rep.partials.back() == doctest::Approx(expect).epsilon(1e-10));
}

TEST_CASE("GOE singular moment recurrence") {
    // mass of the boundary part is 1/n; x^2 moment gives the (4n-2)/n^2 defect
    for (int n : {10, 20, 40}) {
        CHECK(goe_singular_moment(PolyQ::monomial(0, Rational(1)), n, frac(1, n))
              == frac(1, n));
        CHECK(goe_singular_moment(xpow(2), n, frac(1, n))
              == Rational(4 * n - 2) / (Rational(n) * n));
    }
    CHECK_THROWS_AS(goe_singular_moment(xpow(4), 3, frac(1, 3)), std::domain_error);
}

TEST_CASE("step identity residual at n = 10") {
    TruncParams tp;
    tp.trunc_degree = 160;
    // the bounded GOE solution is clean at the nominal truncation
    CHECK(stepdiff_identity_residual(xpow(2), 10, Kind::GOE, tp) < 1e-5);
    CHECK(stepdiff_identity_residual(PolyQ(), 10, Kind::GSE, tp) == 0.0);
    // the seeded GSE solution needs the larger budget before the truncated
    // psi is trustworthy over the order-2n+1 support
    tp.trunc_degree = 640;
    CHECK(stepdiff_identity_residual(xpow(2), 10, Kind::GSE, tp) < 1e-5);
}

TEST_CASE("GUE recursion holds as an exact rational identity") {
    for (int n = 2; n <= 8; ++n) {
        auto mom = mgf::moments_from_mgf(Kind::GUE, n, frac(1, n), 8,
                                         mgf::MGFConvention::mass_consistent,
                                         densities::Normalization::probability);
        auto exact_moment = [&](const PolyQ& g) {
            Rational acc(0);
            for (int k = 0; k <= g.degree(); ++k) acc += g.coeff(k) * mom[k];
            return acc;
        };
        for (int m = 1; m <= 4; ++m) {
            PolyQ g = xpow(2 * m);
            CHECK(exact_moment(g)
                  == semicircle_avg_q(g) + exact_moment(op_T(g)) / (Rational(n) * n));
        }
    }
}

TEST_CASE("bounded auxiliary mode preconditions") {
    // GSE's resonance sits in the even chain, so no bounded solution exists
    CHECK_THROWS_AS((void)aux_h_series_mp(xpow(2), 4, Kind::GSE, 60, 128,
                                          BoundaryMode::bounded),
                    std::domain_error);
    CHECK_THROWS_AS((void)aux_h_series_mp(xpow(2), 5, Kind::GOE, 60, 128,
                                          BoundaryMode::bounded),
                    std::domain_error); // odd n
    CHECK_THROWS_AS((void)aux_h_series_mp(xpow(3), 4, Kind::GOE, 60, 128,
                                          BoundaryMode::bounded),
                    std::domain_error); // odd g
    CHECK_NOTHROW((void)aux_h_series_mp(xpow(2), 4, Kind::GOE, 60, 128,
                                        BoundaryMode::bounded));
}
