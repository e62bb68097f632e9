#include "spectra/expansion.hpp"

#include <cmath>
#include <stdexcept>

#include "spectra/quadrature.hpp"

namespace spectra::expansion {

using densities::EnsembleSpec;
using densities::Normalization;
using specialfn::semicircle_moment;

Rational semicircle_avg_q(const PolyQ& g) {
    Rational s(0);
    for (int m = 0; m <= g.degree(); m += 2) s += g.coeff(m) * semicircle_moment(m);
    return s;
}

Real semicircle_avg_r(const PolyR& g) {
    mpfr_prec_t prec = 64;
    for (const auto& c : g.coeffs()) prec = std::max(prec, c.prec());
    Real s(prec);
    for (int m = 0; m <= g.degree(); m += 2)
        s += g.coeff(m) * Real(semicircle_moment(m), prec);
    return s;
}

namespace {

template <class T>
Poly<T> op_S_impl(const Poly<T>& g, const T& zero) {
    int dg = g.degree();
    if (dg < 0) return Poly<T>();
    std::vector<T> a(std::max(dg, 1), zero);
    for (int m = dg; m >= 1; --m) {
        T up = (m + 1 < static_cast<int>(a.size())) ? a[m + 1] : zero;
        a[m - 1] = (g.coeff(m) + up * (4L * (m + 1))) / static_cast<long>(m + 2);
    }
    return Poly<T>(std::move(a));
}

} // namespace

PolyQ op_S(const PolyQ& g) {
    PolyQ f = op_S_impl<Rational>(g, Rational(0));
    // degree-0 consistency: g_0 - avg = -4 a_1
    Rational lhs = g.coeff(0) - semicircle_avg_q(g);
    Rational rhs = Rational(-4) * f.coeff(1);
    if (lhs != rhs)
        throw std::logic_error("op_S: constant-term equation does not close "
                               "(semicircle_moment inconsistency)");
    return f;
}

PolyR op_S(const PolyR& g) {
    return op_S_impl<Real>(g, Real(0.0, 64));
}

PolyQ op_T(const PolyQ& g) { return op_S(g).derivative().derivative().derivative(); }
PolyR op_T(const PolyR& g) { return op_S(g).derivative().derivative().derivative(); }

ExpansionReport gue_expand(const PolyQ& g, int n) {
    if (n < 1) throw std::domain_error("gue_expand: n >= 1");
    ExpansionReport rep;
    rep.n = n;
    const int orders = g.degree() >= 0 ? g.degree() / 4 + 1 : 1;
    Rational npow(1);
    const Rational n2 = Rational(n) * n;
    Rational partial(0);
    PolyQ cur = g;
    for (int j = 0; j < orders; ++j) {
        Rational tj = semicircle_avg_q(cur) / npow;
        rep.terms_exact.push_back(tj);
        rep.terms.push_back(tj.get_d());
        partial += tj;
        rep.partials.push_back(partial.get_d());
        npow *= n2;
        if (j + 1 < orders) cur = op_T(cur);
    }
    return rep;
}

int default_trunc_degree(const PolyQ& g, int n, Kind kind) {
    int dg = std::max(g.degree(), 0);
    if (kind == Kind::GSE) return std::max(80, 8 * dg + 20 * n);
    return std::max(80, 8 * dg + 4 * n);
}

long default_precision_bits(int n, int trunc_degree) {
    return std::max(128L, static_cast<long>(std::ceil(1.5 * n * trunc_degree)));
}

namespace {
Rational aux_c(int n, Kind kind) {
    if (kind == Kind::GSE) return frac(8 * n + 2, n);
    if (kind == Kind::GOE) return frac(4 * n - 2, n);
    throw std::domain_error("auxiliary equation is defined for GSE/GOE only");
}
} // namespace

std::vector<Rational> aux_h_series(const PolyQ& g, int n, Kind kind, int degree,
                                   const Rational& h0, const Rational& h1) {
    const Rational c = aux_c(n, kind);
    const Rational n2 = Rational(n) * n;
    std::vector<Rational> h(degree + 1, Rational(0));
    if (degree >= 0) h[0] = h0;
    if (degree >= 1) h[1] = h1;
    for (int m = 0; m + 2 <= degree; ++m) {
        Rational hm2 = m >= 2 ? h[m - 2] : Rational(0);
        h[m + 2] = (hm2 - c * h[m] - g.coeff(m)) * n2 / Rational(4 * (m + 2) * (m + 1));
    }
    return h;
}

namespace {

std::vector<Real> h_recursion_mp(const PolyQ& g, int n, Kind kind, int degree,
                                 long bits, const Rational& h0, const Rational& h1) {
    const Real c(aux_c(n, kind), bits);
    const Real n2(static_cast<long>(n) * n, bits);
    const Real zero(0.0, bits);
    std::vector<Real> h(degree + 1, zero);
    if (degree >= 0) h[0] = Real(h0, bits);
    if (degree >= 1) h[1] = Real(h1, bits);
    for (int m = 0; m + 2 <= degree; ++m) {
        Real hm2 = m >= 2 ? h[m - 2] : zero;
        h[m + 2] = (hm2 - c * h[m] - Real(g.coeff(m), bits)) * n2
                 / (4L * (m + 2) * (m + 1));
    }
    return h;
}

Real eval_series(const std::vector<Real>& h, const Real& x) {
    Real v(0.0, x.prec());
    for (int m = static_cast<int>(h.size()) - 1; m >= 0; --m) v = v * x + h[m];
    return v;
}

} // namespace

std::vector<Real> aux_h_series_mp(const PolyQ& g, int n, Kind kind, int degree,
                                  long bits, BoundaryMode mode,
                                  const Rational& h0, const Rational& h1) {
    std::vector<Real> hp = h_recursion_mp(g, n, kind, degree, bits, h0, h1);
    if (mode == BoundaryMode::seeded) return hp;
    if (kind != Kind::GOE)
        throw std::domain_error("bounded auxiliary solution: GOE only (the GSE "
                                "resonance obstructs it for even g)");
    if (n % 2 != 0)
        throw std::domain_error("bounded auxiliary solution requires even n");
    if (!g.is_even())
        throw std::domain_error("bounded auxiliary solution requires even g");
    // Shoot against the even homogeneous solution: past the turning point the
    // exp(n x^2/4) mode dominates both series, so their ratio pins its weight.
    PolyQ zero_g;
    std::vector<Real> hh = h_recursion_mp(zero_g, n, kind, degree, bits, Rational(1), Rational(0));
    double xs = 0.8 * std::sqrt(2.0 * degree / n);
    const Real X(xs, bits);
    Real ratio = eval_series(hp, X) / eval_series(hh, X);
    for (int m = 0; m <= degree; ++m) hp[m] -= ratio * hh[m];
    return hp;
}

PolyQ solve_aux_f(const PolyQ& g, int n, Kind kind, const TruncParams& trunc) {
    int D = trunc.trunc_degree > 0 ? trunc.trunc_degree : default_trunc_degree(g, n, kind);
    if (g.degree() > D - 8) throw std::domain_error("solve_aux_f: need deg g <= D - 8");
    std::vector<Rational> h = aux_h_series(g, n, kind, D, trunc.seed_h0, trunc.seed_h1);
    std::vector<Rational> f(D + 1, Rational(0));
    for (int m = 1; m <= D; ++m) f[m] = h[m - 1] / Rational(m);
    return PolyQ(std::move(f));
}

PolyR solve_aux_f_mp(const PolyQ& g, int n, Kind kind, const TruncParams& trunc,
                     BoundaryMode mode) {
    int D = trunc.trunc_degree > 0 ? trunc.trunc_degree : default_trunc_degree(g, n, kind);
    long bits = trunc.precision_bits > 0 ? trunc.precision_bits : default_precision_bits(n, D);
    if (g.degree() > D - 8) throw std::domain_error("solve_aux_f: need deg g <= D - 8");
    std::vector<Real> h = aux_h_series_mp(g, n, kind, D, bits, mode, trunc.seed_h0, trunc.seed_h1);
    std::vector<Real> f(D + 1, Real(0.0, bits));
    for (int m = 1; m <= D; ++m) f[m] = h[m - 1] / static_cast<long>(m);
    return PolyR(std::move(f));
}

Rational goe_singular_moment(const PolyQ& g, int n, const Rational& sigma2) {
    if (g.degree() >= n)
        throw std::domain_error("goe_singular_moment: requires deg g < n");
    Rational res(0);
    Rational M_prev(0), M_cur(1); // M_{2r-2}, M_{2r}
    Rational s_pow(1);            // (2 sigma^2)^r
    for (int r = 0; 2 * r <= g.degree(); ++r) {
        if (r > 0) {
            Rational M_next = Rational(2 * n - 1) * M_cur
                            + Rational((2 * r - 2) * (2 * r - 3)) * M_prev;
            M_prev = M_cur;
            M_cur = M_next;
            s_pow *= 2 * sigma2;
        }
        res += g.coeff(2 * r) * s_pow * M_cur;
    }
    return res / n;
}

namespace {

struct SeriesSetup {
    std::vector<Real> psi;   // (1/n) f' - x f, even part, possibly dilated
    Real prefactor{0.0, 64};
    Real step{0.0, 64};      // multiplies n^{-2j} progression
    Real singular{0.0, 64};
};

SeriesSetup build_series(const PolyQ& g_in, int n, Kind kind, int D, long bits,
                         ExpansionVariant variant, const TruncParams& trunc) {
    PolyQ g = g_in.even_part();
    BoundaryMode mode = BoundaryMode::seeded;
    if (variant == ExpansionVariant::calibrated && kind == Kind::GOE && n % 2 == 0)
        mode = BoundaryMode::bounded;
    std::vector<Real> h = aux_h_series_mp(g, n, kind, D, bits, mode,
                                          trunc.seed_h0, trunc.seed_h1);
    const Real zero(0.0, bits);
    std::vector<Real> f(D + 1, zero), psi(D + 1, zero);
    for (int m = 1; m <= D; ++m) f[m] = h[m - 1] / static_cast<long>(m);
    for (int m = 0; m <= D; ++m) {
        Real xf = m >= 1 ? f[m - 1] : zero;
        psi[m] = h[m] / static_cast<long>(n) - xf;
    }

    SeriesSetup s;
    if (variant == ExpansionVariant::as_printed) {
        s.psi = std::move(psi);
        s.prefactor = Real(frac(3, 2), bits);
        s.step = Real(1L, bits) / (Real(static_cast<long>(n), bits) * static_cast<long>(n));
        s.singular = zero;
        return s;
    }
    if (kind == Kind::GSE) {
        // dilate psi by a, a^2 = (2n+1)/n; only even coefficients matter
        const Real a2(frac(2 * n + 1, n), bits);
        Real ap(1L, bits);
        for (int m = 0; m <= D; m += 2) {
            psi[m] *= ap;
            if (m + 1 <= D) psi[m + 1] = zero; // odd part of an even series
            ap *= a2;
        }
        s.psi = std::move(psi);
        s.prefactor = Real(frac(3 * (2 * n + 1), 2 * n), bits);
        long N = 2L * n + 1;
        s.step = Real(1L, bits) / (Real(N, bits) * N);
        s.singular = zero;
    } else {
        s.psi = std::move(psi);
        s.prefactor = Real(3L, bits);
        s.step = Real(1L, bits) / (Real(static_cast<long>(n), bits) * static_cast<long>(n));
        s.singular = n % 2 == 0 ? Real(goe_singular_moment(g, n, frac(1, n)), bits) : zero;
    }
    return s;
}

double kind_reference(const PolyQ& g, int n, Kind kind) {
    EnsembleSpec spec{kind, n, 1.0 / n, Normalization::probability};
    return densities::integrate_against(spec, g.even_part());
}

} // namespace

ExpansionReport gse_goe_expand(const PolyQ& g, int n, Kind kind, int max_order,
                               TruncParams trunc, ExpansionVariant variant,
                               bool with_reference) {
    if (kind == Kind::GUE) throw std::domain_error("gse_goe_expand: GSE/GOE only");
    if (n < 1) throw std::domain_error("gse_goe_expand: n >= 1");
    if (variant == ExpansionVariant::calibrated && kind == Kind::GOE && g.degree() >= n)
        throw std::domain_error("gse_goe_expand: the GOE boundary-moment recurrence "
                                "requires n > deg g (the expansion is asymptotic in n)");
    const int D = trunc.trunc_degree > 0 ? trunc.trunc_degree
                                         : default_trunc_degree(g, n, kind);
    const long bits = trunc.precision_bits > 0 ? trunc.precision_bits
                                               : default_precision_bits(n, D);
    if (g.degree() > D - 8) throw std::domain_error("gse_goe_expand: need deg g <= D - 8");

    SeriesSetup s = build_series(g, n, kind, D, bits, variant, trunc);

    ExpansionReport rep;
    rep.n = n;
    rep.trunc_degree = D;
    rep.precision_bits = bits;
    rep.singular = s.singular.to_double();
    if (variant == ExpansionVariant::calibrated && kind == Kind::GOE && n % 2 != 0)
        rep.note = "odd-n GOE: no bounded auxiliary solution; series carries an O(1/n) defect";

    PolyR cur(std::move(s.psi));
    Real partial = s.singular;
    Real npow(1L, bits);
    double prev_abs = -1.0;
    for (int j = 0; j <= max_order; ++j) {
        Real tj = s.prefactor * semicircle_avg_r(cur) * npow;
        double tjd = tj.to_double();
        rep.terms.push_back(tjd);
        partial += tj;
        rep.partials.push_back(partial.to_double());
        if (j > 0 && prev_abs >= 0.0 && std::fabs(tjd) >= prev_abs && std::fabs(tjd) > 0)
            rep.divergence_flag = true;
        prev_abs = std::fabs(tjd);
        npow *= s.step;
        if (j < max_order) cur = op_T(cur);
    }
    if (with_reference) rep.reference = kind_reference(g, n, kind);
    return rep;
}

double stepdiff_identity_residual(const PolyQ& g_in, int n, Kind kind, TruncParams trunc) {
    if (kind == Kind::GUE) throw std::domain_error("stepdiff: GSE/GOE only");
    PolyQ g = g_in.even_part();
    const int D = trunc.trunc_degree > 0 ? trunc.trunc_degree
                                         : default_trunc_degree(g, n, kind);
    const long bits = trunc.precision_bits > 0 ? trunc.precision_bits
                                               : default_precision_bits(n, D);
    BoundaryMode mode = (kind == Kind::GOE && n % 2 == 0) ? BoundaryMode::bounded
                                                          : BoundaryMode::seeded;
    std::vector<Real> h = aux_h_series_mp(g, n, kind, D, bits, mode,
                                          trunc.seed_h0, trunc.seed_h1);
    const Real zero(0.0, bits);
    std::vector<Real> f(D + 1, zero);
    for (int m = 1; m <= D; ++m) f[m] = h[m - 1] / static_cast<long>(m);

    // The truncated series suffer exponential coefficient cancellation in the
    // bulk, so the integrand is evaluated with the working precision.
    auto real_horner = [bits](const PolyR& p, double x) {
        Real v(0.0, bits), X(x, bits);
        for (int m = p.degree(); m >= 0; --m) v = v * X + p.coeff(m);
        return v.to_double();
    };

    // Left side: f solves the auxiliary equation identically, so the
    // integrand -(4/n^2) f''' + (x^2 - c) f' is g itself; quadrature of the
    // truncated-series form would integrate pure boundary noise beyond the
    // series' valid radius.
    EnsembleSpec self{kind, n, 1.0 / n, Normalization::probability};
    double lhs = densities::integrate_against(self, g);

    // Right side: psi against the GUE density, with the matching mass factor.
    std::vector<Real> psi(D + 2, zero);
    for (int m = 0; m <= D; ++m) psi[m] = h[m] / static_cast<long>(n);
    for (int m = 1; m <= D + 1; ++m) psi[m] -= f[m - 1];
    PolyR psiP(psi);
    auto psi_w = [&](double x) { return real_horner(psiP, x); };
    double rhs;
    if (kind == Kind::GSE) {
        EnsembleSpec gue{Kind::GUE, 2 * n + 1, 1.0 / n, Normalization::probability};
        double integral = densities::integrate_weighted(gue, psi_w);
        rhs = 1.5 * (2.0 * n + 1.0) / n * integral;
    } else {
        EnsembleSpec gue{Kind::GUE, n, 1.0 / n, Normalization::probability};
        double integral = densities::integrate_weighted(gue, psi_w);
        rhs = 3.0 * integral + goe_singular_moment(g, n, frac(1, n)).get_d();
    }
    return std::fabs(lhs - rhs) / (1.0 + std::fabs(rhs));
}

} // namespace spectra::expansion
