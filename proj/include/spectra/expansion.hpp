#ifndef SPECTRA_EXPANSION_HPP
#define SPECTRA_EXPANSION_HPP

#include <optional>
#include <string>
#include <vector>

#include "spectra/densities.hpp"
#include "spectra/poly.hpp"
#include "spectra/specialfn.hpp"

namespace spectra::expansion {

using densities::Kind;

/// Semicircle average: sum_m g_m * semicircle_moment(m).
template <class T>
T semicircle_avg(const Poly<T>& g);

Rational semicircle_avg_q(const PolyQ& g);
Real semicircle_avg_r(const PolyR& g);

/// Solves g(x) - avg(g) = (x^2 - 4) f'(x) + 3x f(x) for the unique
/// polynomial f, by the top-down triangular system
///   (m+2) a_{m-1} - 4(m+1) a_{m+1} = g_m.
/// The degree-0 row must close: g_0 - avg = -4 a_1 (asserted; exact in
/// rational mode).
PolyQ op_S(const PolyQ& g);
PolyR op_S(const PolyR& g);

/// T g = (S g)'''; drops the degree by exactly 4 when deg g >= 4.
PolyQ op_T(const PolyQ& g);
PolyR op_T(const PolyR& g);

/// One expansion: per-order terms, partial sums, optional quadrature
/// reference and convergence diagnostics.
struct ExpansionReport {
    std::vector<double> terms;    // t_j
    std::vector<double> partials; // singular + sum_{i<=j} t_i
    double singular = 0.0;        // closed-form boundary term (GOE only)
    int n = 0;
    int trunc_degree = 0;
    long precision_bits = 0;
    std::optional<double> reference;
    bool divergence_flag = false; // |t_j| stopped decreasing
    std::string note;

    std::vector<Rational> terms_exact; // filled in rational mode
};

/// Terminating GUE expansion: t_j = n^{-2j} avg(T^j g); exact rationals,
/// floor(deg g / 4) + 1 terms.
ExpansionReport gue_expand(const PolyQ& g, int n);

/// Truncation/precision parameters for the auxiliary-ODE solve.
struct TruncParams {
    int trunc_degree = 0;     // 0: use the default sizing
    long precision_bits = 0;  // 0: use the default sizing
    Rational seed_h0 = 0;     // seeds of the power-series solution
    Rational seed_h1 = 0;
};

enum class BoundaryMode {
    seeded,  // power series from (h0, h1); generic solution
    bounded, // real-line-bounded solution via coefficient-space shooting
};

/// Coefficient vector of h = f' for the auxiliary equation
///   g(x) = -(4/n^2) f'''(x) + (x^2 - c) f'(x),
/// c = (8n+2)/n (GSE) or (4n-2)/n (GOE), via
///   h_{m+2} = (h_{m-2} - c h_m - g_m) n^2 / (4(m+2)(m+1)).
/// Rational (exact) and extended-precision variants.
std::vector<Rational> aux_h_series(const PolyQ& g, int n, Kind kind, int degree,
                                   const Rational& h0, const Rational& h1);
std::vector<Real> aux_h_series_mp(const PolyQ& g, int n, Kind kind, int degree,
                                  long bits, BoundaryMode mode,
                                  const Rational& h0 = 0, const Rational& h1 = 0);

/// f = antiderivative of h with f(0) = 0, truncated to `trunc.trunc_degree`.
PolyQ solve_aux_f(const PolyQ& g, int n, Kind kind, const TruncParams& trunc);
PolyR solve_aux_f_mp(const PolyQ& g, int n, Kind kind, const TruncParams& trunc,
                     BoundaryMode mode = BoundaryMode::seeded);

/// Default truncation degree. GSE needs the larger budget: its admissible
/// solutions grow like exp(n x^2 / 4) and the Taylor tail at |x|=2 only
/// decays past degree ~ 2 e n.
int default_trunc_degree(const PolyQ& g, int n, Kind kind);
long default_precision_bits(int n, int trunc_degree);

enum class ExpansionVariant {
    as_printed, // the published series verbatim (3/2 prefactor, n^{-2j} steps)
    calibrated, // normalization that matches quadrature (see README)
};

/// GSE/GOE convergent expansion of int g(x) p_hat(x) dx (sigma^2 = 1/n,
/// probability mass). calibrated:
///   GSE: (3/2)((2n+1)/n) sum_j (2n+1)^{-2j} avg[T^j psi_a], psi_a dilated
///        by a^2 = (2n+1)/n, seeded f;
///   GOE: singular(g, n) + 3 sum_j n^{-2j} avg[T^j psi], bounded f (even n),
/// psi = (1/n) f' - x f. Only the even part of g contributes (densities are
/// even); the odd part is projected away.
ExpansionReport gse_goe_expand(const PolyQ& g, int n, Kind kind, int max_order,
                               TruncParams trunc,
                               ExpansionVariant variant = ExpansionVariant::calibrated,
                               bool with_reference = true);

/// Closed-form moment of the GOE density's Hermite-boundary part:
/// (1/n) sum_r g_{2r} (2 sigma^2)^r M_{2r},
/// M_0 = 1, M_{2r} = (2n-1) M_{2r-2} + (2r-2)(2r-3) M_{2r-4}. Requires deg g < n.
Rational goe_singular_moment(const PolyQ& g, int n, const Rational& sigma2);

/// Quadrature residual |LHS - RHS| / (1 + |RHS|) of the reduction identity
/// int [-(4/n^2) f''' + (x^2 - c) f'] p_hat dx = RHS(kind), with the
/// calibrated right-hand side (GSE: (3/2)(2n+1)/n int psi p*_u; GOE:
/// singular + 3 int psi p_u, bounded f).
double stepdiff_identity_residual(const PolyQ& g, int n, Kind kind, TruncParams trunc);

} // namespace spectra::expansion

#endif
