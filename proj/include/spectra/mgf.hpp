#ifndef SPECTRA_MGF_HPP
#define SPECTRA_MGF_HPP

#include <map>
#include <vector>

#include "spectra/densities.hpp"
#include "spectra/rational.hpp"

namespace spectra::mgf {

using densities::Kind;
using densities::Normalization;

enum class MGFConvention {
    as_printed,      // formulas exactly as published
    mass_consistent, // corrected so the s=0 value equals n (see README)
};

/// Truncated Taylor series in the Laplace variable s with exact rational
/// coefficients; closed under sum/product/scalar/term-wise integration.
class PowerSeriesInS {
  public:
    PowerSeriesInS() = default;
    PowerSeriesInS(int order, Rational constant);

    int order() const { return static_cast<int>(c_.size()) - 1; }
    const Rational& coeff(int k) const;
    void set_coeff(int k, Rational v);

    PowerSeriesInS operator+(const PowerSeriesInS& o) const;
    PowerSeriesInS operator-(const PowerSeriesInS& o) const;
    PowerSeriesInS operator*(const PowerSeriesInS& o) const; // truncated
    PowerSeriesInS scaled(const Rational& k) const;
    PowerSeriesInS shifted(int k) const; // multiply by s^k

    /// e^{a s^2} to the series order.
    static PowerSeriesInS exp_a_s2(const Rational& a, int order);
    /// sigma s G(sigma s) = sum (-1)^k (sigma^2)^{k+1} s^{2k+2} / (2^k k! (2k+1)).
    static PowerSeriesInS sigma_s_gauss(const Rational& sigma2, int order);
    /// 1F1(-m; b; arg s^2) as a polynomial series.
    static PowerSeriesInS hyp1f1_s2(long m, const Rational& b, const Rational& arg, int order);

  private:
    std::vector<Rational> c_; // index = power of s
};

/// E Tr e^{sX} (mean_count) for the given ensemble. GOE with even n uses
/// complex intermediate arithmetic for the Hermite sum and asserts the
/// imaginary part is below 1e-10 relative. mass_consistent additionally
/// verifies |L(0) - n| <= 1e-10 n and throws on violation.
double mgf_eval(Kind kind, int n, double sigma2, double s,
                MGFConvention convention = MGFConvention::mass_consistent,
                Normalization normalization = Normalization::mean_count);

/// Relative residual of the moment-generating-function ODE at s, using
/// analytic s-derivatives of the closed forms:
///   GUE: s L'' + 3 L' - s (sigma^4 s^2 + 4 n sigma^2) L = 0
///   GSE: s L'' - s (4 sigma^4 s^2 + sigma^2 (8n+2)) L = (1/2)(-3 L*' + 3 sigma^2 s L*),
///        L* the GUE transform of order 2n+1
///   GOE: s L'' - s (4 sigma^4 s^2 + sigma^2 (4n-2)) L = -3 L_u' + 3 sigma^2 s L_u
/// normalized by the largest term magnitude.
double mgf_ode_residual(Kind kind, int n, double sigma2, double s);

/// Exact spectral moments 0..upto from the series representation of the MGF
/// (sigma2 exact rational). Odd moments are asserted to vanish. upto even,
/// <= 40.
std::vector<Rational> moments_from_mgf(Kind kind, int n, const Rational& sigma2, int upto,
                                       MGFConvention convention = MGFConvention::mass_consistent,
                                       Normalization normalization = Normalization::mean_count);

/// int e^{sx - x^2} H_nn(x) H_k(x) dx
///   = sqrt(pi) nn! 2^k / (nn-k)! e^{s^2/4} s^{nn-k} 1F1(-k, nn-k+1, -s^2/2).
double two_hermite_laplace(int nn, int k, double s);

/// A_{n-1}(s) = int e^{sx - x^2/2} H_{n-1}(x) int_0^x e^{-t^2/2} dt dx for
/// even n, by the closed form with the corrected recursion. Complex
/// Hermite values internally; reality asserted.
double a_series_value(int n, double s);

/// 1/n-expansion partial sums of the normalized MGFs (GUE: full transform at
/// sigma^2 = 1/n; GSE: the 1F1 double-sum second term), exact rearrangement
/// merged with the e^{s^2/2n} prefactor. partials[K] sums merged powers
/// n^{1-j} (GUE) / n^{-k} (GSE) through index K.
std::vector<double> mgf_expansion_1n(Kind kind, double s, int n, int max_order);

/// The sigma^2 = 1/n GSE second term e^{s^2/2n} sum_i ..., which the GSE
/// 1/n-expansion must reproduce at full order.
double gse_mgf_second_term(int n, double s);

} // namespace spectra::mgf

#endif
