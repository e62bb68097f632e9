#ifndef SPECTRA_SPECIALFN_HPP
#define SPECTRA_SPECIALFN_HPP

#include <vector>

#include "spectra/rational.hpp"
#include "spectra/real.hpp"

namespace spectra::specialfn {

/// Evaluation policy shared by the series-based routines.
/// mode: machine doubles, or MPFR with `bits` of mantissa.
struct PrecisionPolicy {
    enum class Mode { machine, extended };
    Mode mode = Mode::machine;
    long bits = 64;
    double series_tolerance = 1e-14;
};

inline const PrecisionPolicy& default_policy() {
    static const PrecisionPolicy p{};
    return p;
}

/// Physicists' Hermite polynomial H_k(x) by the three-term recurrence
/// H_{m+1} = 2x H_m - 2m H_{m-1}. Throws std::overflow_error in machine mode
/// when the value leaves the representable range.
double hermite_poly(int k, double x, const PrecisionPolicy& pol = default_policy());

/// Exact integer coefficient vector of H_k (index = degree).
std::vector<BigInt> hermite_coeffs(int k);

/// H_k(x) at `bits` precision via the recurrence.
Real hermite_poly_mp(int k, const Real& x);

/// Hermite function phi_k(x) = H_k(x) e^{-x^2/2} / sqrt(2^k k! sqrt(pi)),
/// evaluated by the normalized recurrence
///   phi_{m+1} = sqrt(2/(m+1)) x phi_m - sqrt(m/(m+1)) phi_{m-1},
/// which never overflows. deriv=1 applies
///   phi_k' = sqrt(k/2) phi_{k-1} - sqrt((k+1)/2) phi_{k+1}.
double hermite_fn(int k, double x, int deriv = 0);

/// All of phi_0..phi_kmax at once (one recurrence sweep).
void hermite_fn_all(double x, int kmax, std::vector<double>& out);

/// Direct-definition oracle: H_k(x) e^{-x^2/2} / sqrt(2^k k! sqrt(pi)) in MPFR.
Real hermite_fn_mp(int k, const Real& x);

/// Kummer's confluent hypergeometric function 1F1(a; b; x).
/// Terminating exactly when a is a nonpositive integer; otherwise sums the
/// defining series with a three-consecutive-small-terms stop.
double hyp1f1(double a, double b, double x, const PrecisionPolicy& pol = default_policy());

/// Terminating case with exact rational arguments: a = -m, m >= 0.
Rational hyp1f1_poly(long m, const Rational& b, const Rational& x);

/// int_0^x e^{-t^2/2} dt. Odd in x; saturates at sqrt(pi/2).
double gauss_integral(double x, const PrecisionPolicy& pol = default_policy());
Real gauss_integral_mp(const Real& x);

/// Unsigned Stirling number of the first kind: coefficient of z^k in
/// z(z+1)...(z+n-1).
BigInt stirling_first_unsigned(int n, int k);

/// Catalan number C_k.
BigInt catalan(int k);

/// m-th moment of the semicircle density sqrt(4-t^2)/(2 pi) on [-2,2]:
/// 0 for odd m, C_{m/2} for even m.
Rational semicircle_moment(int m);

} // namespace spectra::specialfn

#endif
