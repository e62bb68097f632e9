#ifndef SPECTRA_RATIONAL_HPP
#define SPECTRA_RATIONAL_HPP

#include <gmpxx.h>

#include <stdexcept>
#include <string>

namespace spectra {

using Rational = mpq_class;
using BigInt = mpz_class;

inline BigInt factorial(unsigned long n) {
    BigInt z;
    mpz_fac_ui(z.get_mpz_t(), n);
    return z;
}

inline BigInt double_factorial(long n) {
    // (-1)!! = 0!! = 1
    if (n <= 0) return 1;
    BigInt z;
    mpz_2fac_ui(z.get_mpz_t(), static_cast<unsigned long>(n));
    return z;
}

inline BigInt binomial(unsigned long n, unsigned long k) {
    BigInt z;
    mpz_bin_uiui(z.get_mpz_t(), n, k);
    return z;
}

/// num/den in canonical form (mpq_class's two-argument constructor does not
/// reduce, and GMP comparisons require reduced operands).
inline Rational frac(long num, long den) {
    Rational r(num, den);
    r.canonicalize();
    return r;
}

inline Rational rational_pow(const Rational& a, long e) {
    Rational r(1);
    Rational base = e >= 0 ? a : Rational(1) / a;
    for (long i = 0, m = e >= 0 ? e : -e; i < m; ++i) r *= base;
    return r;
}

/// Parses "p/q", integers, plain decimals ("0.25"), or "auto" handled by callers.
inline Rational parse_rational(const std::string& s) {
    auto slash = s.find('/');
    if (slash != std::string::npos) {
        Rational r(s);
        r.canonicalize();
        return r;
    }
    auto dot = s.find('.');
    if (dot == std::string::npos) {
        Rational r(s);
        r.canonicalize();
        return r;
    }
    std::string digits = s.substr(0, dot) + s.substr(dot + 1);
    size_t frac_len = s.size() - dot - 1;
    if (digits.empty() || frac_len == 0) throw std::invalid_argument("bad rational literal: " + s);
    Rational num(digits);
    Rational den(1);
    for (size_t i = 0; i < frac_len; ++i) den *= 10;
    Rational r = num / den;
    r.canonicalize();
    return r;
}

inline std::string rational_str(const Rational& q) {
    return q.get_str();
}

} // namespace spectra

#endif
