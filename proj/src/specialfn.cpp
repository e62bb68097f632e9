#include "spectra/specialfn.hpp"

#include <cmath>
#include <stdexcept>

namespace spectra::specialfn {

double hermite_poly(int k, double x, const PrecisionPolicy& pol) {
    if (k < 0) throw std::domain_error("hermite_poly: negative order");
    double p0 = 1.0, p1 = 2.0 * x;
    if (k == 0) return p0;
    for (int m = 1; m < k; ++m) {
        double p2 = 2.0 * x * p1 - 2.0 * m * p0;
        p0 = p1;
        p1 = p2;
    }
    if (pol.mode == PrecisionPolicy::Mode::machine && !std::isfinite(p1))
        throw std::overflow_error("hermite_poly: value exceeds double range");
    return p1;
}

std::vector<BigInt> hermite_coeffs(int k) {
    if (k < 0) throw std::domain_error("hermite_coeffs: negative order");
    std::vector<BigInt> p0{1};
    if (k == 0) return p0;
    std::vector<BigInt> p1{0, 2};
    for (int m = 1; m < k; ++m) {
        std::vector<BigInt> p2(m + 2, BigInt(0));
        for (size_t i = 0; i < p1.size(); ++i) p2[i + 1] += 2 * p1[i];
        for (size_t i = 0; i < p0.size(); ++i) p2[i] -= 2 * m * p0[i];
        p0 = std::move(p1);
        p1 = std::move(p2);
    }
    return p1;
}

Real hermite_poly_mp(int k, const Real& x) {
    if (k < 0) throw std::domain_error("hermite_poly_mp: negative order");
    mpfr_prec_t prec = x.prec();
    Real p0(1L, prec), p1 = x * 2L;
    if (k == 0) return p0;
    for (int m = 1; m < k; ++m) {
        Real p2 = x * p1 * 2L - p0 * (2L * m);
        p0 = std::move(p1);
        p1 = std::move(p2);
    }
    return p1;
}

void hermite_fn_all(double x, int kmax, std::vector<double>& out) {
    out.resize(kmax + 1);
    const double f0 = std::pow(M_PI, -0.25) * std::exp(-0.5 * x * x);
    out[0] = f0;
    if (kmax == 0) return;
    out[1] = std::sqrt(2.0) * x * f0;
    for (int m = 1; m < kmax; ++m)
        out[m + 1] = std::sqrt(2.0 / (m + 1)) * x * out[m]
                   - std::sqrt(double(m) / (m + 1)) * out[m - 1];
}

double hermite_fn(int k, double x, int deriv) {
    if (k < 0) throw std::domain_error("hermite_fn: negative order");
    if (deriv != 0 && deriv != 1) throw std::domain_error("hermite_fn: deriv must be 0 or 1");
    std::vector<double> phi;
    hermite_fn_all(x, k + 1, phi);
    if (deriv == 0) return phi[k];
    double lower = k > 0 ? std::sqrt(k / 2.0) * phi[k - 1] : 0.0;
    return lower - std::sqrt((k + 1) / 2.0) * phi[k + 1];
}

Real hermite_fn_mp(int k, const Real& x) {
    mpfr_prec_t prec = x.prec();
    Real h = hermite_poly_mp(k, x);
    Real gauss = exp(-(x * x) / 2L);
    // norm = sqrt(2^k k! sqrt(pi))
    BigInt pow2 = BigInt(1) << k;
    Real norm = sqrt(Real(factorial(k), prec) * Real(pow2, prec) * sqrt(Real::pi(prec)));
    return h * gauss / norm;
}

double hyp1f1(double a, double b, double x, const PrecisionPolicy& pol) {
    const bool a_terminates = a <= 0.0 && a == std::floor(a);
    const bool b_pole = b <= 0.0 && b == std::floor(b);
    if (a_terminates) {
        long m = static_cast<long>(-a);
        if (b_pole && -b < m)
            throw std::domain_error("hyp1f1: b hits a nonpositive integer before the series terminates");
        double term = 1.0, sum = 1.0;
        for (long j = 0; j < m; ++j) {
            term *= (a + j) / (b + j) * x / (j + 1);
            sum += term;
        }
        return sum;
    }
    if (b_pole) throw std::domain_error("hyp1f1: nonpositive integer b in non-terminating case");
    double term = 1.0, sum = 1.0;
    int small_streak = 0;
    for (long j = 0; j < 100000; ++j) {
        term *= (a + j) / (b + j) * x / (j + 1);
        sum += term;
        // alternating-sign series need a hysteresis stop
        if (std::fabs(term) < pol.series_tolerance * std::fabs(sum)) {
            if (++small_streak >= 3) return sum;
        } else {
            small_streak = 0;
        }
    }
    throw std::runtime_error("hyp1f1: series did not converge");
}

Rational hyp1f1_poly(long m, const Rational& b, const Rational& x) {
    if (m < 0) throw std::domain_error("hyp1f1_poly: m must be >= 0");
    Rational term(1), sum(1);
    for (long j = 0; j < m; ++j) {
        Rational bj = b + j;
        if (bj == 0) throw std::domain_error("hyp1f1_poly: b hits a pole");
        term *= Rational(-m + j) / bj * x / Rational(j + 1);
        sum += term;
    }
    return sum;
}

double gauss_integral(double x, const PrecisionPolicy& pol) {
    const double ax = std::fabs(x);
    const double sgn = x < 0 ? -1.0 : 1.0;
    if (ax == 0.0) return 0.0;
    if (std::isinf(ax)) return sgn * std::sqrt(M_PI / 2.0);
    if (ax <= 6.0) {
        // sum_k (-1)^k x^{2k+1} / (2^k k! (2k+1))
        double sum = 0.0, pw = ax, fact = 1.0;
        const double x2 = ax * ax;
        for (int k = 0; k < 400; ++k) {
            double term = pw / (fact * (2 * k + 1));
            sum += (k % 2 ? -term : term);
            if (k > 3 && term < pol.series_tolerance * std::fabs(sum)) return sgn * sum;
            pw *= x2 / 2.0;
            fact *= k + 1;
        }
        throw std::runtime_error("gauss_integral: series did not converge");
    }
    // saturation minus the asymptotic tail e^{-x^2/2}/x (1 - 1/x^2 + 3/x^4 - ...)
    double corr = 1.0, t = 1.0;
    for (int k = 1; k <= 12; ++k) {
        t *= -(2.0 * k - 1) / (ax * ax);
        corr += t;
    }
    double tail = std::exp(-0.5 * ax * ax) / ax * corr;
    return sgn * (std::sqrt(M_PI / 2.0) - tail);
}

Real gauss_integral_mp(const Real& x) {
    mpfr_prec_t prec = x.prec();
    Real sum(prec), pw = abs(x), fact(1L, prec);
    const Real x2 = x * x;
    BigInt tol_den = BigInt(1) << (prec - 4);
    const Real tol = Real(1L, prec) / Real(tol_den, prec);
    for (int k = 0; k < 100000; ++k) {
        Real term = pw / (fact * (2L * k + 1));
        sum += (k % 2 ? -term : term);
        if (k > 3 && abs(term) < tol * abs(sum)) break;
        pw *= x2 / 2L;
        fact *= (k + 1L);
    }
    return x.sign() < 0 ? -sum : sum;
}

BigInt stirling_first_unsigned(int n, int k) {
    if (n < 0 || k < 0 || k > n) throw std::domain_error("stirling_first_unsigned: need 0 <= k <= n");
    // c(n+1, k) = c(n, k-1) + n c(n, k)
    std::vector<BigInt> row{1}; // n = 0
    for (int m = 0; m < n; ++m) {
        std::vector<BigInt> next(m + 2, BigInt(0));
        for (int j = 0; j <= m; ++j) {
            next[j + 1] += row[j];
            next[j] += m * row[j];
        }
        row = std::move(next);
    }
    return row[k];
}

BigInt catalan(int k) {
    if (k < 0) throw std::domain_error("catalan: negative index");
    return factorial(2 * k) / (factorial(k) * factorial(k + 1));
}

Rational semicircle_moment(int m) {
    if (m < 0) throw std::domain_error("semicircle_moment: negative moment");
    if (m % 2) return Rational(0);
    return Rational(catalan(m / 2));
}

} // namespace spectra::specialfn
