#include "spectra/mgf.hpp"

#include <cmath>
#include <complex>
#include <stdexcept>

#include "spectra/specialfn.hpp"

namespace spectra::mgf {

using specialfn::gauss_integral;

// ---------------------------------------------------------------------------
// PowerSeriesInS
// ---------------------------------------------------------------------------

PowerSeriesInS::PowerSeriesInS(int order, Rational constant) : c_(order + 1, Rational(0)) {
    if (order < 0) throw std::domain_error("PowerSeriesInS: order >= 0");
    c_[0] = std::move(constant);
}

const Rational& PowerSeriesInS::coeff(int k) const {
    static const Rational zero(0);
    if (k < 0 || k > order()) return zero;
    return c_[k];
}

void PowerSeriesInS::set_coeff(int k, Rational v) {
    if (k < 0 || k > order()) throw std::out_of_range("PowerSeriesInS::set_coeff");
    c_[k] = std::move(v);
}

PowerSeriesInS PowerSeriesInS::operator+(const PowerSeriesInS& o) const {
    PowerSeriesInS r(std::max(order(), o.order()), Rational(0));
    for (int k = 0; k <= r.order(); ++k) r.c_[k] = coeff(k) + o.coeff(k);
    return r;
}

PowerSeriesInS PowerSeriesInS::operator-(const PowerSeriesInS& o) const {
    PowerSeriesInS r(std::max(order(), o.order()), Rational(0));
    for (int k = 0; k <= r.order(); ++k) r.c_[k] = coeff(k) - o.coeff(k);
    return r;
}

PowerSeriesInS PowerSeriesInS::operator*(const PowerSeriesInS& o) const {
    int ord = std::max(order(), o.order());
    PowerSeriesInS r(ord, Rational(0));
    for (int i = 0; i <= order(); ++i) {
        if (c_[i] == 0) continue;
        for (int j = 0; j <= o.order() && i + j <= ord; ++j)
            r.c_[i + j] += c_[i] * o.c_[j];
    }
    return r;
}

PowerSeriesInS PowerSeriesInS::scaled(const Rational& k) const {
    PowerSeriesInS r = *this;
    for (auto& v : r.c_) v *= k;
    return r;
}

PowerSeriesInS PowerSeriesInS::shifted(int k) const {
    PowerSeriesInS r(order(), Rational(0));
    for (int i = 0; i + k <= order(); ++i) r.c_[i + k] = c_[i];
    return r;
}

PowerSeriesInS PowerSeriesInS::exp_a_s2(const Rational& a, int order) {
    PowerSeriesInS r(order, Rational(1));
    Rational term(1);
    for (int k = 1; 2 * k <= order; ++k) {
        term *= a / Rational(k);
        r.set_coeff(2 * k, term);
    }
    return r;
}

PowerSeriesInS PowerSeriesInS::sigma_s_gauss(const Rational& sigma2, int order) {
    PowerSeriesInS r(order, Rational(0));
    Rational term = sigma2; // k = 0 coefficient of s^2
    for (int k = 0; 2 * k + 2 <= order; ++k) {
        r.set_coeff(2 * k + 2, term / Rational(2 * k + 1));
        term *= -sigma2 / Rational(2 * (k + 1));
    }
    return r;
}

PowerSeriesInS PowerSeriesInS::hyp1f1_s2(long m, const Rational& b, const Rational& arg, int order) {
    PowerSeriesInS r(order, Rational(1));
    Rational term(1);
    for (long j = 0; j < m && 2 * (j + 1) <= order; ++j) {
        Rational bj = b + j;
        if (bj == 0) throw std::domain_error("hyp1f1_s2: b hits a pole");
        term *= Rational(-m + j) / bj * arg / Rational(j + 1);
        r.set_coeff(2 * (j + 1), term);
    }
    return r;
}

// ---------------------------------------------------------------------------
// Closed-form representation: sum of c s^k E_e and c s^k E_2 G(sigma s),
// E_1 = e^{sigma^2 s^2 / 2}, E_2 = e^{sigma^2 s^2}. Closed under d/ds.
// ---------------------------------------------------------------------------

namespace {

struct MgfRep {
    double sigma2 = 0.5;
    std::map<std::pair<int, int>, double> et; // (e, k) -> c, e in {1,2}
    std::map<int, double> gt;                 // k -> c (carries E_2 G(sigma s))

    void add_e(int e, int k, double c) {
        if (c != 0.0) et[{e, k}] += c;
    }
    void add_g(int k, double c) {
        if (c != 0.0) gt[k] += c;
    }

    MgfRep derivative() const {
        MgfRep d;
        d.sigma2 = sigma2;
        for (const auto& [ek, c] : et) {
            auto [e, k] = ek;
            if (k > 0) d.add_e(e, k - 1, c * k);
            d.add_e(e, k + 1, c * e * sigma2);
        }
        const double sigma = std::sqrt(sigma2);
        for (const auto& [k, c] : gt) {
            if (k > 0) d.add_g(k - 1, c * k);
            d.add_g(k + 1, c * 2.0 * sigma2);
            d.add_e(1, k, c * sigma); // E_2 d/ds G(sigma s) = sigma E_1
        }
        return d;
    }

    double eval(double s) const {
        const double E1 = std::exp(0.5 * sigma2 * s * s);
        const double E2 = E1 * E1;
        double acc = 0.0;
        for (const auto& [ek, c] : et)
            acc += c * std::pow(s, ek.second) * (ek.first == 1 ? E1 : E2);
        if (!gt.empty()) {
            const double G = gauss_integral(std::sqrt(sigma2) * s);
            for (const auto& [k, c] : gt) acc += c * std::pow(s, k) * E2 * G;
        }
        return acc;
    }
};

// 1F1(-m; b; arg * s^2) coefficients of s^{2j}, double precision.
std::vector<double> f1_coeffs(long m, double b, double arg) {
    std::vector<double> c{1.0};
    double term = 1.0;
    for (long j = 0; j < m; ++j) {
        term *= double(-m + j) / (b + j) * arg / double(j + 1);
        c.push_back(term);
    }
    return c;
}

// "Rotated" Hermite polynomial coefficients: Hhat_m with
// Hhat_{m+1} = 2y Hhat_m + 2m Hhat_{m-1}, so H_m(iy) = i^m Hhat_m(y).
std::vector<std::vector<double>> hhat_coeffs_upto(int mmax) {
    std::vector<std::vector<double>> h(mmax + 1);
    h[0] = {1.0};
    if (mmax >= 1) h[1] = {0.0, 2.0};
    for (int m = 1; m < mmax; ++m) {
        std::vector<double> next(m + 2, 0.0);
        for (size_t i = 0; i < h[m].size(); ++i) next[i + 1] += 2.0 * h[m][i];
        for (size_t i = 0; i < h[m - 1].size(); ++i) next[i] += 2.0 * m * h[m - 1][i];
        h[m + 1] = std::move(next);
    }
    return h;
}

std::vector<std::vector<double>> hermite_coeffs_upto(int mmax) {
    std::vector<std::vector<double>> h(mmax + 1);
    h[0] = {1.0};
    if (mmax >= 1) h[1] = {0.0, 2.0};
    for (int m = 1; m < mmax; ++m) {
        std::vector<double> next(m + 2, 0.0);
        for (size_t i = 0; i < h[m].size(); ++i) next[i + 1] += 2.0 * h[m][i];
        for (size_t i = 0; i < h[m - 1].size(); ++i) next[i] -= 2.0 * m * h[m - 1][i];
        h[m + 1] = std::move(next);
    }
    return h;
}

double dfact(int n) { // (-1)!! = 0!! = 1
    double r = 1.0;
    for (int k = n; k >= 2; k -= 2) r *= k;
    return r;
}
double fact(int n) {
    double r = 1.0;
    for (int k = 2; k <= n; ++k) r *= k;
    return r;
}
double binom(int n, int k) { return fact(n) / (fact(k) * fact(n - k)); }

// GOE even-n Hermite double sum
//   sum_{j=1}^{n-1} C(n-1,j) (-i)^{n-1-j} H_{n-1-j}(i sigma sqrt2 s) H_{j-1}(-sigma s / sqrt2)
// as real coefficients of s^p (the i-powers cancel pairwise).
std::vector<double> goe_even_hsum_coeffs(int n, double sigma2) {
    auto hhat = hhat_coeffs_upto(n - 1);
    auto herm = hermite_coeffs_upto(n - 1);
    const double sigma = std::sqrt(sigma2);
    const double y1 = sigma * std::sqrt(2.0);  // argument scale of Hhat
    const double y2 = -sigma / std::sqrt(2.0); // argument scale of H
    std::vector<double> out(2 * n, 0.0);
    for (int j = 1; j <= n - 1; ++j) {
        const double cnj = binom(n - 1, j);
        const auto& A = hhat[n - 1 - j];
        const auto& B = herm[j - 1];
        for (size_t p = 0; p < A.size(); ++p) {
            if (A[p] == 0.0) continue;
            const double ap = A[p] * std::pow(y1, double(p));
            for (size_t q = 0; q < B.size(); ++q) {
                if (B[q] == 0.0) continue;
                out[p + q] += cnj * ap * B[q] * std::pow(y2, double(q));
            }
        }
    }
    return out;
}

// Same sum evaluated at a concrete s through complex arithmetic; used to
// honor (and cross-check) the i^2 = -1 bookkeeping.
double goe_even_hsum_complex(int n, double sigma2, double s) {
    using C = std::complex<double>;
    const double sigma = std::sqrt(sigma2);
    const C iarg = C(0.0, sigma * std::sqrt(2.0) * s);
    const int kmax = n - 1;
    std::vector<C> H(kmax + 1);
    H[0] = C(1.0, 0.0);
    if (kmax >= 1) H[1] = 2.0 * iarg;
    for (int m = 1; m < kmax; ++m) H[m + 1] = 2.0 * iarg * H[m] - 2.0 * double(m) * H[m - 1];
    C acc(0.0, 0.0);
    const C mi(0.0, -1.0);
    for (int j = 1; j <= n - 1; ++j) {
        C ip(1.0, 0.0);
        for (int t = 0; t < n - 1 - j; ++t) ip *= mi;
        double hb = specialfn::hermite_poly(j - 1, -sigma * s / std::sqrt(2.0));
        acc += binom(n - 1, j) * ip * H[n - 1 - j] * hb;
    }
    double scale = std::abs(acc) + 1e-300;
    if (std::fabs(acc.imag()) > 1e-10 * scale)
        throw std::runtime_error("GOE even-n Hermite sum: imaginary part did not cancel");
    return acc.real();
}

MgfRep gue_rep(int n, double sigma2) {
    MgfRep r;
    r.sigma2 = sigma2;
    auto f1 = f1_coeffs(n - 1, 2.0, -sigma2);
    for (size_t j = 0; j < f1.size(); ++j) r.add_e(1, 2 * j, n * f1[j]);
    return r;
}

MgfRep gse_rep(int n, double sigma2, MGFConvention conv) {
    MgfRep r;
    r.sigma2 = sigma2;
    const double half = conv == MGFConvention::mass_consistent ? 0.5 : 1.0;
    // final (GUE-transform) term
    if (conv == MGFConvention::mass_consistent) {
        auto f1 = f1_coeffs(2 * n, 2.0, -sigma2);
        for (size_t j = 0; j < f1.size(); ++j) r.add_e(1, 2 * j, half * (2 * n + 1) * f1[j]);
    } else {
        auto f1 = f1_coeffs(n - 1, 2.0, -sigma2);
        for (size_t j = 0; j < f1.size(); ++j) r.add_e(1, 2 * j, double(n) * f1[j]);
    }
    // - e^{u/2} sum_i sigma^{2i} s^{2i} 2^i n! / ((2i)! (n-i)!) 1F1(-(2n-2i); 1+2i; -u)
    for (int i = 0; i <= n; ++i) {
        double coef = std::pow(sigma2, i) * std::pow(2.0, i) * fact(n) / (fact(2 * i) * fact(n - i));
        auto f1 = f1_coeffs(2 * n - 2 * i, 1.0 + 2 * i, -sigma2);
        for (size_t j = 0; j < f1.size(); ++j)
            r.add_e(1, 2 * i + 2 * j, -half * coef * f1[j]);
    }
    return r;
}

MgfRep goe_rep(int n, double sigma2, MGFConvention conv) {
    MgfRep r = gue_rep(n, sigma2);
    if (n % 2 == 1) {
        auto f1 = f1_coeffs((n - 1) / 2, 0.5, -2.0 * sigma2);
        for (size_t j = 0; j < f1.size(); ++j) r.add_e(2, 2 * j, f1[j]);
    }
    for (int i = 0; 2 * i <= n - 1; ++i) {
        double coef = std::pow(sigma2, i) * dfact(n - 1) / (fact(2 * i) * dfact(n - 1 - 2 * i));
        auto f1 = f1_coeffs(n - 1 - 2 * i, 1.0 + 2 * i, -sigma2);
        for (size_t j = 0; j < f1.size(); ++j) r.add_e(1, 2 * i + 2 * j, -coef * f1[j]);
    }
    if (n % 2 == 0) {
        const double cn = dfact(n - 1) / (std::pow(2.0, n / 2) * fact(n - 1));
        const double sigma = std::sqrt(sigma2);
        const int m = (n - 2) / 2;
        // mass_consistent: 2 sigma sqrt2 s ... sqrt2 G(sigma s); printed drops sigma sqrt2.
        double lead = conv == MGFConvention::mass_consistent
                          ? 4.0 * sigma * fact(n - 1) / fact(m)
                          : 2.0 * std::sqrt(2.0) * fact(n - 1) / fact(m);
        auto f1 = f1_coeffs(m, 1.5, -2.0 * sigma2);
        for (size_t j = 0; j < f1.size(); ++j) r.add_g(1 + 2 * j, cn * lead * f1[j]);
        const double gamma = conv == MGFConvention::mass_consistent ? 2.0 : 1.0;
        auto hsum = goe_even_hsum_coeffs(n, sigma2);
        for (size_t p = 0; p < hsum.size(); ++p) r.add_e(1, p, cn * gamma * hsum[p]);
    }
    return r;
}

MgfRep build_rep(Kind kind, int n, double sigma2, MGFConvention conv) {
    switch (kind) {
        case Kind::GUE: return gue_rep(n, sigma2);
        case Kind::GSE: return gse_rep(n, sigma2, conv);
        case Kind::GOE: return goe_rep(n, sigma2, conv);
    }
    throw std::logic_error("build_rep: bad kind");
}

} // namespace

double mgf_eval(Kind kind, int n, double sigma2, double s, MGFConvention conv,
                Normalization normalization) {
    if (n < 1) throw std::domain_error("mgf_eval: n >= 1");
    if (sigma2 <= 0) throw std::domain_error("mgf_eval: sigma2 > 0");
    MgfRep rep = build_rep(kind, n, sigma2, conv);
    if (kind == Kind::GOE && n % 2 == 0) {
        // exercise the complex route and check it against the real expansion
        auto hsum = goe_even_hsum_coeffs(n, sigma2);
        double direct = 0.0;
        for (size_t p = 0; p < hsum.size(); ++p) direct += hsum[p] * std::pow(s, double(p));
        double viac = goe_even_hsum_complex(n, sigma2, s);
        if (std::fabs(direct - viac) > 1e-8 * (std::fabs(direct) + 1.0))
            throw std::runtime_error("GOE even-n Hermite sum: complex/real mismatch");
    }
    double v = rep.eval(s);
    if (conv == MGFConvention::mass_consistent) {
        double mass = rep.eval(0.0);
        if (std::fabs(mass - n) > 1e-10 * n)
            throw std::runtime_error("mgf_eval: mass_consistent self-check failed at s=0");
    }
    if (normalization == Normalization::probability) v /= n;
    return v;
}

double mgf_ode_residual(Kind kind, int n, double sigma2, double s) {
    MgfRep L = build_rep(kind, n, sigma2, MGFConvention::mass_consistent);
    MgfRep L1 = L.derivative();
    MgfRep L2 = L1.derivative();
    const double s2 = sigma2;
    if (kind == Kind::GUE) {
        double t1 = s * L2.eval(s);
        double t2 = 3.0 * L1.eval(s);
        double t3 = -s * (s2 * s2 * s * s + 4.0 * n * s2) * L.eval(s);
        double scale = std::max({std::fabs(t1), std::fabs(t2), std::fabs(t3), 1e-300});
        return (t1 + t2 + t3) / scale;
    }
    const double c = kind == Kind::GSE ? 8.0 * n + 2.0 : 4.0 * n - 2.0;
    double t1 = s * L2.eval(s);
    double t2 = -s * (4.0 * s2 * s2 * s * s + s2 * c) * L.eval(s);
    MgfRep U = gue_rep(kind == Kind::GSE ? 2 * n + 1 : n, sigma2);
    MgfRep U1 = U.derivative();
    const double rscale = kind == Kind::GSE ? 0.5 : 1.0;
    double r1 = rscale * -3.0 * U1.eval(s);
    double r2 = rscale * 3.0 * s2 * s * U.eval(s);
    double scale = std::max({std::fabs(t1), std::fabs(t2), std::fabs(r1), std::fabs(r2), 1e-300});
    return (t1 + t2 - r1 - r2) / scale;
}

// ---------------------------------------------------------------------------
// Exact series path
// ---------------------------------------------------------------------------

namespace {

PowerSeriesInS hsum_series(int n, const Rational& sigma2, int order) {
    // exact analogue of goe_even_hsum_coeffs: coefficients of
    // Hhat_{n-1-j}(sigma sqrt2 s) H_{j-1}(-sigma s/sqrt2) carry
    // (sigma^2)^{(p+q)/2} 2^{(p-q)/2} (-1)^q, p+q even.
    std::vector<std::vector<BigInt>> hhat(n), herm(n);
    hhat[0] = {BigInt(1)};
    herm[0] = {BigInt(1)};
    if (n >= 2) {
        hhat[1] = {BigInt(0), BigInt(2)};
        herm[1] = {BigInt(0), BigInt(2)};
    }
    for (int m = 1; m + 1 <= n - 1; ++m) {
        std::vector<BigInt> a(m + 2, BigInt(0)), b(m + 2, BigInt(0));
        for (size_t i = 0; i < hhat[m].size(); ++i) a[i + 1] += 2 * hhat[m][i];
        for (size_t i = 0; i < hhat[m - 1].size(); ++i) a[i] += 2 * m * hhat[m - 1][i];
        for (size_t i = 0; i < herm[m].size(); ++i) b[i + 1] += 2 * herm[m][i];
        for (size_t i = 0; i < herm[m - 1].size(); ++i) b[i] -= 2 * m * herm[m - 1][i];
        hhat[m + 1] = std::move(a);
        herm[m + 1] = std::move(b);
    }
    PowerSeriesInS out(order, Rational(0));
    for (int j = 1; j <= n - 1; ++j) {
        Rational cnj(binomial(n - 1, j));
        const auto& A = hhat[n - 1 - j];
        const auto& B = herm[j - 1];
        for (int p = 0; p < static_cast<int>(A.size()); ++p) {
            if (A[p] == 0) continue;
            for (int q = 0; q < static_cast<int>(B.size()); ++q) {
                if (B[q] == 0 || p + q > order) continue;
                if ((p + q) % 2) throw std::logic_error("hsum_series: odd total power");
                Rational term = cnj * Rational(A[p]) * Rational(B[q]);
                term *= rational_pow(sigma2, (p + q) / 2);
                term *= rational_pow(Rational(2), (p - q) / 2);
                if (q % 2) term = -term;
                out.set_coeff(p + q, out.coeff(p + q) + term);
            }
        }
    }
    return out;
}

PowerSeriesInS gue_series(int n, const Rational& sigma2, int order) {
    auto E = PowerSeriesInS::exp_a_s2(sigma2 / 2, order);
    auto F = PowerSeriesInS::hyp1f1_s2(n - 1, Rational(2), -sigma2, order);
    return (E * F).scaled(Rational(n));
}

PowerSeriesInS gse_series(int n, const Rational& sigma2, int order, MGFConvention conv) {
    auto E = PowerSeriesInS::exp_a_s2(sigma2 / 2, order);
    PowerSeriesInS acc(order, Rational(0));
    for (int i = 0; i <= n; ++i) {
        Rational coef = rational_pow(sigma2, i) * rational_pow(Rational(2), i)
                      * Rational(factorial(n)) / (Rational(factorial(2 * i)) * Rational(factorial(n - i)));
        auto F = PowerSeriesInS::hyp1f1_s2(2 * n - 2 * i, Rational(1 + 2 * i), -sigma2, order);
        acc = acc + F.shifted(2 * i).scaled(coef);
    }
    if (conv == MGFConvention::mass_consistent) {
        auto F = PowerSeriesInS::hyp1f1_s2(2 * n, Rational(2), -sigma2, order);
        auto total = F.scaled(Rational(2 * n + 1)) - acc;
        return (E * total).scaled(frac(1, 2));
    }
    auto F = PowerSeriesInS::hyp1f1_s2(n - 1, Rational(2), -sigma2, order);
    return E * (F.scaled(Rational(n)) - acc);
}

PowerSeriesInS goe_series(int n, const Rational& sigma2, int order, MGFConvention conv) {
    auto acc = gue_series(n, sigma2, order);
    auto E1 = PowerSeriesInS::exp_a_s2(sigma2 / 2, order);
    auto E2 = PowerSeriesInS::exp_a_s2(sigma2, order);
    if (n % 2 == 1) {
        auto F = PowerSeriesInS::hyp1f1_s2((n - 1) / 2, frac(1, 2), -2 * sigma2, order);
        acc = acc + E2 * F;
    }
    PowerSeriesInS sum(order, Rational(0));
    for (int i = 0; 2 * i <= n - 1; ++i) {
        Rational coef = rational_pow(sigma2, i) * Rational(double_factorial(n - 1))
                      / (Rational(factorial(2 * i)) * Rational(double_factorial(n - 1 - 2 * i)));
        auto F = PowerSeriesInS::hyp1f1_s2(n - 1 - 2 * i, Rational(1 + 2 * i), -sigma2, order);
        sum = sum + F.shifted(2 * i).scaled(coef);
    }
    acc = acc - E1 * sum;
    if (n % 2 == 0) {
        const int m = (n - 2) / 2;
        Rational cn = Rational(double_factorial(n - 1))
                    / (rational_pow(Rational(2), n / 2) * Rational(factorial(n - 1)));
        // 2 sigma sqrt2 s * sqrt2 G(sigma s) = 4 [sigma s G(sigma s)]  (mass_consistent)
        if (conv != MGFConvention::mass_consistent)
            // The printed "2s" gauss-integral term is 2 sqrt2 s G(sigma s),
            // irrational in sigma^2; that variant has no exact series.
            throw std::domain_error("moments_from_mgf: as_printed GOE with even n "
                                    "has no exact rational series; use mgf_eval");
        auto gs = PowerSeriesInS::sigma_s_gauss(sigma2, order);
        auto F = PowerSeriesInS::hyp1f1_s2(m, frac(3, 2), -2 * sigma2, order);
        Rational lead = Rational(4) * Rational(factorial(n - 1)) / Rational(factorial(m));
        acc = acc + (E2 * F * gs).scaled(cn * lead);
        acc = acc + (E1 * hsum_series(n, sigma2, order)).scaled(cn * 2);
    }
    return acc;
}

} // namespace

std::vector<Rational> moments_from_mgf(Kind kind, int n, const Rational& sigma2, int upto,
                                       MGFConvention conv, Normalization normalization) {
    if (upto % 2) throw std::domain_error("moments_from_mgf: upto must be even");
    if (upto < 0 || upto > 40) throw std::domain_error("moments_from_mgf: upto in 0..40");
    if (n < 1) throw std::domain_error("moments_from_mgf: n >= 1");
    PowerSeriesInS L;
    switch (kind) {
        case Kind::GUE: L = gue_series(n, sigma2, upto); break;
        case Kind::GSE: L = gse_series(n, sigma2, upto, conv); break;
        case Kind::GOE: L = goe_series(n, sigma2, upto, conv); break;
    }
    std::vector<Rational> out(upto + 1);
    Rational kfact(1);
    for (int k = 0; k <= upto; ++k) {
        if (k > 0) kfact *= k;
        out[k] = L.coeff(k) * kfact;
        if (k % 2 == 1 && out[k] != 0)
            throw std::logic_error("moments_from_mgf: odd moment did not vanish");
        if (normalization == Normalization::probability) out[k] /= n;
    }
    return out;
}

double two_hermite_laplace(int nn, int k, double s) {
    if (k < 0 || k > nn) throw std::domain_error("two_hermite_laplace: need 0 <= k <= nn");
    double r = std::sqrt(M_PI);
    for (int j = nn - k + 1; j <= nn; ++j) r *= j; // nn! / (nn-k)!
    r *= std::pow(2.0, k) * std::exp(s * s / 4.0) * std::pow(s, nn - k);
    return r * specialfn::hyp1f1(-double(k), nn - k + 1.0, -s * s / 2.0);
}

double a_series_value(int n, double s) {
    if (n < 2 || n % 2) throw std::domain_error("a_series_value: even n >= 2");
    using C = std::complex<double>;
    const int m = (n - 2) / 2;
    double first = 2.0 * s * fact(n - 1) / fact(m)
                 * specialfn::hyp1f1(-double(m), 1.5, -s * s)
                 * std::exp(s * s / 2.0) * std::sqrt(2.0 * M_PI)
                 * gauss_integral(s / std::sqrt(2.0));
    // 2 sqrt(pi) e^{s^2/4} sum_j C(n-1,j) (-i)^{n-1-j} H_{n-1-j}(is) H_{j-1}(-s/2)
    const C iarg(0.0, s);
    std::vector<C> H(n);
    H[0] = C(1.0, 0.0);
    if (n >= 2) H[1] = 2.0 * iarg;
    for (int k = 1; k + 1 <= n - 1; ++k) H[k + 1] = 2.0 * iarg * H[k] - 2.0 * double(k) * H[k - 1];
    C acc(0.0, 0.0);
    const C mi(0.0, -1.0);
    for (int j = 1; j <= n - 1; ++j) {
        C ip(1.0, 0.0);
        for (int t = 0; t < n - 1 - j; ++t) ip *= mi;
        acc += binom(n - 1, j) * ip * H[n - 1 - j] * specialfn::hermite_poly(j - 1, -s / 2.0);
    }
    if (std::fabs(acc.imag()) > 1e-10 * (std::abs(acc) + 1e-300))
        throw std::runtime_error("a_series_value: imaginary part did not cancel");
    return first + 2.0 * std::sqrt(M_PI) * std::exp(s * s / 4.0) * acc.real();
}

// ---------------------------------------------------------------------------
// 1/n expansions (section-7 rearrangements)
// ---------------------------------------------------------------------------

namespace {

// exact polynomial in 1/n (coefficients of n^{1-j}) for the GUE transform
std::vector<Rational> gue_1n_coeffs(int n, const Rational& s2) {
    std::vector<Rational> byj(n + 1, Rational(0)); // index j: coefficient of n^{1-j}
    Rational s2i(1);  // s^{2i}
    Rational ifact(1); // i!
    for (int i = 0; i <= n - 1; ++i) {
        if (i > 0) {
            s2i *= s2;
            ifact *= i;
        }
        Rational denom = ifact * ifact * Rational(i + 1); // i! (i+1)!
        for (int j = 0; j <= i + 1; ++j) {
            Rational st(specialfn::stirling_first_unsigned(i + 1, i + 1 - j));
            Rational term = s2i * st / denom;
            if (j % 2) term = -term;
            byj[j] += term;
        }
    }
    return byj;
}

} // namespace

double gse_mgf_second_term(int n, double s) {
    Rational s2 = Rational(s) * Rational(s); // exact double conversion
    Rational acc(0);
    const Rational inv_n(1, n);
    for (int i = 0; i <= n; ++i) {
        Rational coef = rational_pow(s2, i) * rational_pow(Rational(2), i) * Rational(factorial(n))
                      / (rational_pow(Rational(n), i) * Rational(factorial(2 * i)) * Rational(factorial(n - i)));
        acc += coef * specialfn::hyp1f1_poly(2 * n - 2 * i, Rational(1 + 2 * i), -s2 * inv_n);
    }
    return std::exp(s * s / (2.0 * n)) * acc.get_d();
}

std::vector<double> mgf_expansion_1n(Kind kind, double s, int n, int max_order) {
    if (n < 1) throw std::domain_error("mgf_expansion_1n: n >= 1");
    const Rational s2 = Rational(s) * Rational(s);
    const int exp_terms = 60; // e^{s^2/2n} tail far below double precision
    std::vector<Rational> expo(exp_terms + 1);
    {
        Rational t(1);
        expo[0] = 1;
        for (int m = 1; m <= exp_terms; ++m) {
            t *= s2 / Rational(2 * m);
            expo[m] = t; // coefficient of n^{-m}
        }
    }
    std::vector<Rational> base; // coefficient of n^{base_pow - k}
    int base_pow = 0;
    if (kind == Kind::GUE) {
        base = gue_1n_coeffs(n, s2);
        base_pow = 1;
    } else if (kind == Kind::GSE) {
        // second term of the sigma^2 = 1/n GSE transform, coefficients of n^{-k}
        base.assign(2 * n + 1, Rational(0));
        for (int i = 0; i <= n; ++i) {
            for (int j = 0; j <= 2 * n - 2 * i; ++j) {
                // product poly in n: prod_{l<i}(n-l) * prod_{l<j}(2n-2i-l)
                std::vector<Rational> poly{Rational(1)};
                auto mul_linear = [&poly](const Rational& a, const Rational& b) {
                    // poly *= (a n + b)
                    std::vector<Rational> next(poly.size() + 1, Rational(0));
                    for (size_t t = 0; t < poly.size(); ++t) {
                        next[t + 1] += poly[t] * a;
                        next[t] += poly[t] * b;
                    }
                    poly = std::move(next);
                };
                for (int l = 0; l < i; ++l) mul_linear(Rational(1), Rational(-l));
                for (int l = 0; l < j; ++l) mul_linear(Rational(2), Rational(-2 * i - l));
                Rational coef = rational_pow(Rational(2), i) * rational_pow(s2, i + j)
                              / (Rational(factorial(2 * i + j)) * Rational(factorial(j)));
                // term n^{deg}/n^{i+j} -> contributes to n^{-k}, k = i+j-deg
                for (int deg = 0; deg < static_cast<int>(poly.size()); ++deg) {
                    int k = i + j - deg;
                    if (k < 0 || k > 2 * n) continue;
                    base[k] += coef * poly[deg];
                }
            }
        }
        base_pow = 0;
    } else {
        throw std::domain_error("mgf_expansion_1n: GUE or GSE only");
    }
    // merge with the exponential prefactor: full coefficient of n^{base_pow - k};
    // partials[K] sums k <= K, and one extra entry carries the full-order value
    const int kmax = static_cast<int>(base.size()) - 1 + exp_terms;
    std::vector<double> partials;
    Rational acc(0);
    const Rational nq(n);
    for (int k = 0; k <= kmax; ++k) {
        Rational ck(0);
        for (int m = 0; m <= exp_terms && m <= k; ++m) {
            int idx = k - m;
            if (idx < static_cast<int>(base.size())) ck += expo[m] * base[idx];
        }
        acc += ck * rational_pow(nq, base_pow - k);
        if (k <= max_order) partials.push_back(acc.get_d());
    }
    partials.push_back(acc.get_d());
    return partials;
}

} // namespace spectra::mgf
