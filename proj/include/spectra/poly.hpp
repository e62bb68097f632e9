#ifndef SPECTRA_POLY_HPP
#define SPECTRA_POLY_HPP

#include <cstddef>
#include <stdexcept>
#include <vector>

#include "spectra/rational.hpp"
#include "spectra/real.hpp"

namespace spectra {

namespace detail {
inline bool scalar_is_zero(const Rational& q) { return q == 0; }
inline bool scalar_is_zero(const Real& r) { return r.is_zero(); }
inline bool scalar_is_zero(double d) { return d == 0.0; }
} // namespace detail

/// Dense polynomial (index = monomial degree) over an exact or extended-
/// precision scalar. Trailing zeros are trimmed so degree() = size-1.
template <class T>
class Poly {
  public:
    Poly() = default;
    explicit Poly(std::vector<T> coeffs) : c_(std::move(coeffs)) { trim(); }

    static Poly monomial(int degree, T coeff) {
        std::vector<T> c(degree + 1, T{});
        c[degree] = std::move(coeff);
        return Poly(std::move(c));
    }

    int degree() const { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }
    const std::vector<T>& coeffs() const { return c_; }

    T coeff(int m) const {
        if (m < 0 || m >= static_cast<int>(c_.size())) return T{};
        return c_[m];
    }
    void set_coeff(int m, T v) {
        if (m >= static_cast<int>(c_.size())) c_.resize(m + 1, T{});
        c_[m] = std::move(v);
        trim();
    }

    Poly derivative() const {
        if (c_.size() <= 1) return Poly();
        std::vector<T> d(c_.size() - 1);
        for (size_t m = 1; m < c_.size(); ++m) d[m - 1] = c_[m] * static_cast<long>(m);
        return Poly(std::move(d));
    }

    /// Antiderivative with zero constant term.
    Poly antiderivative() const {
        if (c_.empty()) return Poly();
        std::vector<T> a(c_.size() + 1, T{});
        for (size_t m = 0; m < c_.size(); ++m) a[m + 1] = c_[m] / static_cast<long>(m + 1);
        return Poly(std::move(a));
    }

    Poly times_x() const {
        if (c_.empty()) return Poly();
        std::vector<T> r(c_.size() + 1, T{});
        for (size_t m = 0; m < c_.size(); ++m) r[m + 1] = c_[m];
        return Poly(std::move(r));
    }

    Poly truncated(int max_degree) const {
        if (degree() <= max_degree) return *this;
        std::vector<T> r(c_.begin(), c_.begin() + max_degree + 1);
        return Poly(std::move(r));
    }

    friend Poly operator+(const Poly& a, const Poly& b) {
        std::vector<T> r(std::max(a.c_.size(), b.c_.size()), T{});
        for (size_t i = 0; i < a.c_.size(); ++i) r[i] = r[i] + a.c_[i];
        for (size_t i = 0; i < b.c_.size(); ++i) r[i] = r[i] + b.c_[i];
        return Poly(std::move(r));
    }
    friend Poly operator-(const Poly& a, const Poly& b) {
        std::vector<T> r(std::max(a.c_.size(), b.c_.size()), T{});
        for (size_t i = 0; i < a.c_.size(); ++i) r[i] = r[i] + a.c_[i];
        for (size_t i = 0; i < b.c_.size(); ++i) r[i] = r[i] - b.c_[i];
        return Poly(std::move(r));
    }
    friend Poly operator*(const Poly& a, const Poly& b) {
        if (a.c_.empty() || b.c_.empty()) return Poly();
        std::vector<T> r(a.c_.size() + b.c_.size() - 1, T{});
        for (size_t i = 0; i < a.c_.size(); ++i)
            for (size_t j = 0; j < b.c_.size(); ++j) r[i + j] = r[i + j] + a.c_[i] * b.c_[j];
        return Poly(std::move(r));
    }
    Poly scaled(const T& k) const {
        std::vector<T> r(c_);
        for (auto& x : r) x = x * k;
        return Poly(std::move(r));
    }

    friend bool operator==(const Poly& a, const Poly& b) { return a.c_ == b.c_; }

    double eval_double(double x) const {
        double v = 0.0;
        for (int m = degree(); m >= 0; --m) v = v * x + to_double(c_[m]);
        return v;
    }

    bool is_even() const {
        for (size_t m = 1; m < c_.size(); m += 2)
            if (!detail::scalar_is_zero(c_[m])) return false;
        return true;
    }
    bool is_odd() const {
        for (size_t m = 0; m < c_.size(); m += 2)
            if (!detail::scalar_is_zero(c_[m])) return false;
        return true;
    }

    /// Even part: odd coefficients dropped.
    Poly even_part() const {
        std::vector<T> r(c_);
        for (size_t m = 1; m < r.size(); m += 2) r[m] = T{};
        return Poly(std::move(r));
    }

  private:
    static double to_double(const Rational& q) { return q.get_d(); }
    static double to_double(const Real& r) { return r.to_double(); }
    static double to_double(double d) { return d; }

    void trim() {
        while (!c_.empty() && detail::scalar_is_zero(c_.back())) c_.pop_back();
    }

    std::vector<T> c_;
};

using PolyQ = Poly<Rational>;
using PolyR = Poly<Real>;

inline PolyQ poly_from_coeffs(const std::vector<Rational>& c) { return PolyQ(c); }

inline PolyR to_real_poly(const PolyQ& p, mpfr_prec_t prec) {
    std::vector<Real> c;
    c.reserve(p.coeffs().size());
    for (const auto& q : p.coeffs()) c.emplace_back(q, prec);
    return PolyR(std::move(c));
}

} // namespace spectra

#endif
