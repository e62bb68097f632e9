#include "spectra/eigen.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace spectra::eigen {

namespace {

double pythag(double a, double b) {
    double aa = std::fabs(a), ab = std::fabs(b);
    if (aa > ab) {
        double r = ab / aa;
        return aa * std::sqrt(1.0 + r * r);
    }
    if (ab == 0.0) return 0.0;
    double r = aa / ab;
    return ab * std::sqrt(1.0 + r * r);
}

// Implicit-shift QL on a symmetric tridiagonal (d, e), e[i] = subdiagonal
// between i and i+1. Eigenvalues only (EISPACK tql1 lineage).
void tql1(std::vector<double>& d, std::vector<double>& e) {
    const int n = static_cast<int>(d.size());
    if (n == 0) return;
    e.push_back(0.0);
    for (int l = 0; l < n; ++l) {
        int iter = 0;
        int m;
        do {
            for (m = l; m < n - 1; ++m) {
                double dd = std::fabs(d[m]) + std::fabs(d[m + 1]);
                if (std::fabs(e[m]) <= 1e-300 + 2.3e-16 * dd) break;
            }
            if (m != l) {
                if (iter++ == 60) throw std::runtime_error("tql1: too many iterations");
                double g = (d[l + 1] - d[l]) / (2.0 * e[l]);
                double r = pythag(g, 1.0);
                g = d[m] - d[l] + e[l] / (g + (g >= 0 ? std::fabs(r) : -std::fabs(r)));
                double s = 1.0, c = 1.0, p = 0.0;
                bool underflow = false;
                for (int i = m - 1; i >= l; --i) {
                    double f = s * e[i];
                    double b = c * e[i];
                    r = pythag(f, g);
                    e[i + 1] = r;
                    if (r == 0.0) { // split: recover and retry the block
                        d[i + 1] -= p;
                        e[m] = 0.0;
                        underflow = true;
                        break;
                    }
                    s = f / r;
                    c = g / r;
                    g = d[i + 1] - p;
                    r = (d[i] - g) * s + 2.0 * c * b;
                    p = s * r;
                    d[i + 1] = g + p;
                    g = c * r - b;
                }
                if (underflow) continue;
                d[l] -= p;
                e[l] = g;
                e[m] = 0.0;
            }
        } while (m != l);
    }
    e.pop_back();
    std::sort(d.begin(), d.end());
}

} // namespace

std::vector<double> hermitian_eigenvalues(std::vector<cplx> a, int n) {
    if (static_cast<int>(a.size()) != n * n) throw std::invalid_argument("matrix size mismatch");
    auto at = [&](int i, int j) -> cplx& { return a[i * n + j]; };
    std::vector<double> d(n, 0.0), e(std::max(n - 1, 0), 0.0);
    std::vector<cplx> u(n), p(n);

    // Householder column sweep: A <- H A H, H = I - tau u u*.
    for (int k = 0; k + 2 <= n; ++k) {
        double sig2 = 0.0;
        for (int i = k + 1; i < n; ++i) sig2 += std::norm(at(i, k));
        double sig = std::sqrt(sig2);
        cplx x0 = at(k + 1, k);
        if (sig < 1e-300) {
            d[k] = at(k, k).real();
            e[k] = std::abs(x0);
            continue;
        }
        cplx phase = std::abs(x0) > 0 ? x0 / std::abs(x0) : cplx(1.0, 0.0);
        cplx beta = -phase * sig;
        double gamma = sig2 + sig * std::abs(x0); // u* x, real
        for (int i = k + 1; i < n; ++i) u[i] = at(i, k);
        u[k + 1] -= beta;
        const double tau = 1.0 / gamma;

        // p = tau A u ; w = p - (tau/2)(u* p) u ; A <- A - u w* - w u*
        for (int i = k + 1; i < n; ++i) {
            cplx acc(0.0, 0.0);
            for (int j = k + 1; j < n; ++j) acc += at(i, j) * u[j];
            p[i] = tau * acc;
        }
        cplx updot(0.0, 0.0);
        for (int i = k + 1; i < n; ++i) updot += std::conj(u[i]) * p[i];
        const cplx kk = 0.5 * tau * updot;
        for (int i = k + 1; i < n; ++i) p[i] -= kk * u[i];
        for (int i = k + 1; i < n; ++i)
            for (int j = k + 1; j < n; ++j)
                at(i, j) -= u[i] * std::conj(p[j]) + p[i] * std::conj(u[j]);

        d[k] = at(k, k).real();
        e[k] = std::abs(beta); // phases absorbed by a diagonal similarity
    }
    if (n >= 2) {
        d[n - 2] = at(n - 2, n - 2).real();
        e[n - 2] = std::abs(at(n - 1, n - 2));
    }
    d[n - 1] = at(n - 1, n - 1).real();

    tql1(d, e);
    return d;
}

std::vector<double> symmetric_eigenvalues(const std::vector<double>& a, int n) {
    std::vector<cplx> ac(a.size());
    for (size_t i = 0; i < a.size(); ++i) ac[i] = cplx(a[i], 0.0);
    return hermitian_eigenvalues(std::move(ac), n);
}

} // namespace spectra::eigen
