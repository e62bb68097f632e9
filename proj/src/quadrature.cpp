#include "spectra/quadrature.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <stdexcept>

namespace spectra::quadrature {

namespace {

GaussLegendre compute_gl(int order) {
    GaussLegendre gl;
    gl.nodes.resize(order);
    gl.weights.resize(order);
    // Newton on P_n with the usual asymptotic first guess.
    for (int i = 0; i < (order + 1) / 2; ++i) {
        double x = std::cos(M_PI * (i + 0.75) / (order + 0.5));
        double pp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= order; ++k) {
                double p2 = ((2.0 * k - 1) * x * p1 - (k - 1) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            pp = order * (x * p1 - p0) / (x * x - 1.0);
            double dx = p1 / pp;
            x -= dx;
            if (std::fabs(dx) < 1e-16) break;
        }
        gl.nodes[i] = -x;
        gl.nodes[order - 1 - i] = x;
        double w = 2.0 / ((1.0 - x * x) * pp * pp);
        gl.weights[i] = w;
        gl.weights[order - 1 - i] = w;
    }
    return gl;
}

} // namespace

const GaussLegendre& gauss_legendre(int order) {
    static std::map<int, GaussLegendre> cache;
    static std::mutex mu;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(order);
    if (it == cache.end()) it = cache.emplace(order, compute_gl(order)).first;
    return it->second;
}

double composite(const std::function<double(double)>& f, double lo, double hi,
                 int panels, int order) {
    const GaussLegendre& gl = gauss_legendre(order);
    const double h = (hi - lo) / panels;
    double total = 0.0;
    for (int p = 0; p < panels; ++p) {
        const double c = lo + (p + 0.5) * h;
        const double r = 0.5 * h;
        double acc = 0.0;
        for (int i = 0; i < order; ++i) acc += gl.weights[i] * f(c + r * gl.nodes[i]);
        total += r * acc;
    }
    return total;
}

double adaptive(const std::function<double(double)>& f, double lo, double hi,
                double rel_tol, int panels0, int max_levels, int order) {
    int panels = panels0;
    double prev = composite(f, lo, hi, panels, order);
    for (int level = 0; level < max_levels; ++level) {
        panels *= 2;
        double cur = composite(f, lo, hi, panels, order);
        if (std::fabs(cur - prev) <= rel_tol * (std::fabs(cur) + 1e-300)) return cur;
        prev = cur;
    }
    throw std::runtime_error("quadrature::adaptive: refinement did not converge");
}

} // namespace spectra::quadrature
