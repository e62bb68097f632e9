#ifndef SPECTRA_QUADRATURE_HPP
#define SPECTRA_QUADRATURE_HPP

#include <functional>
#include <vector>

namespace spectra::quadrature {

/// Gauss-Legendre nodes/weights on [-1,1], computed once per order and cached.
struct GaussLegendre {
    std::vector<double> nodes;
    std::vector<double> weights;
};

const GaussLegendre& gauss_legendre(int order);

/// Composite Gauss-Legendre over [lo,hi] with `panels` equal panels.
double composite(const std::function<double(double)>& f, double lo, double hi,
                 int panels, int order = 20);

/// Panel-doubling refinement until two successive levels agree to rel_tol
/// (relative), starting from `panels0`. Throws std::runtime_error after
/// `max_levels` refinements without convergence.
double adaptive(const std::function<double(double)>& f, double lo, double hi,
                double rel_tol = 1e-11, int panels0 = 8, int max_levels = 20,
                int order = 20);

} // namespace spectra::quadrature

#endif
