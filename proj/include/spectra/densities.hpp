#ifndef SPECTRA_DENSITIES_HPP
#define SPECTRA_DENSITIES_HPP

#include <map>
#include <vector>

#include "spectra/poly.hpp"
#include "spectra/specialfn.hpp"

namespace spectra::densities {

enum class Kind { GOE, GUE, GSE };
enum class Normalization { mean_count, probability };

/// Coordinate system for every density/MGF query: ensemble kind, matrix
/// order n, variance parameter sigma^2, and whether the density integrates
/// to n (mean_count) or 1 (probability).
struct EnsembleSpec {
    Kind kind = Kind::GUE;
    int n = 1;
    double sigma2 = 0.5;
    Normalization normalization = Normalization::mean_count;
};

struct DensityQuery {
    EnsembleSpec spec;
    double x = 0.0;
    int deriv = 0; // 0..3
};

const char* kind_name(Kind k);
Kind kind_from_name(const std::string& name);

/// Linear combination of phi_a(u) phi_b(u), phi_a(u) and phi_a(u) G(u)
/// terms, G(u) = int_0^u e^{-t^2/2} dt. Closed under d/du via
/// phi' = sqrt(k/2) phi_{k-1} - sqrt((k+1)/2) phi_{k+1} and
/// G' = e^{-u^2/2} = pi^{1/4} phi_0.
class PhiExpr {
  public:
    void add_pair(int a, int b, double c);
    void add_single(int a, double c);
    void add_gterm(int a, double c);

    PhiExpr derivative() const;
    double eval(double u) const;
    PhiExpr operator+(const PhiExpr& o) const;
    PhiExpr scaled(double k) const;

    int max_index() const;

  private:
    std::map<std::pair<int, int>, double> pairs_;  // a <= b
    std::map<int, double> singles_;
    std::map<int, double> gterms_;
};

/// tau_n in the sign-integral closed form:
///   tau_n(u) = -sqrt(n) phi_{n-1}(u) sum_i d_i phi_{n-1-2i}(u)
///              + [n even] e_n phi_{n-1}(u) G(u),
/// d_0 = 1/sqrt(n), d_i = d_{i-1} sqrt((n+1-2i)/(n-2i)),
/// e_n = sqrt(n/2) sqrt((n-1)!!/n!!) / pi^{1/4}.
PhiExpr tau_expr(int n);

/// alpha_n = phi_{n-1} / int phi_{n-1} for odd n (zero for even n).
PhiExpr alpha_expr(int n);

/// int phi_k dt for even k, closed form sqrt(2 pi) pi^{-1/4} prod sqrt((2j-1)/(2j)).
double phi_integral_closed(int k);

/// tau_n(x) or an analytic derivative of it, deriv in 0..3.
double tau_eval(int n, double x, int deriv = 0);

/// Prebuilt evaluator: the mean-count density of `spec` and its first three
/// analytic derivatives. Thread-safe once constructed.
class DensityEvaluator {
  public:
    explicit DensityEvaluator(const EnsembleSpec& spec, int max_deriv = 3);
    /// d-th derivative at x, honoring spec.normalization.
    double operator()(double x, int d = 0) const;
    const EnsembleSpec& spec() const { return spec_; }

  private:
    EnsembleSpec spec_;
    double scale_;            // sigma sqrt(2)
    std::vector<PhiExpr> du_; // u-space expression and derivatives
};

double density_eval(const DensityQuery& q);

/// Relative residual of the density ODE for `spec` at x: |LHS-RHS| divided
/// by the largest constituent term. GUE: sigma^4 p''' + (4n sigma^2 - x^2) p' + x p = 0.
/// GSE/GOE: 4 sigma^4 p''' + (sigma^2 c - x^2) p' - 2xp = -3 sigma^2 q' - 3xq
/// with c = 8n+2 / 4n-2 and q the GUE density of order 2n+1 / n (GSE RHS scaled
/// by 1/2 to match the mass-n GSE convention).
double density_ode_residual(const EnsembleSpec& spec, double x);

/// Relative residual of
///   2 tau_n''' + 2(2n-1-x^2) tau_n' - 4x tau_n = (12n-1-6x^2) p_u' + 6x p_u,
/// p_u = sum_{k<n} phi_k^2 (the sigma^2 = 1/2 normalization).
double tau_ode_residual(int n, double x);

/// Integration window [-R, R]: R = sigma sqrt2 (2 sqrt(2n+1)) + 10 sigma sqrt2.
double window(const EnsembleSpec& spec);

/// Adaptive quadrature of int g(x) density(x) dx over the window, refined
/// until two successive panel doublings agree to 1e-11 relative.
double integrate_against(const EnsembleSpec& spec, const PolyQ& g);

/// Same machinery for a general integrand weight w(x)*density(x).
double integrate_weighted(const EnsembleSpec& spec,
                          const std::function<double(double)>& w);

/// Grid evaluation kernel (OpenMP parallel when enabled) and its serial
/// reference, kept for bit-identity tests.
std::vector<double> density_grid(const EnsembleSpec& spec, double start, double stop,
                                 int points, int deriv);
std::vector<double> density_grid_serial(const EnsembleSpec& spec, double start, double stop,
                                        int points, int deriv);

} // namespace spectra::densities

#endif
