#include "spectra/densities.hpp"

#include <cmath>
#include <functional>
#include <stdexcept>

#include "spectra/quadrature.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace spectra::densities {

using specialfn::gauss_integral;
using specialfn::hermite_fn_all;

const char* kind_name(Kind k) {
    switch (k) {
        case Kind::GOE: return "goe";
        case Kind::GUE: return "gue";
        case Kind::GSE: return "gse";
    }
    return "?";
}

Kind kind_from_name(const std::string& name) {
    if (name == "goe" || name == "GOE") return Kind::GOE;
    if (name == "gue" || name == "GUE") return Kind::GUE;
    if (name == "gse" || name == "GSE") return Kind::GSE;
    throw std::invalid_argument("unknown ensemble kind: " + name);
}

void PhiExpr::add_pair(int a, int b, double c) {
    if (c == 0.0 || a < 0 || b < 0) return;
    if (a > b) std::swap(a, b);
    pairs_[{a, b}] += c;
}
void PhiExpr::add_single(int a, double c) {
    if (c == 0.0 || a < 0) return;
    singles_[a] += c;
}
void PhiExpr::add_gterm(int a, double c) {
    if (c == 0.0 || a < 0) return;
    gterms_[a] += c;
}

namespace {
inline double lower_c(int k) { return std::sqrt(k / 2.0); }       // phi_k -> phi_{k-1}
inline double upper_c(int k) { return -std::sqrt((k + 1) / 2.0); } // phi_k -> phi_{k+1}
const double pi_quarter = std::pow(M_PI, 0.25);
} // namespace

PhiExpr PhiExpr::derivative() const {
    PhiExpr d;
    for (const auto& [ab, c] : pairs_) {
        auto [a, b] = ab;
        d.add_pair(a - 1, b, c * lower_c(a));
        d.add_pair(a + 1, b, c * upper_c(a));
        d.add_pair(a, b - 1, c * lower_c(b));
        d.add_pair(a, b + 1, c * upper_c(b));
    }
    for (const auto& [a, c] : singles_) {
        d.add_single(a - 1, c * lower_c(a));
        d.add_single(a + 1, c * upper_c(a));
    }
    for (const auto& [a, c] : gterms_) {
        d.add_gterm(a - 1, c * lower_c(a));
        d.add_gterm(a + 1, c * upper_c(a));
        d.add_pair(0, a, c * pi_quarter); // phi_a G' = pi^{1/4} phi_a phi_0
    }
    return d;
}

int PhiExpr::max_index() const {
    int m = 0;
    for (const auto& [ab, c] : pairs_) m = std::max(m, ab.second);
    for (const auto& [a, c] : singles_) m = std::max(m, a);
    for (const auto& [a, c] : gterms_) m = std::max(m, a);
    return m;
}

double PhiExpr::eval(double u) const {
    std::vector<double> phi;
    hermite_fn_all(u, max_index(), phi);
    double acc = 0.0;
    for (const auto& [ab, c] : pairs_) acc += c * phi[ab.first] * phi[ab.second];
    for (const auto& [a, c] : singles_) acc += c * phi[a];
    if (!gterms_.empty()) {
        const double G = gauss_integral(u);
        for (const auto& [a, c] : gterms_) acc += c * phi[a] * G;
    }
    return acc;
}

PhiExpr PhiExpr::operator+(const PhiExpr& o) const {
    PhiExpr r = *this;
    for (const auto& [ab, c] : o.pairs_) r.add_pair(ab.first, ab.second, c);
    for (const auto& [a, c] : o.singles_) r.add_single(a, c);
    for (const auto& [a, c] : o.gterms_) r.add_gterm(a, c);
    return r;
}

PhiExpr PhiExpr::scaled(double k) const {
    PhiExpr r;
    for (const auto& [ab, c] : pairs_) r.add_pair(ab.first, ab.second, c * k);
    for (const auto& [a, c] : singles_) r.add_single(a, c * k);
    for (const auto& [a, c] : gterms_) r.add_gterm(a, c * k);
    return r;
}

PhiExpr tau_expr(int n) {
    if (n < 1) throw std::domain_error("tau_expr: n >= 1 required");
    PhiExpr e;
    double d = 1.0 / std::sqrt(double(n));
    for (int i = 0; 2 * i <= n - 1; ++i) {
        if (i > 0) d *= std::sqrt(double(n + 1 - 2 * i) / double(n - 2 * i));
        e.add_pair(n - 1, n - 1 - 2 * i, -std::sqrt(double(n)) * d);
    }
    if (n % 2 == 0) {
        double ratio = 1.0; // (n-1)!!/n!!
        for (int j = 1; j <= n - 1; j += 2) ratio *= double(j) / double(j + 1);
        double en = std::sqrt(n / 2.0) * std::sqrt(ratio) / pi_quarter;
        e.add_gterm(n - 1, en);
    }
    return e;
}

double phi_integral_closed(int k) {
    if (k % 2) throw std::domain_error("phi_integral_closed: zero for odd index");
    double A = std::sqrt(2.0 * M_PI) / pi_quarter;
    for (int j = 1; 2 * j <= k; ++j) A *= std::sqrt((2.0 * j - 1) / (2.0 * j));
    return A;
}

PhiExpr alpha_expr(int n) {
    PhiExpr e;
    if (n % 2 == 0) return e;
    e.add_single(n - 1, 1.0 / phi_integral_closed(n - 1));
    return e;
}

double tau_eval(int n, double x, int deriv) {
    if (deriv < 0 || deriv > 3) throw std::domain_error("tau_eval: deriv in 0..3");
    PhiExpr e = tau_expr(n);
    for (int d = 0; d < deriv; ++d) e = e.derivative();
    return e.eval(x);
}

namespace {
PhiExpr gue_expr(int order) {
    PhiExpr e;
    for (int k = 0; k < order; ++k) e.add_pair(k, k, 1.0);
    return e;
}

PhiExpr base_expr(Kind kind, int n) {
    switch (kind) {
        case Kind::GUE: return gue_expr(n);
        case Kind::GSE: return (gue_expr(2 * n + 1) + tau_expr(2 * n + 1)).scaled(0.5);
        case Kind::GOE: return gue_expr(n) + tau_expr(n) + alpha_expr(n);
    }
    throw std::logic_error("base_expr: bad kind");
}
} // namespace

DensityEvaluator::DensityEvaluator(const EnsembleSpec& spec, int max_deriv) : spec_(spec) {
    if (spec.n < 1) throw std::domain_error("EnsembleSpec: n >= 1 required");
    if (spec.sigma2 <= 0) throw std::domain_error("EnsembleSpec: sigma2 > 0 required");
    scale_ = std::sqrt(2.0 * spec.sigma2);
    du_.push_back(base_expr(spec.kind, spec.n));
    for (int d = 0; d < max_deriv; ++d) du_.push_back(du_.back().derivative());
}

double DensityEvaluator::operator()(double x, int d) const {
    if (d < 0 || d >= static_cast<int>(du_.size()))
        throw std::domain_error("DensityEvaluator: derivative order out of range");
    double v = du_[d].eval(x / scale_) / std::pow(scale_, d + 1);
    if (spec_.normalization == Normalization::probability) v /= spec_.n;
    return v;
}

double density_eval(const DensityQuery& q) {
    if (q.deriv < 0 || q.deriv > 3) throw std::domain_error("density_eval: deriv in 0..3");
    DensityEvaluator ev(q.spec, q.deriv);
    return ev(q.x, q.deriv);
}

double density_ode_residual(const EnsembleSpec& spec, double x) {
    // The ODEs are linear; work in mean_count and report the residual
    // relative to the largest term.
    EnsembleSpec mc = spec;
    mc.normalization = Normalization::mean_count;
    DensityEvaluator p(mc, 3);
    const double s2 = spec.sigma2;
    const int n = spec.n;
    if (spec.kind == Kind::GUE) {
        double t1 = s2 * s2 * p(x, 3);
        double t2 = (4.0 * n * s2 - x * x) * p(x, 1);
        double t3 = x * p(x, 0);
        double scale = std::max({std::fabs(t1), std::fabs(t2), std::fabs(t3), 1e-300});
        return (t1 + t2 + t3) / scale;
    }
    const double c = spec.kind == Kind::GSE ? 8.0 * n + 2.0 : 4.0 * n - 2.0;
    double t1 = 4.0 * s2 * s2 * p(x, 3);
    double t2 = (s2 * c - x * x) * p(x, 1);
    double t3 = -2.0 * x * p(x, 0);
    // GSE right side: GUE of order 2n+1 (the proof's p*_u), scaled 1/2 to
    // match the mass-n GSE convention. GOE right side: GUE of order n.
    EnsembleSpec gs{Kind::GUE, spec.kind == Kind::GSE ? 2 * n + 1 : n, s2,
                    Normalization::mean_count};
    DensityEvaluator q(gs, 1);
    double rscale = spec.kind == Kind::GSE ? 0.5 : 1.0;
    double r1 = rscale * -3.0 * s2 * q(x, 1);
    double r2 = rscale * -3.0 * x * q(x, 0);
    double scale = std::max({std::fabs(t1), std::fabs(t2), std::fabs(t3),
                             std::fabs(r1), std::fabs(r2), 1e-300});
    return (t1 + t2 + t3 - r1 - r2) / scale;
}

double tau_ode_residual(int n, double x) {
    PhiExpr tau = tau_expr(n);
    PhiExpr t1 = tau.derivative();
    PhiExpr t2 = t1.derivative();
    PhiExpr t3 = t2.derivative();
    PhiExpr pu = gue_expr(n);
    PhiExpr pu1 = pu.derivative();
    double lhs1 = 2.0 * t3.eval(x);
    double lhs2 = 2.0 * (2.0 * n - 1.0 - x * x) * t1.eval(x);
    double lhs3 = -4.0 * x * tau.eval(x);
    double rhs1 = (12.0 * n - 1.0 - 6.0 * x * x) * pu1.eval(x);
    double rhs2 = 6.0 * x * pu.eval(x);
    double scale = std::max({std::fabs(lhs1), std::fabs(lhs2), std::fabs(lhs3),
                             std::fabs(rhs1), std::fabs(rhs2), 1e-300});
    return (lhs1 + lhs2 + lhs3 - rhs1 - rhs2) / scale;
}

double window(const EnsembleSpec& spec) {
    const double a = std::sqrt(2.0 * spec.sigma2);
    return a * 2.0 * std::sqrt(2.0 * spec.n + 1.0) + 10.0 * a;
}

double integrate_weighted(const EnsembleSpec& spec,
                          const std::function<double(double)>& w) {
    DensityEvaluator ev(spec, 0);
    const double R = window(spec);
    auto f = [&](double x) { return w(x) * ev(x, 0); };
    int panels0 = std::max(8, spec.n / 2);
    return quadrature::adaptive(f, -R, R, 1e-11, panels0, 20);
}

double integrate_against(const EnsembleSpec& spec, const PolyQ& g) {
    if (g.degree() > 64) throw std::domain_error("integrate_against: deg g <= 64 required");
    std::vector<double> c(g.coeffs().size());
    for (size_t i = 0; i < c.size(); ++i) c[i] = g.coeffs()[i].get_d();
    return integrate_weighted(spec, [&](double x) {
        double v = 0.0;
        for (int m = static_cast<int>(c.size()) - 1; m >= 0; --m) v = v * x + c[m];
        return v;
    });
}

std::vector<double> density_grid(const EnsembleSpec& spec, double start, double stop,
                                 int points, int deriv) {
    if (points < 2) throw std::invalid_argument("density_grid: points >= 2");
    DensityEvaluator ev(spec, deriv);
    std::vector<double> out(points);
    const double h = (stop - start) / (points - 1);
#ifdef _OPENMP
#pragma omp parallel for schedule(static)
#endif
    for (int i = 0; i < points; ++i) out[i] = ev(start + i * h, deriv);
    return out;
}

std::vector<double> density_grid_serial(const EnsembleSpec& spec, double start, double stop,
                                        int points, int deriv) {
    if (points < 2) throw std::invalid_argument("density_grid: points >= 2");
    DensityEvaluator ev(spec, deriv);
    std::vector<double> out(points);
    const double h = (stop - start) / (points - 1);
    for (int i = 0; i < points; ++i) out[i] = ev(start + i * h, deriv);
    return out;
}

} // namespace spectra::densities
