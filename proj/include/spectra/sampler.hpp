#ifndef SPECTRA_SAMPLER_HPP
#define SPECTRA_SAMPLER_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "spectra/densities.hpp"
#include "spectra/poly.hpp"

namespace spectra::sampler {

using densities::Kind;

enum class VarianceConvention {
    paper_definition, // GOE off-diag 2 sigma^2 / diag sigma^2; GSE total |entry|^2 = sigma^2/2
    mehta_consistent, // GOE off-diag sigma^2 / diag 2 sigma^2; GSE per-component sigma^2/2
};

/// Deterministic sampling plan: identical configs produce bit-identical
/// streams regardless of thread count.
struct SampleConfig {
    Kind kind = Kind::GUE;
    int n = 1;
    double sigma2 = 0.5;
    long count = 1;
    std::uint64_t seed = 0;
    VarianceConvention convention = VarianceConvention::mehta_consistent;
};

struct TraceStats {
    double mean = 0.0;
    double stderr_ = 0.0;
    long count = 0;
};

/// Counter-based Gaussian stream: pure function of (seed, index, draw).
double gaussian_draw(std::uint64_t seed, std::uint64_t index, std::uint64_t draw);

/// Sorted spectrum of the index-th matrix of the stream. GSE matrices are
/// embedded as 2n x 2n complex self-adjoint; Kramers pairs are verified
/// (pair gap <= 1e-8 spectral radius, else throws) and deduplicated.
std::vector<double> sample_spectrum(const SampleConfig& cfg, long index);

/// Mean of (1/n) sum_j g(lambda_j) over the stream, with standard error.
/// OpenMP-parallel over the index dimension; the serial variant is the
/// reference for bit-identity tests.
TraceStats empirical_trace_mean(const SampleConfig& cfg, const PolyQ& g);
TraceStats empirical_trace_mean_serial(const SampleConfig& cfg, const PolyQ& g);

struct ProbeRow {
    Kind kind;
    VarianceConvention convention;
    double m2, m2_se, m2_ref, z2;
    double m4, m4_se, m4_ref, z4;
    bool pass; // both |z| < 3
};

struct ProbeReport {
    std::vector<ProbeRow> rows;
    // per kind: "paper_definition", "mehta_consistent", "identical", "inconclusive"
    std::string verdict_goe, verdict_gue, verdict_gse;
};

/// Compares empirical second/fourth moments under both entry-variance
/// conventions with the formula-density moments (quadrature) and reports
/// which convention matches.
ProbeReport convention_probe(int n, double sigma2, long count, std::uint64_t seed = 12345);

} // namespace spectra::sampler

#endif
