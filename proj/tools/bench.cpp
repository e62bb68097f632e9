// Serial vs OpenMP comparison for the data-parallel kernels: density grid
// evaluation and Monte Carlo trace sweeps.
#include <chrono>
#include <cstdio>

#include "spectra/densities.hpp"
#include "spectra/sampler.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace {

template <class F>
double time_ms(F&& fn) {
    auto t0 = std::chrono::steady_clock::now();
    fn();
    auto t1 = std::chrono::steady_clock::now();
    return std::chrono::duration<double, std::milli>(t1 - t0).count();
}

} // namespace

int main() {
#ifdef _OPENMP
    std::printf("OpenMP threads: %d\n", omp_get_max_threads());
#else
    std::printf("built without OpenMP; both columns run serial code\n");
#endif
    std::printf("%-34s %12s %12s %8s\n", "kernel", "serial (ms)", "parallel (ms)", "speedup");

    {
        spectra::densities::EnsembleSpec spec{spectra::densities::Kind::GUE, 60, 1.0 / 60,
                                              spectra::densities::Normalization::probability};
        std::vector<double> a, b;
        double ts = time_ms([&] {
            a = spectra::densities::density_grid_serial(spec, -2.5, 2.5, 40001, 0);
        });
        double tp = time_ms([&] {
            b = spectra::densities::density_grid(spec, -2.5, 2.5, 40001, 0);
        });
        bool same = a == b;
        std::printf("%-34s %12.1f %12.1f %7.2fx%s\n", "density_grid gue n=60 40001 pts", ts, tp,
                    ts / tp, same ? "" : "  MISMATCH");
    }
    {
        spectra::sampler::SampleConfig cfg{spectra::densities::Kind::GOE, 32, 0.5, 4000, 7,
                                           spectra::sampler::VarianceConvention::mehta_consistent};
        auto g = spectra::PolyQ::monomial(2, spectra::Rational(1));
        spectra::sampler::TraceStats sa{}, sb{};
        double ts = time_ms([&] { sa = spectra::sampler::empirical_trace_mean_serial(cfg, g); });
        double tp = time_ms([&] { sb = spectra::sampler::empirical_trace_mean(cfg, g); });
        bool same = sa.mean == sb.mean && sa.stderr_ == sb.stderr_;
        std::printf("%-34s %12.1f %12.1f %7.2fx%s\n", "trace sweep goe n=32 count=4000", ts, tp,
                    ts / tp, same ? "" : "  MISMATCH");
    }
    {
        spectra::sampler::SampleConfig cfg{spectra::densities::Kind::GSE, 24, 0.5, 1500, 11,
                                           spectra::sampler::VarianceConvention::mehta_consistent};
        auto g = spectra::PolyQ::monomial(4, spectra::Rational(1));
        spectra::sampler::TraceStats sa{}, sb{};
        double ts = time_ms([&] { sa = spectra::sampler::empirical_trace_mean_serial(cfg, g); });
        double tp = time_ms([&] { sb = spectra::sampler::empirical_trace_mean(cfg, g); });
        bool same = sa.mean == sb.mean && sa.stderr_ == sb.stderr_;
        std::printf("%-34s %12.1f %12.1f %7.2fx%s\n", "trace sweep gse n=24 count=1500", ts, tp,
                    ts / tp, same ? "" : "  MISMATCH");
    }
    return 0;
}
