#include "spectra/cli.hpp"

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "spectra/densities.hpp"
#include "spectra/expansion.hpp"
#include "spectra/mgf.hpp"
#include "spectra/sampler.hpp"
#include "spectra/verify.hpp"
#include "spectra/version.hpp"

namespace spectra::cli {

using json = nlohmann::ordered_json;
using densities::Kind;
using densities::Normalization;

namespace {

struct GridSpec {
    double start = -3.0, stop = 3.0;
    int points = 101;
};

GridSpec parse_grid(const std::string& s) {
    GridSpec g;
    std::istringstream is(s);
    char c1 = 0, c2 = 0;
    if (!(is >> g.start >> c1 >> g.stop >> c2 >> g.points) || c1 != ':' || c2 != ':')
        throw CLI::ValidationError("--grid", "expected start:stop:points");
    if (g.points < 2) throw CLI::ValidationError("--grid", "points >= 2 required");
    if (g.stop <= g.start) throw CLI::ValidationError("--grid", "stop > start required");
    return g;
}

double parse_sigma2(const std::string& s, int n) {
    if (s == "auto") return 1.0 / n;
    return parse_rational(s).get_d();
}

Rational parse_sigma2_exact(const std::string& s, int n) {
    if (s == "auto") return frac(1, n);
    return parse_rational(s);
}

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void emit(const std::string& path, const std::string& payload) {
    if (path.empty()) {
        std::cout << payload;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open output file: " + path);
    out << payload;
}

json report_skeleton(const json& config) {
    return json{{"tool_version", spectra::tool_version},
                {"config", config},
                {"results", json::array()},
                {"checks", json::array()}};
}

long env_precision_bits() {
    const char* v = std::getenv("ENSEMBLE_SPECTRA_PRECISION_BITS");
    if (!v) return 0;
    return std::strtol(v, nullptr, 10);
}

PolyQ parse_poly(const std::string& s) {
    // comma-separated coefficients, constant term first; entries rational
    std::vector<Rational> c;
    std::istringstream is(s);
    std::string tok;
    while (std::getline(is, tok, ',')) c.push_back(parse_rational(tok));
    return PolyQ(std::move(c));
}

json check_to_json(const verify::CheckResult& c) {
    json j{{"name", c.name},
           {"status", c.pass ? "pass" : "fail"},
           {"measured", c.measured},
           {"tolerance", c.tolerance}};
    if (!c.detail.empty()) j["detail"] = c.detail;
    return j;
}

} // namespace

int run(int argc, const char* const* argv) {
    CLI::App app{"exact Gaussian-ensemble spectral densities, moment generating "
                 "functions, 1/n^2 expansions and Monte Carlo cross-checks"};
    app.require_subcommand(1);
    app.set_version_flag("--version", spectra::tool_version);

    std::string kind_s = "gue", sigma2_s = "0.5", grid_s = "-3:3:101";
    std::string format = "csv", output, convention_s = "mass_consistent";
    std::string normalization_s = "mean_count", g_s = "0,0,1", mode_s;
    int n = 1, deriv = 0, upto = 4, max_order = 6, trunc_degree = 0;
    long precision_bits = env_precision_bits(), count = 1000;
    double s_value = 1.0;
    std::uint64_t seed = 1;

    auto add_common = [&](CLI::App* sub, bool with_sigma = true) {
        sub->add_option("--kind", kind_s, "ensemble: goe|gue|gse")->capture_default_str();
        sub->add_option("--n", n, "matrix order")->required()->check(CLI::PositiveNumber);
        if (with_sigma)
            sub->add_option("--sigma2", sigma2_s, "variance parameter or 'auto' (=1/n)")
                ->capture_default_str();
    };

    auto* dens = app.add_subcommand("density", "evaluate the mean spectral density on a grid");
    add_common(dens);
    dens->add_option("--grid", grid_s, "start:stop:points")->capture_default_str();
    dens->add_option("--deriv", deriv, "derivative order 0..3")->check(CLI::Range(0, 3));
    dens->add_option("--normalization", normalization_s, "mean_count|probability")
        ->check(CLI::IsMember({"mean_count", "probability"}));
    dens->add_option("--format", format, "csv|json")->check(CLI::IsMember({"csv", "json"}));
    dens->add_option("--output", output, "output file (default stdout)");

    auto* mg = app.add_subcommand("mgf", "moment generating function value / 1/n table");
    add_common(mg);
    mg->add_option("--s", s_value, "Laplace variable")->capture_default_str();
    mg->add_option("--convention", convention_s, "as_printed|mass_consistent")
        ->check(CLI::IsMember({"as_printed", "mass_consistent"}));
    mg->add_option("--normalization", normalization_s, "mean_count|probability")
        ->check(CLI::IsMember({"mean_count", "probability"}));
    mg->add_option("--expansion-orders", max_order,
                   "if > 0, also print 1/n-expansion partial sums (GUE: full "
                   "transform at sigma2=1/n; GSE: its 1F1 double-sum second term)");
    mg->add_option("--output", output, "output file (default stdout)");

    auto* ex = app.add_subcommand("expand", "GSE/GOE convergent expansion report");
    add_common(ex, false);
    ex->add_option("--g", g_s, "test polynomial coefficients c0,c1,... (rationals)")
        ->capture_default_str();
    ex->add_option("--max-order", max_order, "number of 1/n^2 orders J")->capture_default_str();
    ex->add_option("--trunc", trunc_degree, "series truncation degree D (0 = auto)");
    ex->add_option("--precision-bits", precision_bits, "working precision (0 = auto)");
    ex->add_option("--variant", mode_s, "calibrated|as_printed")
        ->check(CLI::IsMember({"calibrated", "as_printed"}));
    ex->add_option("--output", output, "output file (default stdout)");

    auto* mo = app.add_subcommand("moments", "exact spectral moments from the MGF");
    add_common(mo);
    std::string mo_normalization = "probability";
    mo->add_option("--upto", upto, "highest moment (even)")->capture_default_str();
    mo->add_option("--convention", convention_s, "as_printed|mass_consistent")
        ->check(CLI::IsMember({"as_printed", "mass_consistent"}));
    mo->add_option("--normalization", mo_normalization, "mean_count|probability")
        ->check(CLI::IsMember({"mean_count", "probability"}))
        ->capture_default_str();
    mo->add_option("--output", output, "output file (default stdout)");

    auto* sa = app.add_subcommand("sample", "Monte Carlo trace statistics");
    add_common(sa);
    sa->add_option("--g", g_s, "test polynomial coefficients c0,c1,...")->capture_default_str();
    sa->add_option("--count", count, "number of sampled matrices")->check(CLI::PositiveNumber);
    sa->add_option("--seed", seed, "stream seed")->capture_default_str();
    sa->add_option("--convention", mode_s, "paper_definition|mehta_consistent")
        ->check(CLI::IsMember({"paper_definition", "mehta_consistent"}));
    sa->add_option("--output", output, "output file (default stdout)");

    auto* ve = app.add_subcommand("verify", "run the verification suite");
    bool fast = false, full = false;
    ve->add_flag("--fast", fast, "deterministic checks only (default)");
    ve->add_flag("--full", full, "include Monte Carlo checks");
    ve->add_option("--seed", seed, "Monte Carlo seed")->capture_default_str();
    ve->add_option("--output", output, "output file (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return 0; // --help / --version
        std::cerr << e.what() << "\n";
        return 2;
    }

    try {
        if (*dens) {
            GridSpec grid = parse_grid(grid_s);
            densities::EnsembleSpec spec{densities::kind_from_name(kind_s), n,
                                         parse_sigma2(sigma2_s, n),
                                         normalization_s == "probability"
                                             ? Normalization::probability
                                             : Normalization::mean_count};
            auto vals = densities::density_grid(spec, grid.start, grid.stop, grid.points, deriv);
            if (format == "csv") {
                std::ostringstream os;
                os << "x,value\n";
                for (int i = 0; i < grid.points; ++i) {
                    double x = grid.start + (grid.stop - grid.start) * i / (grid.points - 1);
                    os << fmt(x) << "," << fmt(vals[i]) << "\n";
                }
                emit(output, os.str());
            } else {
                json rep = report_skeleton(
                    json{{"subcommand", "density"}, {"kind", kind_s}, {"n", n},
                         {"sigma2", parse_sigma2(sigma2_s, n)},
                         {"deriv", deriv}, {"normalization", normalization_s},
                         {"grid", grid_s}});
                for (int i = 0; i < grid.points; ++i) {
                    double x = grid.start + (grid.stop - grid.start) * i / (grid.points - 1);
                    rep["results"].push_back(json{{"x", x}, {"value", vals[i]}});
                }
                emit(output, rep.dump(2) + "\n");
            }
            return 0;
        }
        if (*mg) {
            Kind kind = densities::kind_from_name(kind_s);
            double s2 = parse_sigma2(sigma2_s, n);
            auto conv = convention_s == "as_printed" ? mgf::MGFConvention::as_printed
                                                     : mgf::MGFConvention::mass_consistent;
            auto norm = normalization_s == "probability" ? Normalization::probability
                                                         : Normalization::mean_count;
            json rep = report_skeleton(
                json{{"subcommand", "mgf"}, {"kind", kind_s}, {"n", n},
                     {"sigma2", s2}, {"s", s_value}, {"convention", convention_s},
                     {"normalization", normalization_s}});
            double v = mgf::mgf_eval(kind, n, s2, s_value, conv, norm);
            rep["results"].push_back(json{{"s", s_value}, {"value", v}});
            if (max_order > 0 && kind != Kind::GOE) {
                auto partials = mgf::mgf_expansion_1n(kind, s_value, n, max_order);
                json tab = json::array();
                for (size_t k = 0; k + 1 < partials.size(); ++k)
                    tab.push_back(json{{"order", k}, {"partial", partials[k]}});
                tab.push_back(json{{"order", "full"}, {"partial", partials.back()}});
                rep["results"].push_back(json{{"expansion_1n", tab}});
            }
            emit(output, rep.dump(2) + "\n");
            return 0;
        }
        if (*ex) {
            Kind kind = densities::kind_from_name(kind_s);
            PolyQ g = parse_poly(g_s);
            expansion::TruncParams tp;
            tp.trunc_degree = trunc_degree;
            tp.precision_bits = precision_bits;
            auto variant = mode_s == "as_printed" ? expansion::ExpansionVariant::as_printed
                                                  : expansion::ExpansionVariant::calibrated;
            auto r = expansion::gse_goe_expand(g, n, kind, max_order, tp, variant);
            json rep = report_skeleton(
                json{{"subcommand", "expand"}, {"kind", kind_s}, {"n", n},
                     {"g", g_s}, {"max_order", max_order},
                     {"trunc_degree", r.trunc_degree},
                     {"precision_bits", r.precision_bits},
                     {"variant", mode_s.empty() ? "calibrated" : mode_s}});
            json terms = json::array(), partials = json::array();
            for (size_t j = 0; j < r.terms.size(); ++j) {
                terms.push_back(r.terms[j]);
                partials.push_back(r.partials[j]);
            }
            json res{{"terms", terms},
                     {"partials", partials},
                     {"singular_term", r.singular},
                     {"divergence_flag", r.divergence_flag}};
            if (r.reference) res["reference"] = *r.reference;
            if (!r.note.empty()) res["note"] = r.note;
            rep["results"].push_back(res);
            emit(output, rep.dump(2) + "\n");
            return 0;
        }
        if (*mo) {
            Kind kind = densities::kind_from_name(kind_s);
            Rational s2 = parse_sigma2_exact(sigma2_s, n);
            auto conv = convention_s == "as_printed" ? mgf::MGFConvention::as_printed
                                                     : mgf::MGFConvention::mass_consistent;
            auto norm = mo_normalization == "probability" ? Normalization::probability
                                                          : Normalization::mean_count;
            auto mom = mgf::moments_from_mgf(kind, n, s2, upto, conv, norm);
            json rep = report_skeleton(
                json{{"subcommand", "moments"}, {"kind", kind_s}, {"n", n},
                     {"sigma2", rational_str(s2)}, {"upto", upto},
                     {"convention", convention_s},
                     {"normalization", mo_normalization}});
            json res;
            for (int k = 0; k <= upto; ++k) res["m" + std::to_string(k)] = rational_str(mom[k]);
            rep["results"].push_back(res);
            emit(output, rep.dump(2) + "\n");
            return 0;
        }
        if (*sa) {
            sampler::SampleConfig cfg;
            cfg.kind = densities::kind_from_name(kind_s);
            cfg.n = n;
            cfg.sigma2 = parse_sigma2(sigma2_s, n);
            cfg.count = count;
            cfg.seed = seed;
            cfg.convention = mode_s == "paper_definition"
                                 ? sampler::VarianceConvention::paper_definition
                                 : sampler::VarianceConvention::mehta_consistent;
            auto st = sampler::empirical_trace_mean(cfg, parse_poly(g_s));
            json rep = report_skeleton(
                json{{"subcommand", "sample"}, {"kind", kind_s}, {"n", n},
                     {"sigma2", cfg.sigma2}, {"count", count}, {"seed", seed},
                     {"g", g_s},
                     {"convention", mode_s.empty() ? "mehta_consistent" : mode_s}});
            rep["results"].push_back(json{{"mean", st.mean}, {"stderr", st.stderr_},
                                          {"count", st.count}});
            emit(output, rep.dump(2) + "\n");
            return 0;
        }
        if (*ve) {
            auto checks = full ? verify::run_full(seed) : verify::run_fast();
            json rep = report_skeleton(
                json{{"subcommand", "verify"},
                     {"mode", full ? "full" : "fast"}, {"seed", seed}});
            bool all = true;
            for (const auto& c : checks) {
                rep["checks"].push_back(check_to_json(c));
                all = all && c.pass;
            }
            rep["results"].push_back(json{{"all_pass", all}});
            emit(output, rep.dump(2) + "\n");
            return all ? 0 : 1;
        }
    } catch (const CLI::Error& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}

} // namespace spectra::cli
