#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "spectra/cli.hpp"

namespace {

int run_cli(const std::vector<std::string>& args) {
    std::vector<const char*> argv{"ensemble_spectra"};
    for (const auto& a : args) argv.push_back(a.c_str());
    return spectra::cli::run(static_cast<int>(argv.size()), argv.data());
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

struct TempFile {
    std::string path;
    explicit TempFile(const std::string& name) : path("/tmp/spectra_test_" + name) {}
    ~TempFile() { std::remove(path.c_str()); }
};

} // namespace

TEST_CASE("density CSV has a header plus one row per grid point") {
    TempFile f("density.csv");
    int rc = run_cli({"density", "--kind", "gue", "--n", "5", "--sigma2", "0.2",
                      "--grid", "-3:3:601", "--deriv", "0", "--format", "csv",
                      "--output", f.path});
    CHECK(rc == 0);
    std::string text = slurp(f.path);
    size_t lines = 0;
    for (char c : text)
        if (c == '\n') ++lines;
    CHECK(lines == 602);
    CHECK(text.substr(0, 8) == "x,value\n");
}

TEST_CASE("moments subcommand reports exact rationals") {
    TempFile f("moments.json");
    int rc = run_cli({"moments", "--kind", "gue", "--n", "2", "--sigma2", "auto",
                      "--upto", "4", "--output", f.path});
    CHECK(rc == 0);
    auto j = nlohmann::json::parse(slurp(f.path));
    CHECK(j["tool_version"].is_string());
    CHECK(j["results"][0]["m4"] == "9/4");
    CHECK(j["results"][0]["m3"] == "0");
}

TEST_CASE("identical invocations produce byte-identical output") {
    TempFile f1("idem1.json"), f2("idem2.json");
    std::vector<std::string> args{"sample", "--kind", "goe", "--n", "3", "--sigma2", "0.5",
                                  "--count", "200", "--seed", "7", "--g", "0,0,1"};
    auto a1 = args, a2 = args;
    a1.insert(a1.end(), {"--output", f1.path});
    a2.insert(a2.end(), {"--output", f2.path});
    CHECK(run_cli(a1) == 0);
    CHECK(run_cli(a2) == 0);
    CHECK(slurp(f1.path) == slurp(f2.path));
    auto j = nlohmann::json::parse(slurp(f1.path));
    CHECK(j.contains("config"));
    CHECK(j["results"][0].contains("mean"));
    CHECK(j["results"][0].contains("stderr"));
}

TEST_CASE("usage errors exit with code 2") {
    CHECK(run_cli({"density", "--kind", "gue", "--n", "3", "--no-such-flag"}) == 2);
    CHECK(run_cli({"density", "--kind", "gue", "--n", "3", "--grid", "3:-3:10"}) == 2);
    CHECK(run_cli({"density", "--kind", "gue", "--n", "3", "--grid", "0:1:1"}) == 2);
    CHECK(run_cli({"nonsense"}) == 2);
}

TEST_CASE("expand subcommand emits a parseable report") {
    TempFile f("expand.json");
    int rc = run_cli({"expand", "--kind", "goe", "--n", "10", "--g", "0,0,1",
                      "--max-order", "3", "--trunc", "120", "--precision-bits", "192",
                      "--output", f.path});
    CHECK(rc == 0);
    auto j = nlohmann::json::parse(slurp(f.path));
    auto res = j["results"][0];
    CHECK(res["terms"].size() == 4);
    CHECK(res["partials"].size() == 4);
    CHECK(res.contains("reference"));
    CHECK(res.contains("singular_term"));
    double ref = res["reference"].get<double>();
    double last = res["partials"][3].get<double>();
    CHECK(std::fabs(last - ref) < 1e-3);
}

TEST_CASE("density JSON report round-trips") {
    TempFile f("density.json");
    int rc = run_cli({"density", "--kind", "gse", "--n", "3", "--sigma2", "auto",
                      "--grid", "-2:2:41", "--deriv", "1", "--format", "json",
                      "--output", f.path});
    CHECK(rc == 0);
    auto j = nlohmann::json::parse(slurp(f.path));
    CHECK(j["results"].size() == 41);
    CHECK(j["config"]["normalization"] == "mean_count");
    CHECK(j["config"]["deriv"] == 1);
}

TEST_CASE("precision override through the environment") {
    TempFile f("envbits.json");
    setenv("ENSEMBLE_SPECTRA_PRECISION_BITS", "320", 1);
    int rc = run_cli({"expand", "--kind", "goe", "--n", "10", "--g", "0,0,1",
                      "--max-order", "1", "--trunc", "120", "--output", f.path});
    unsetenv("ENSEMBLE_SPECTRA_PRECISION_BITS");
    CHECK(rc == 0);
    auto j = nlohmann::json::parse(slurp(f.path));
    CHECK(j["config"]["precision_bits"] == 320);
}
