// End-to-end runner tests: in-process command-line invocations against
// temporary directories, checking output files, manifest bookkeeping,
// bit-for-bit reproducibility, and the exit-code contract
// (0 ok, 2 validation, 3 hard assertion, 4 blow-up).
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "json.hpp"
#include "xsblab/errors.hpp"
#include "xsblab/evolve.hpp"
#include "xsblab/io.hpp"
#include "xsblab/manifold.hpp"
#include "xsblab/rng.hpp"
#include "xsblab/runner.hpp"
#include "xsblab/spectral_ops.hpp"

using namespace xsblab;
namespace fs = std::filesystem;
using nlohmann::json;

namespace {

// Fresh scratch directory per call, under the system temp root.
fs::path scratch(const std::string& tag) {
    static int counter = 0;
    fs::path p = fs::temp_directory_path() / ("xsblab_cli_" + tag + "_" +
                                              std::to_string(++counter));
    fs::remove_all(p);
    fs::create_directories(p);
    return p;
}

void write_file(const fs::path& p, const std::string& text) {
    std::ofstream out(p, std::ios::binary | std::ios::trunc);
    REQUIRE(bool(out));
    out << text;
}

int run_cli(const std::vector<std::string>& args) {
    std::vector<const char*> argv;
    argv.push_back("xsblab");
    for (const auto& a : args) argv.push_back(a.c_str());
    return cli_main(int(argv.size()), argv.data());
}

json load_manifest(const fs::path& dir) {
    return json::parse(read_text_file((dir / "manifest.json").string()));
}

std::vector<std::vector<std::string>> read_csv(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    REQUIRE(bool(in));
    std::vector<std::vector<std::string>> rows;
    std::string line;
    while (std::getline(in, line)) {
        std::vector<std::string> cells;
        std::stringstream ss(line);
        std::string cell_text;
        while (std::getline(ss, cell_text, ',')) cells.push_back(cell_text);
        rows.push_back(cells);
    }
    return rows;
}

const char* kRectManifold =
    R"("manifold": {"domain": "rectangle", "side_x": 3.141592653589793,
                    "side_y": 3.141592653589793, "boundary": "dirichlet"})";

std::string rect_config(const std::string& extra_sections, double mu_max = 8.0,
                        std::uint64_t seed = 7) {
    std::ostringstream ss;
    ss << "{" << kRectManifold << ", \"mu_max\": " << mu_max << ", \"seed\": " << seed;
    if (!extra_sections.empty()) ss << ", " << extra_sections;
    ss << "}";
    return ss.str();
}

// Manifest text with the informational wall-time line removed, for
// reproducibility comparisons.
std::string manifest_without_walltime(const fs::path& dir) {
    std::istringstream in(read_text_file((dir / "manifest.json").string()));
    std::string line, out;
    while (std::getline(in, line)) {
        if (line.find("wall_time_seconds") != std::string::npos) continue;
        out += line;
        out += '\n';
    }
    return out;
}

// The orphan rule: the output directory holds exactly the files the manifest
// lists, plus the manifest itself.
void check_no_orphans(const fs::path& dir) {
    json m = load_manifest(dir);
    std::set<std::string> expected{"manifest.json"};
    for (const auto& f : m.at("outputs")) expected.insert(f.get<std::string>());
    std::set<std::string> actual;
    for (const auto& e : fs::directory_iterator(dir))
        actual.insert(e.path().filename().string());
    CHECK(actual == expected);
}

} // namespace

TEST_CASE("spectrum: eigenvalue table, diagnostics, reproducibility") {
    fs::path dir = scratch("spec");
    write_file(dir / "cfg.json", rect_config("\"spectrum\": {}"));

    fs::path out1 = dir / "run1";
    REQUIRE(run_cli({"spectrum", "--config", (dir / "cfg.json").string(), "--out",
                     out1.string()}) == 0);
    check_no_orphans(out1);

    auto rows = read_csv(out1 / "eigenvalues.csv");
    REQUIRE(rows.size() >= 5);
    CHECK(rows[0] == std::vector<std::string>{"index", "label_a", "label_b", "parity", "mu",
                                              "lambda"});
    // pi x pi box: lambda = a^2 + b^2 starts 2, 5, 5, 8.
    CHECK(std::stod(rows[1][5]) == doctest::Approx(2.0).epsilon(1e-14));
    CHECK(std::stod(rows[2][5]) == doctest::Approx(5.0).epsilon(1e-14));
    CHECK(std::stod(rows[3][5]) == doctest::Approx(5.0).epsilon(1e-14));
    CHECK(std::stod(rows[4][5]) == doctest::Approx(8.0).epsilon(1e-14));

    json m = load_manifest(out1);
    CHECK(m.at("results").at("orthonormality_residual").get<double>() <= 1e-10);
    CHECK(m.at("results").at("eigen_residual").get<double>() <= 1e-10);
    CHECK(m.at("subcommand") == "spectrum");
    CHECK(m.at("exit_code") == 0);
    CHECK(m.at("config").at("seed") == 7);

    // Re-running with the same config and seed reproduces every output
    // byte-for-byte (the wall-time line aside).
    fs::path out2 = dir / "run2";
    REQUIRE(run_cli({"spectrum", "--config", (dir / "cfg.json").string(), "--out",
                     out2.string()}) == 0);
    CHECK(read_text_file((out1 / "eigenvalues.csv").string()) ==
          read_text_file((out2 / "eigenvalues.csv").string()));
    std::string m1 = manifest_without_walltime(out1);
    std::string m2 = manifest_without_walltime(out2);
    // Output directories differ by name, so normalize that one echo field.
    const auto scrub = [](std::string s, const std::string& from) {
        std::size_t pos;
        while ((pos = s.find(from)) != std::string::npos) s.erase(pos, from.size());
        return s;
    };
    CHECK(scrub(m1, out1.string()) == scrub(m2, out2.string()));
}

TEST_CASE("spectrum: disk ground eigenvalue matches the Bessel root") {
    fs::path dir = scratch("disk");
    write_file(dir / "cfg.json",
               R"({"manifold": {"domain": "disk", "boundary": "dirichlet"},
                   "mu_max": 8.0, "seed": 1, "spectrum": {}})");
    fs::path out = dir / "out";
    REQUIRE(run_cli({"spectrum", "--config", (dir / "cfg.json").string(), "--out",
                     out.string()}) == 0);
    auto rows = read_csv(out / "eigenvalues.csv");
    REQUIRE(rows.size() >= 2);
    CHECK(std::stod(rows[1][5]) == doctest::Approx(5.783185962947).epsilon(1e-9));
}

TEST_CASE("evolve: conserved mass under the symmetric parameter condition") {
    fs::path dir = scratch("evolve");
    write_file(dir / "cfg.json",
               rect_config(R"("evolve": {"alpha": 0.5, "beta": 0, "gamma": 0.5,
                                         "t_final": 0.5, "dt": 0.001})"));
    fs::path out = dir / "out";
    REQUIRE(run_cli({"evolve", "--config", (dir / "cfg.json").string(), "--out",
                     out.string()}) == 0);
    check_no_orphans(out);

    json m = load_manifest(out);
    CHECK(m.at("results").at("mass_drift_rel_max").get<double>() <= 1e-8);
    CHECK(m.at("results").at("blow_up") == false);
    CHECK(m.at("results").at("n_steps") == 500);

    // The mass-drift column never exceeds the manifest maximum.
    auto rows = read_csv(out / "series.csv");
    REQUIRE(rows.size() >= 3);
    CHECK(rows[0][3] == "mass_drift_rel");
    for (std::size_t i = 1; i < rows.size(); ++i)
        CHECK(std::stod(rows[i][3]) <= 1e-8);
}

TEST_CASE("evolve: zero nonlinearity reproduces the linear flow") {
    fs::path dir = scratch("linear");
    write_file(dir / "cfg.json",
               rect_config(R"("evolve": {"t_final": 0.25, "dt": 0.00125,
                                         "init": {"norm": 0.3, "sobolev_s": 1.0,
                                                  "seed_offset": 9}})"));
    fs::path out = dir / "out";
    REQUIRE(run_cli({"evolve", "--config", (dir / "cfg.json").string(), "--out",
                     out.string()}) == 0);

    // Reconstruct the documented initial-data draw and compare the final
    // saved state against the exact flow.
    auto basis = build_basis(
        ManifoldSpec::rectangle(3.141592653589793, 3.141592653589793, Boundary::Dirichlet),
        8.0);
    Rng rng(derive_seed({7, 9}));
    SpectralField u0(basis);
    for (auto& c : u0.coeffs) c = rng.normal_complex();
    const double scale = 0.3 / sobolev_norm(u0, 1.0);
    for (auto& c : u0.coeffs) c *= scale;
    SpectralField expect = linear_flow(u0, 0.25);

    auto rows = read_csv(out / "states.csv");
    REQUIRE(rows.size() > 1);
    const std::string last_step = rows.back()[0];
    CHECK(last_step == "200");
    double worst = 0.0;
    for (std::size_t i = 1; i < rows.size(); ++i) {
        if (rows[i][0] != last_step) continue;
        const int k = std::stoi(rows[i][1]);
        const cplx got{std::stod(rows[i][2]), std::stod(rows[i][3])};
        worst = std::max(worst, std::abs(got - expect.coeffs[std::size_t(k)]));
    }
    CHECK(worst <= 1e-12);
}

TEST_CASE("evolve: blow-up exits 4 and is recorded in the manifest") {
    fs::path dir = scratch("blow");
    write_file(dir / "cfg.json",
               rect_config(R"("evolve": {"alpha": 1.0, "t_final": 0.01, "dt": 0.0001,
                                         "init": {"norm": 1e5, "sobolev_s": 0.0}})"));
    fs::path out = dir / "out";
    CHECK(run_cli({"evolve", "--config", (dir / "cfg.json").string(), "--out",
                   out.string()}) == 4);
    json m = load_manifest(out);
    CHECK(m.at("results").at("blow_up").at("norm").get<double>() > 1e6);
    CHECK(m.at("results").at("blow_up").at("step").get<int>() >= 1);
    CHECK(m.at("exit_code") == 4);
    check_no_orphans(out); // partial run still leaves a consistent directory
}

TEST_CASE("picard: contraction factor below one half on small data") {
    fs::path dir = scratch("picard");
    write_file(dir / "cfg.json",
               rect_config(R"("picard": {"alpha": 1.0, "gamma": 1.0, "horizon": 0.05,
                                         "dt": 0.0005})"));
    fs::path out = dir / "out";
    REQUIRE(run_cli({"picard", "--config", (dir / "cfg.json").string(), "--out",
                     out.string()}) == 0);
    check_no_orphans(out);

    json m = load_manifest(out);
    CHECK(m.at("results").at("kappa").get<double>() < 0.5);
    CHECK(m.at("results").at("contracting") == true);

    // Successive fixed-point gaps decrease from the first iteration on.
    auto rows = read_csv(out / "contraction.csv");
    REQUIRE(rows.size() >= 4);
    for (std::size_t i = 3; i < rows.size(); ++i)
        CHECK(std::stod(rows[i][2]) < std::stod(rows[i - 1][2]));
}

TEST_CASE("verify: sweep kinds export the sample table with the fixed header") {
    fs::path dir = scratch("sweep");
    write_file(dir / "cfg.json",
               rect_config(R"("verify": {"kind": "bilinear", "levels": [2, 4, 8],
                                         "trials": 4})",
                           16.0));
    fs::path out = dir / "out";
    REQUIRE(run_cli({"verify", "--config", (dir / "cfg.json").string(), "--out",
                     out.string()}) == 0);
    check_no_orphans(out);

    auto rows = read_csv(out / "samples.csv");
    CHECK(rows[0] == std::vector<std::string>{"gamma", "lambda", "trial", "lhs", "rhs_factor",
                                              "ratio", "seed"});
    CHECK(rows.size() == 1 + 24); // triangle over 3 levels, 4 trials

    json m = load_manifest(out);
    CHECK(m.at("results").at("fit").at("n_samples") == 24);
    CHECK(m.at("results").at("fit").at("s_hat").get<double>() <= 2.0 / 3.0 + 0.1);
    CHECK(m.at("hard_assertions").at("checked") == 0);

    // Master-seed override changes the samples and is echoed back.
    fs::path out2 = dir / "out2";
    REQUIRE(run_cli({"verify", "--config", (dir / "cfg.json").string(), "--out",
                     out2.string(), "--seed", "99"}) == 0);
    json m2 = load_manifest(out2);
    CHECK(m2.at("config").at("seed") == 99);
    CHECK(read_text_file((out / "samples.csv").string()) !=
          read_text_file((out2 / "samples.csv").string()));
}

TEST_CASE("verify: identity kinds pass cleanly and fail loudly") {
    fs::path dir = scratch("verify");

    write_file(dir / "green.json",
               rect_config(R"("verify": {"kind": "green", "triples": [[2,2,2],[2,4,4]]})",
                           16.0));
    fs::path g1 = dir / "g1";
    REQUIRE(run_cli({"verify", "--config", (dir / "green.json").string(), "--out",
                     g1.string()}) == 0);
    json mg = load_manifest(g1);
    CHECK(mg.at("results").at("max_residual").get<double>() <= 1e-8);
    CHECK(mg.at("hard_assertions").at("checked") == 2);
    CHECK(mg.at("hard_assertions").at("failed") == 0);

    // An unreachable tolerance turns the same run into exit code 3, with the
    // manifest still written and accounting for the failures.
    write_file(dir / "green0.json",
               rect_config(R"("verify": {"kind": "green", "triples": [[2,2,2],[2,4,4]],
                                         "tol": 0.0})",
                           16.0));
    fs::path g2 = dir / "g2";
    CHECK(run_cli({"verify", "--config", (dir / "green0.json").string(), "--out",
                   g2.string()}) == 3);
    json mg2 = load_manifest(g2);
    CHECK(mg2.at("hard_assertions").at("failed") == 2);
    CHECK(mg2.at("exit_code") == 3);

    write_file(dir / "dual.json",
               rect_config(R"("verify": {"kind": "duality", "trials": 10, "n_t": 32})"));
    fs::path d1 = dir / "d1";
    REQUIRE(run_cli({"verify", "--config", (dir / "dual.json").string(), "--out",
                     d1.string()}) == 0);
    json md = load_manifest(d1);
    CHECK(md.at("results").at("max_residual").get<double>() <= 1e-10);
    CHECK(md.at("hard_assertions").at("checked") == 10);

    write_file(dir / "interp.json",
               rect_config(R"("verify": {"kind": "interpolation", "s_prime": 1.0})"));
    fs::path i1 = dir / "i1";
    REQUIRE(run_cli({"verify", "--config", (dir / "interp.json").string(), "--out",
                     i1.string()}) == 0);
    json mi = load_manifest(i1);
    CHECK(mi.at("results").at("b").get<double>() ==
          doctest::Approx(0.5 + 1.0 / 138.0).epsilon(1e-14));
    CHECK(mi.at("results").at("verified") == true);

    write_file(dir / "dyadic.json",
               rect_config(R"("verify": {"kind": "dyadic", "theta": 1.0, "gamma": 1.0,
                                         "c": [1,1,1], "d": [1,1,1]})"));
    fs::path y1 = dir / "y1";
    REQUIRE(run_cli({"verify", "--config", (dir / "dyadic.json").string(), "--out",
                     y1.string()}) == 0);
    CHECK(load_manifest(y1).at("results").at("lhs").get<double>() ==
          doctest::Approx(4.25).epsilon(1e-14));
}

TEST_CASE("verify: reproducible reruns for a seeded sweep") {
    fs::path dir = scratch("repro");
    write_file(dir / "cfg.json",
               rect_config(R"("verify": {"kind": "xsb-bilinear", "levels": [2, 4],
                                         "trials": 4})",
                           16.0));
    fs::path a = dir / "a", b = dir / "b";
    REQUIRE(run_cli({"verify", "--config", (dir / "cfg.json").string(), "--out",
                     a.string()}) == 0);
    REQUIRE(run_cli({"verify", "--config", (dir / "cfg.json").string(), "--out",
                     b.string()}) == 0);
    CHECK(read_text_file((a / "samples.csv").string()) ==
          read_text_file((b / "samples.csv").string()));
}

TEST_CASE("output directory precedence: flag, environment, config, default") {
    fs::path dir = scratch("outdir");
    const std::string cfg_dir = (dir / "from_config").string();
    write_file(dir / "cfg.json",
               rect_config("\"spectrum\": {}, \"output_dir\": \"" + cfg_dir + "\""));

    // Config value used when nothing else is given.
    ::unsetenv("XSBLAB_OUT");
    REQUIRE(run_cli({"spectrum", "--config", (dir / "cfg.json").string()}) == 0);
    CHECK(fs::exists(fs::path(cfg_dir) / "manifest.json"));

    // Environment beats the config...
    const std::string env_dir = (dir / "from_env").string();
    ::setenv("XSBLAB_OUT", env_dir.c_str(), 1);
    REQUIRE(run_cli({"spectrum", "--config", (dir / "cfg.json").string()}) == 0);
    CHECK(fs::exists(fs::path(env_dir) / "manifest.json"));

    // ...and the flag beats the environment.
    const std::string flag_dir = (dir / "from_flag").string();
    REQUIRE(run_cli({"spectrum", "--config", (dir / "cfg.json").string(), "--out",
                     flag_dir}) == 0);
    CHECK(fs::exists(fs::path(flag_dir) / "manifest.json"));
    CHECK(!fs::exists(fs::path(env_dir) / "eigenvalues.csv.tmp"));
    ::unsetenv("XSBLAB_OUT");
}

TEST_CASE("exit code 2 covers every configuration failure") {
    fs::path dir = scratch("errors");
    fs::path out = dir / "out";

    // Unknown top-level key.
    write_file(dir / "k1.json", rect_config("\"spectrum\": {}, \"typo_key\": 1"));
    CHECK(run_cli({"spectrum", "--config", (dir / "k1.json").string(), "--out",
                   out.string()}) == 2);

    // Unknown key inside a section.
    write_file(dir / "k2.json", rect_config(R"("evolve": {"dtt": 0.001})"));
    CHECK(run_cli({"evolve", "--config", (dir / "k2.json").string(), "--out",
                   out.string()}) == 2);

    // Step size that does not divide the time span.
    write_file(dir / "k3.json", rect_config(R"("evolve": {"t_final": 0.05, "dt": 0.0003})"));
    CHECK(run_cli({"evolve", "--config", (dir / "k3.json").string(), "--out",
                   out.string()}) == 2);

    // Missing section for the invoked subcommand.
    write_file(dir / "k4.json", rect_config(""));
    CHECK(run_cli({"picard", "--config", (dir / "k4.json").string(), "--out",
                   out.string()}) == 2);

    // Unknown verify kind.
    write_file(dir / "k5.json", rect_config(R"("verify": {"kind": "nonsense"})"));
    CHECK(run_cli({"verify", "--config", (dir / "k5.json").string(), "--out",
                   out.string()}) == 2);

    // Sweep preconditions surface as validation errors.
    write_file(dir / "k6.json",
               rect_config(R"("verify": {"kind": "bilinear", "levels": [4], "trials": 4})",
                           16.0));
    CHECK(run_cli({"verify", "--config", (dir / "k6.json").string(), "--out",
                   out.string()}) == 2);

    // Missing config file, malformed JSON, missing manifold.
    CHECK(run_cli({"spectrum", "--config", (dir / "absent.json").string()}) == 2);
    write_file(dir / "k7.json", "{not json");
    CHECK(run_cli({"spectrum", "--config", (dir / "k7.json").string()}) == 2);
    write_file(dir / "k8.json", R"({"mu_max": 8.0})");
    CHECK(run_cli({"spectrum", "--config", (dir / "k8.json").string()}) == 2);

    // No subcommand at all.
    CHECK(run_cli({}) == 2);
}
