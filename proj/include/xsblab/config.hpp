#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "xsblab/field.hpp"
#include "xsblab/manifold.hpp"

namespace xsblab {

// Seeded random initial data: independent complex Gaussian coefficients
// rescaled so the Sobolev norm of index sobolev_s equals norm.  The draw
// seed is derive_seed({master seed, seed_offset}).
struct InitialDataParams {
    double norm = 0.1;
    double sobolev_s = 1.0;
    std::uint64_t seed_offset = 1;
};

struct EvolveConfig {
    cplx alpha{0.0, 0.0};
    cplx beta{0.0, 0.0};
    cplx gamma{0.0, 0.0};
    double t_final = 0.5;
    double dt = 1e-3;
    InitialDataParams init;
    int save_every = 0; // rows kept in the trajectory tables; 0 = auto (~100)
};

struct PicardConfig {
    cplx alpha{0.0, 0.0};
    cplx beta{0.0, 0.0};
    cplx gamma{0.0, 0.0};
    double horizon = 0.05;
    double dt = 5e-4;
    int n_iter = 14;
    double sobolev_s = 1.0;
    double stop_tol = 1e-13;
    InitialDataParams init;
};

// Parameters for the band-pair sweep kinds
// (bilinear | gradient-bilinear | xsb-bilinear).
struct SweepVerifyConfig {
    std::vector<double> levels{4.0, 8.0, 16.0, 32.0, 64.0};
    int trials = 8;
    double s = 0.75;
    int n_t = 64;
    double b = 0.55;
    double t_win = 4.0;
};

struct L4VerifyConfig {
    double level = 4.0;
    int trials = 8;
    int n_t = 64;
    double tol = 1e-10; // hard bound on the internal consistency defect
};

struct DyadicVerifyConfig {
    double theta = 0.0; // required
    double gamma = 0.0; // required
    std::vector<double> c, d;
};

struct InterpolationVerifyConfig {
    double s_prime = 0.0; // required, in (2/3, 2)
};

struct GreenVerifyConfig {
    std::vector<std::array<double, 3>> triples; // empty = all triples over {2,4,8}
    double t_win = 0.5;
    int n_t = 16;
    double tol = 1e-8; // hard bound on each residual
    std::uint64_t seed_offset = 3;
};

struct DualityVerifyConfig {
    int trials = 10;
    double t_win = 4.0;
    int n_t = 64;
    double tol = 1e-10; // hard bound on each pairing residual
    std::uint64_t seed_offset = 4;
};

struct EmbeddingVerifyConfig {
    double level = 2.0;
    double t_win = 4.0;
    int n_t = 256;
    double flat = 2.0; // cutoff plateau length
    double ramp = 0.5; // cutoff ramp width
    std::uint64_t seed_offset = 5;
};

struct LinearEstimateVerifyConfig {
    double level = 2.0;
    double b = 0.55;
    double s = 0.0;
    std::vector<double> horizons{0.0625, 0.125, 0.25, 0.5};
    double t_win = 4.0;
    int n_t = 1024;
    double ramp_fraction = 0.5;
    std::uint64_t seed_offset = 6;
};

struct VerifyConfig {
    std::string kind; // bilinear | gradient-bilinear | xsb-bilinear | l4 |
                      // dyadic | interpolation | green | duality |
                      // embeddings | linear-estimates
    SweepVerifyConfig sweep;
    L4VerifyConfig l4;
    DyadicVerifyConfig dyadic;
    InterpolationVerifyConfig interpolation;
    GreenVerifyConfig green;
    DualityVerifyConfig duality;
    EmbeddingVerifyConfig embedding;
    LinearEstimateVerifyConfig linear;
};

// One run = one manifold + one subcommand section.  Sections for several
// subcommands may coexist in a config file; the runner reads the one that
// matches the invoked subcommand.
struct RunConfig {
    ManifoldSpec manifold;
    double mu_max = 0.0;    // required
    std::uint64_t seed = 1;
    std::string output_dir; // optional; resolved by the runner
    bool has_spectrum_section = false;
    std::optional<EvolveConfig> evolve;
    std::optional<PicardConfig> picard;
    std::optional<VerifyConfig> verify;
};

// Strict parse of the JSON config text: unknown keys anywhere are rejected,
// all real parameters are read as 64-bit doubles, complex parameters accept
// a number or an [re, im] pair.  Throws ConfigError naming the bad key.
RunConfig parse_run_config(const std::string& json_text);

// read_text_file + parse_run_config.
RunConfig load_run_config(const std::string& path);

} // namespace xsblab
