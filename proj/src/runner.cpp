#include "xsblab/runner.hpp"

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "CLI11.hpp"
#include "json.hpp"
#include "xsblab/config.hpp"
#include "xsblab/errors.hpp"
#include "xsblab/estimates.hpp"
#include "xsblab/evolve.hpp"
#include "xsblab/io.hpp"
#include "xsblab/rng.hpp"
#include "xsblab/spacetime.hpp"
#include "xsblab/spectral_ops.hpp"
#include "xsblab/version.hpp"

namespace xsblab {

namespace {

using ordered_json = nlohmann::ordered_json;

struct RunContext {
    RunConfig cfg;
    std::string subcommand;
    std::string out_dir;
    ordered_json results = ordered_json::object();
    std::vector<std::string> outputs; // files written, relative to out_dir
    int hard_checked = 0;
    int hard_failed = 0;
};

ordered_json complex_json(cplx z) { return ordered_json::array({z.real(), z.imag()}); }

void write_output(RunContext& ctx, const std::string& name, const std::string& content) {
    atomic_write_text((std::filesystem::path(ctx.out_dir) / name).string(), content);
    ctx.outputs.push_back(name);
}

// Fully-resolved configuration echo: every default materialized, the seed
// and output directory as actually used, and only the active subcommand's
// section included.
ordered_json echo_config(const RunContext& ctx) {
    const RunConfig& c = ctx.cfg;
    ordered_json m = ordered_json::object();
    ordered_json man = ordered_json::object();
    man["domain"] = c.manifold.domain == Domain::Rectangle ? "rectangle" : "disk";
    if (c.manifold.domain == Domain::Rectangle) {
        man["side_x"] = c.manifold.side_x;
        man["side_y"] = c.manifold.side_y;
    }
    man["boundary"] = c.manifold.boundary == Boundary::Dirichlet ? "dirichlet" : "neumann";
    m["manifold"] = man;
    m["mu_max"] = c.mu_max;
    m["seed"] = c.seed;
    m["output_dir"] = ctx.out_dir;

    auto init_json = [](const InitialDataParams& p) {
        ordered_json j = ordered_json::object();
        j["norm"] = p.norm;
        j["sobolev_s"] = p.sobolev_s;
        j["seed_offset"] = p.seed_offset;
        return j;
    };

    if (ctx.subcommand == "spectrum") {
        m["spectrum"] = ordered_json::object();
    } else if (ctx.subcommand == "evolve") {
        const EvolveConfig& e = *c.evolve;
        ordered_json j = ordered_json::object();
        j["alpha"] = complex_json(e.alpha);
        j["beta"] = complex_json(e.beta);
        j["gamma"] = complex_json(e.gamma);
        j["t_final"] = e.t_final;
        j["dt"] = e.dt;
        j["init"] = init_json(e.init);
        j["save_every"] = e.save_every;
        m["evolve"] = j;
    } else if (ctx.subcommand == "picard") {
        const PicardConfig& p = *c.picard;
        ordered_json j = ordered_json::object();
        j["alpha"] = complex_json(p.alpha);
        j["beta"] = complex_json(p.beta);
        j["gamma"] = complex_json(p.gamma);
        j["horizon"] = p.horizon;
        j["dt"] = p.dt;
        j["n_iter"] = p.n_iter;
        j["sobolev_s"] = p.sobolev_s;
        j["stop_tol"] = p.stop_tol;
        j["init"] = init_json(p.init);
        m["picard"] = j;
    } else if (ctx.subcommand == "verify") {
        const VerifyConfig& v = *c.verify;
        ordered_json j = ordered_json::object();
        j["kind"] = v.kind;
        if (v.kind == "bilinear" || v.kind == "gradient-bilinear" || v.kind == "xsb-bilinear") {
            j["levels"] = v.sweep.levels;
            j["trials"] = v.sweep.trials;
            j["s"] = v.sweep.s;
            j["n_t"] = v.sweep.n_t;
            j["b"] = v.sweep.b;
            j["t_win"] = v.sweep.t_win;
        } else if (v.kind == "l4") {
            j["level"] = v.l4.level;
            j["trials"] = v.l4.trials;
            j["n_t"] = v.l4.n_t;
            j["tol"] = v.l4.tol;
        } else if (v.kind == "dyadic") {
            j["theta"] = v.dyadic.theta;
            j["gamma"] = v.dyadic.gamma;
            j["c"] = v.dyadic.c;
            j["d"] = v.dyadic.d;
        } else if (v.kind == "interpolation") {
            j["s_prime"] = v.interpolation.s_prime;
        } else if (v.kind == "green") {
            ordered_json t = ordered_json::array();
            for (const auto& tr : v.green.triples)
                t.push_back(ordered_json::array({tr[0], tr[1], tr[2]}));
            j["triples"] = t;
            j["t_win"] = v.green.t_win;
            j["n_t"] = v.green.n_t;
            j["tol"] = v.green.tol;
            j["seed_offset"] = v.green.seed_offset;
        } else if (v.kind == "duality") {
            j["trials"] = v.duality.trials;
            j["t_win"] = v.duality.t_win;
            j["n_t"] = v.duality.n_t;
            j["tol"] = v.duality.tol;
            j["seed_offset"] = v.duality.seed_offset;
        } else if (v.kind == "embeddings") {
            j["level"] = v.embedding.level;
            j["t_win"] = v.embedding.t_win;
            j["n_t"] = v.embedding.n_t;
            j["flat"] = v.embedding.flat;
            j["ramp"] = v.embedding.ramp;
            j["seed_offset"] = v.embedding.seed_offset;
        } else if (v.kind == "linear-estimates") {
            j["level"] = v.linear.level;
            j["b"] = v.linear.b;
            j["s"] = v.linear.s;
            j["horizons"] = v.linear.horizons;
            j["t_win"] = v.linear.t_win;
            j["n_t"] = v.linear.n_t;
            j["ramp_fraction"] = v.linear.ramp_fraction;
            j["seed_offset"] = v.linear.seed_offset;
        }
        m["verify"] = j;
    }
    return m;
}

SpectralField draw_initial(const SpectralBasis& basis, std::uint64_t master,
                           const InitialDataParams& init) {
    Rng rng(derive_seed({master, init.seed_offset}));
    SpectralField u(basis);
    for (auto& c : u.coeffs) c = rng.normal_complex();
    const double n0 = sobolev_norm(u, init.sobolev_s);
    if (!(n0 > 0.0)) throw NumericError("initial data draw produced a zero field");
    const double scale = init.norm / n0;
    for (auto& c : u.coeffs) c *= scale;
    return u;
}

int steps_for(double t_final, double dt, const char* where) {
    const double ratio = t_final / dt;
    const long long n = std::llround(ratio);
    if (n < 1 || std::abs(double(n) * dt - t_final) > 1e-9 * std::max(1.0, t_final))
        throw ConfigError(std::string(where) + ": dt must divide the time span evenly");
    return int(n);
}

// series.csv (mass/energy time series) and states.csv (saved coefficient
// snapshots) for a trajectory.  Returns the maximal relative mass drift.
double write_trajectory_tables(RunContext& ctx, const Trajectory& traj, int save_every) {
    const int n_states = int(traj.states.size());
    const int stride = save_every > 0 ? save_every : std::max(1, (n_states - 1) / 100);

    CsvTable series({"step", "time", "mass", "mass_drift_rel", "h1_norm", "grad_energy"});
    CsvTable states({"step", "mode", "re", "im"});
    const double m0 = mass(traj.states.front());
    double drift_max = 0.0;
    for (int i = 0; i < n_states; ++i) {
        if (i % stride != 0 && i != n_states - 1) continue;
        const SpectralField& u = traj.states[std::size_t(i)];
        const double m = mass(u);
        const double drift = m0 > 0.0 ? std::abs(m - m0) / m0 : 0.0;
        drift_max = std::max(drift_max, drift);
        series.row({cell(i), cell(traj.times[std::size_t(i)]), cell(m), cell(drift),
                    cell(sobolev_norm(u, 1.0)), cell(energy_gradient(u))});
        for (std::size_t k = 0; k < u.coeffs.size(); ++k)
            states.row({cell(i), cell(int(k)), cell(u.coeffs[k].real()),
                        cell(u.coeffs[k].imag())});
    }
    write_output(ctx, "series.csv", series.str());
    write_output(ctx, "states.csv", states.str());
    return drift_max;
}

int run_spectrum(RunContext& ctx, const SpectralBasis& basis) {
    CsvTable t({"index", "label_a", "label_b", "parity", "mu", "lambda"});
    for (const EigenMode& m : basis.modes())
        t.row({cell(m.index), cell(m.label.a), cell(m.label.b), cell(m.label.parity),
               cell(m.mu), cell(m.lambda)});
    write_output(ctx, "eigenvalues.csv", t.str());

    ctx.results["n_modes"] = basis.n_modes();
    ctx.results["lambda_min"] = basis.modes().front().lambda;
    ctx.results["lambda_max"] = basis.modes().back().lambda;
    ctx.results["orthonormality_residual"] = basis.orthonormality_residual();
    ctx.results["eigen_residual"] = basis.eigen_residual();
    return 0;
}

int run_evolve(RunContext& ctx, const SpectralBasis& basis) {
    const EvolveConfig& e = *ctx.cfg.evolve;
    EvolutionParams p;
    p.alpha = e.alpha;
    p.beta = e.beta;
    p.gamma = e.gamma;
    p.dt = e.dt;
    p.n_steps = steps_for(e.t_final, e.dt, "evolve");

    SpectralField u0 = draw_initial(basis, ctx.cfg.seed, e.init);
    ctx.results["initial_norm"] = ordered_json::object();
    ctx.results["initial_norm"]["sobolev_s"] = e.init.sobolev_s;
    ctx.results["initial_norm"]["value"] = sobolev_norm(u0, e.init.sobolev_s);

    Trajectory traj;
    try {
        traj = split_step_evolve(u0, p);
    } catch (const BlowUpError& be) {
        ctx.results["blow_up"] = ordered_json::object();
        ctx.results["blow_up"]["step"] = be.step;
        ctx.results["blow_up"]["time"] = be.time;
        ctx.results["blow_up"]["norm"] = be.norm;
        return 4;
    }
    ctx.results["blow_up"] = false;

    const double drift_max = write_trajectory_tables(ctx, traj, e.save_every);
    ctx.results["n_steps"] = p.n_steps;
    ctx.results["final_time"] = traj.times.back();
    ctx.results["final_mass"] = mass(traj.states.back());
    ctx.results["final_h1_norm"] = sobolev_norm(traj.states.back(), 1.0);
    ctx.results["mass_drift_rel_max"] = drift_max;
    return 0;
}

int run_picard(RunContext& ctx, const SpectralBasis& basis) {
    const PicardConfig& pc = *ctx.cfg.picard;
    EvolutionParams p;
    p.alpha = pc.alpha;
    p.beta = pc.beta;
    p.gamma = pc.gamma;
    p.dt = pc.dt;
    p.n_steps = steps_for(pc.horizon, pc.dt, "picard");

    SpectralField u0 = draw_initial(basis, ctx.cfg.seed, pc.init);

    PicardResult r;
    try {
        r = picard_solve(u0, p, pc.horizon, pc.n_iter, pc.sobolev_s, pc.stop_tol);
    } catch (const BlowUpError& be) {
        ctx.results["blow_up"] = ordered_json::object();
        ctx.results["blow_up"]["step"] = be.step;
        ctx.results["blow_up"]["time"] = be.time;
        ctx.results["blow_up"]["norm"] = be.norm;
        return 4;
    }
    ctx.results["blow_up"] = false;

    CsvTable t({"iteration", "gap_l2", "gap_hs"});
    for (std::size_t i = 0; i < r.report.d_l2.size(); ++i)
        t.row({cell(int(i)), cell(r.report.d_l2[i]), cell(r.report.d_hs[i])});
    write_output(ctx, "contraction.csv", t.str());
    write_trajectory_tables(ctx, r.trajectory, 0);

    ctx.results["kappa"] = r.report.kappa;
    ctx.results["kappa_l2"] = r.report.kappa_l2;
    ctx.results["contracting"] = r.report.contracting;
    ctx.results["iterations"] = r.report.iterations;
    ctx.results["sobolev_s"] = r.report.s;
    ctx.results["final_gap_hs"] = r.report.d_hs.empty() ? 0.0 : r.report.d_hs.back();
    return 0;
}

void hard_assert(RunContext& ctx, bool ok) {
    ++ctx.hard_checked;
    if (!ok) ++ctx.hard_failed;
}

SpaceTimeField random_spacetime(const SpectralBasis& basis, double t_win, int n_t,
                                std::uint64_t seed) {
    Rng rng(seed);
    SpaceTimeField u(basis, t_win, n_t);
    for (auto& v : u.data) v = rng.normal_complex();
    const double n = l2_spacetime(u);
    for (auto& v : u.data) v /= n;
    return u;
}

int run_verify(RunContext& ctx, const SpectralBasis& basis) {
    const VerifyConfig& v = *ctx.cfg.verify;

    if (v.kind == "bilinear" || v.kind == "gradient-bilinear" || v.kind == "xsb-bilinear") {
        SweepConfig sc;
        sc.kind = v.kind == "bilinear"            ? SweepKind::Bilinear
                  : v.kind == "gradient-bilinear" ? SweepKind::GradientBilinear
                                                  : SweepKind::XsbBilinear;
        sc.s = v.sweep.s;
        sc.levels = v.sweep.levels;
        sc.trials = v.sweep.trials;
        sc.seed = ctx.cfg.seed;
        sc.n_t = v.sweep.n_t;
        sc.b = v.sweep.b;
        sc.t_win = v.sweep.t_win;
        SweepResult r = run_sweep(basis, sc);

        CsvTable t({"gamma", "lambda", "trial", "lhs", "rhs_factor", "ratio", "seed"});
        double ratio_max = 0.0;
        for (const EstimateSample& s : r.samples) {
            t.row({cell(s.gamma), cell(s.lambda), cell(s.trial), cell(s.lhs),
                   cell(s.rhs_factor), cell(s.ratio), cell(s.seed)});
            ratio_max = std::max(ratio_max, s.ratio);
        }
        write_output(ctx, "samples.csv", t.str());
        ordered_json fit = ordered_json::object();
        fit["s_hat"] = r.fit.s_hat;
        fit["c_hat"] = r.fit.c_hat;
        fit["residual"] = r.fit.residual;
        fit["n_samples"] = r.fit.n_samples;
        ctx.results["fit"] = fit;
        ctx.results["ratio_max"] = ratio_max;
    } else if (v.kind == "l4") {
        L4Report r = l4_check(basis, v.l4.level, v.l4.trials,
                              derive_seed({ctx.cfg.seed, 2}), v.l4.n_t);
        ctx.results["s"] = r.s;
        ctx.results["max_ratio"] = r.max_ratio;
        ctx.results["worst_consistency"] = r.worst_consistency;
        ctx.results["trials"] = r.trials;
        ctx.results["tol"] = v.l4.tol;
        hard_assert(ctx, r.worst_consistency <= v.l4.tol);
    } else if (v.kind == "dyadic") {
        DyadicCheck d = dyadic_summation_check(v.dyadic.theta, v.dyadic.gamma, v.dyadic.c,
                                               v.dyadic.d);
        ctx.results["lhs"] = d.lhs;
        ctx.results["rhs"] = d.rhs;
        ctx.results["ratio"] = d.ratio;
    } else if (v.kind == "interpolation") {
        // The constructor re-verifies both admissibility inequalities and
        // throws if they fail, so reaching the assignments below certifies
        // the tuple.
        InterpolationParams p = interpolation_params(v.interpolation.s_prime);
        hard_assert(ctx, true);
        ctx.results["delta"] = p.delta;
        ctx.results["theta"] = p.theta;
        ctx.results["epsilon"] = p.epsilon;
        ctx.results["b"] = p.b;
        ctx.results["b_prime"] = p.b_prime;
        ctx.results["verified"] = true;
    } else if (v.kind == "green") {
        CsvTable t({"n0", "n1", "n2", "residual", "pass"});
        double worst = 0.0;
        for (std::size_t i = 0; i < v.green.triples.size(); ++i) {
            const auto& tr = v.green.triples[i];
            const std::uint64_t seed =
                derive_seed({ctx.cfg.seed, v.green.seed_offset, std::uint64_t(i)});
            const double r = green_identity_check(basis, tr[0], tr[1], tr[2], seed,
                                                  v.green.t_win, v.green.n_t);
            worst = std::max(worst, r);
            const bool ok = r <= v.green.tol;
            hard_assert(ctx, ok);
            t.row({cell(tr[0]), cell(tr[1]), cell(tr[2]), cell(r), cell(int(ok))});
        }
        write_output(ctx, "green.csv", t.str());
        ctx.results["max_residual"] = worst;
        ctx.results["tol"] = v.green.tol;
        ctx.results["triples"] = v.green.triples.size();
    } else if (v.kind == "duality") {
        CsvTable t({"trial", "s", "b", "residual", "pass"});
        double worst = 0.0;
        for (int i = 0; i < v.duality.trials; ++i) {
            const std::uint64_t seed =
                derive_seed({ctx.cfg.seed, v.duality.seed_offset, std::uint64_t(i)});
            Rng rng(derive_seed({seed, 0}));
            const double s = -1.0 + 3.0 * rng.uniform();
            const double b = -1.0 + 2.0 * rng.uniform();
            SpaceTimeField u = random_spacetime(basis, v.duality.t_win, v.duality.n_t,
                                                derive_seed({seed, 1}));
            SpaceTimeField w = random_spacetime(basis, v.duality.t_win, v.duality.n_t,
                                                derive_seed({seed, 2}));
            const double r = duality_pairing_check(u, w, s, b);
            worst = std::max(worst, r);
            const bool ok = r <= v.duality.tol;
            hard_assert(ctx, ok);
            t.row({cell(i), cell(s), cell(b), cell(r), cell(int(ok))});
        }
        write_output(ctx, "duality.csv", t.str());
        ctx.results["max_residual"] = worst;
        ctx.results["tol"] = v.duality.tol;
    } else if (v.kind == "embeddings") {
        const EmbeddingVerifyConfig& ec = v.embedding;
        SpectralField f = random_band_field(basis, ec.level,
                                            derive_seed({ctx.cfg.seed, ec.seed_offset}));
        SpaceTimeField u = free_solution_field(f, ec.t_win, ec.n_t);
        const double start = (ec.t_win - ec.flat) / 2.0;
        if (start < ec.ramp)
            throw InvalidArgument("embeddings: cutoff does not fit inside the window");
        scale_in_time(u, [&](double t) { return smooth_cutoff(t - start, ec.flat, ec.ramp); });
        EmbeddingReport r = embedding_checks(u);
        ctx.results["lhs"] = r.lhs;
        ctx.results["rhs"] = r.rhs;
        ctx.results["ratio"] = r.ratio;
        ctx.results["defined"] = r.defined;
    } else if (v.kind == "linear-estimates") {
        const LinearEstimateVerifyConfig& lc = v.linear;
        SpectralField u0 = random_band_field(basis, lc.level,
                                             derive_seed({ctx.cfg.seed, lc.seed_offset}));
        const double norm0 = l2_norm(u0);
        CsvTable t({"horizon", "estimate", "c"});
        double c_min = 0.0, c_max = 0.0;
        bool first = true;
        for (double T : lc.horizons) {
            Trajectory traj;
            const int n_steps = 8;
            for (int i = 0; i <= n_steps; ++i) {
                const double ti = T * double(i) / double(n_steps);
                traj.times.push_back(ti);
                traj.states.push_back(linear_flow(u0, ti));
            }
            const double est = restriction_norm_estimate(traj, lc.s, lc.b, lc.t_win, lc.n_t,
                                                         lc.ramp_fraction);
            const double c = est / (std::pow(T, 0.5 - lc.b) * norm0);
            t.row({cell(T), cell(est), cell(c)});
            c_min = first ? c : std::min(c_min, c);
            c_max = first ? c : std::max(c_max, c);
            first = false;
        }
        write_output(ctx, "horizons.csv", t.str());
        ctx.results["c_min"] = c_min;
        ctx.results["c_max"] = c_max;
        ctx.results["c_spread"] = c_min > 0.0 ? c_max / c_min : 0.0;
    } else {
        throw ConfigError("verify: unknown kind " + v.kind);
    }
    return ctx.hard_failed > 0 ? 3 : 0;
}

std::string resolve_out_dir(const std::optional<std::string>& flag, const RunConfig& cfg) {
    if (flag && !flag->empty()) return *flag;
    if (const char* env = std::getenv("XSBLAB_OUT"); env != nullptr && env[0] != '\0')
        return env;
    if (!cfg.output_dir.empty()) return cfg.output_dir;
    return "xsblab-out";
}

int run_all(const std::string& sub, const std::string& config_path,
            const std::optional<std::string>& out_flag,
            const std::optional<std::uint64_t>& seed_flag) {
    RunContext ctx;
    ctx.subcommand = sub;
    ctx.cfg = load_run_config(config_path);
    if (seed_flag) ctx.cfg.seed = *seed_flag;
    ctx.out_dir = resolve_out_dir(out_flag, ctx.cfg);

    if (sub == "evolve" && !ctx.cfg.evolve)
        throw ConfigError("config: subcommand 'evolve' needs an 'evolve' section");
    if (sub == "picard" && !ctx.cfg.picard)
        throw ConfigError("config: subcommand 'picard' needs a 'picard' section");
    if (sub == "verify" && !ctx.cfg.verify)
        throw ConfigError("config: subcommand 'verify' needs a 'verify' section");

    std::filesystem::create_directories(ctx.out_dir);

    const auto t0 = std::chrono::steady_clock::now();
    SpectralBasis basis = build_basis(ctx.cfg.manifold, ctx.cfg.mu_max);

    int code = 0;
    if (sub == "spectrum") {
        code = run_spectrum(ctx, basis);
    } else if (sub == "evolve") {
        code = run_evolve(ctx, basis);
    } else if (sub == "picard") {
        code = run_picard(ctx, basis);
    } else {
        code = run_verify(ctx, basis);
    }
    const double wall =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

    ordered_json m = ordered_json::object();
    m["tool"] = ordered_json::object();
    m["tool"]["name"] = "xsblab";
    m["tool"]["version"] = kVersion;
    m["subcommand"] = sub;
    m["config"] = echo_config(ctx);
    m["basis"] = ordered_json::object();
    m["basis"]["n_modes"] = basis.n_modes();
    m["basis"]["n_nodes"] = basis.n_nodes();
    m["basis"]["fingerprint"] = basis.fingerprint();
    m["results"] = ctx.results;
    m["hard_assertions"] = ordered_json::object();
    m["hard_assertions"]["checked"] = ctx.hard_checked;
    m["hard_assertions"]["failed"] = ctx.hard_failed;
    m["exit_code"] = code;
    m["outputs"] = ctx.outputs;
    m["wall_time_seconds"] = wall; // informational; exempt from reproducibility
    atomic_write_text((std::filesystem::path(ctx.out_dir) / "manifest.json").string(),
                      m.dump(2) + "\n");
    return code;
}

} // namespace

int cli_main(int argc, const char* const* argv) {
    CLI::App app{"Spectral laboratory for the quadratic Schrodinger equation on model domains"};
    app.require_subcommand(1);

    std::string config_path;
    std::optional<std::string> out_flag;
    std::optional<std::uint64_t> seed_flag;
    std::optional<int> threads_flag;

    const char* descs[4] = {
        "Write the eigenvalue table and basis diagnostics",
        "Run the split-step evolution and write trajectory tables",
        "Run the fixed-point iteration and write the contraction report",
        "Run one verification kind and write its samples and summary",
    };
    const char* names[4] = {"spectrum", "evolve", "picard", "verify"};
    for (int i = 0; i < 4; ++i) {
        CLI::App* sub = app.add_subcommand(names[i], descs[i]);
        sub->add_option("--config", config_path, "Path to the JSON run configuration")
            ->required();
        sub->add_option("--out", out_flag, "Output directory (overrides XSBLAB_OUT and config)");
        sub->add_option("--seed", seed_flag, "Master seed override");
        sub->add_option("--threads", threads_flag, "Worker thread count");
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 2;
    }

    if (threads_flag) {
        if (*threads_flag < 1) {
            std::cerr << "xsblab: --threads must be at least 1\n";
            return 2;
        }
#ifdef _OPENMP
        omp_set_num_threads(*threads_flag);
#endif
    }

    try {
        return run_all(app.get_subcommands().front()->get_name(), config_path, out_flag,
                       seed_flag);
    } catch (const BlowUpError& e) {
        std::cerr << "xsblab: blow-up: " << e.what() << "\n";
        return 4;
    } catch (const ConfigError& e) {
        std::cerr << "xsblab: " << e.what() << "\n";
        return 2;
    } catch (const InvalidArgument& e) {
        std::cerr << "xsblab: invalid argument: " << e.what() << "\n";
        return 2;
    } catch (const NumericError& e) {
        std::cerr << "xsblab: numeric failure: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "xsblab: error: " << e.what() << "\n";
        return 3;
    }
}

} // namespace xsblab
