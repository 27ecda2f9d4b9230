#include "xsblab/config.hpp"

#include <cmath>
#include <set>

#include "json.hpp"
#include "xsblab/errors.hpp"
#include "xsblab/io.hpp"

namespace xsblab {

namespace {

using nlohmann::json;

[[noreturn]] void bad(const std::string& where, const std::string& what) {
    throw ConfigError("config: " + where + ": " + what);
}

void check_object(const json& v, const std::string& where) {
    if (!v.is_object()) bad(where, "expected an object");
}

// Every key of v must be in allowed; unknown keys are configuration errors
// rather than silently ignored typos.
void check_keys(const json& v, const std::string& where,
                std::initializer_list<const char*> allowed) {
    check_object(v, where);
    const std::set<std::string> ok(allowed.begin(), allowed.end());
    for (auto it = v.begin(); it != v.end(); ++it) {
        if (ok.find(it.key()) == ok.end()) bad(where, "unknown key '" + it.key() + "'");
    }
}

bool has(const json& v, const char* key) { return v.contains(key); }

double get_double(const json& v, const std::string& where, const char* key,
                  std::optional<double> fallback = std::nullopt) {
    if (!has(v, key)) {
        if (fallback) return *fallback;
        bad(where, std::string("missing required key '") + key + "'");
    }
    const json& x = v.at(key);
    if (!x.is_number()) bad(where + "." + key, "expected a number");
    return x.get<double>();
}

int get_int(const json& v, const std::string& where, const char* key,
            std::optional<int> fallback = std::nullopt) {
    if (!has(v, key)) {
        if (fallback) return *fallback;
        bad(where, std::string("missing required key '") + key + "'");
    }
    const json& x = v.at(key);
    if (!x.is_number_integer()) bad(where + "." + key, "expected an integer");
    return x.get<int>();
}

std::uint64_t get_u64(const json& v, const std::string& where, const char* key,
                      std::optional<std::uint64_t> fallback = std::nullopt) {
    if (!has(v, key)) {
        if (fallback) return *fallback;
        bad(where, std::string("missing required key '") + key + "'");
    }
    const json& x = v.at(key);
    if (!(x.is_number_integer() && (x.is_number_unsigned() || x.get<long long>() >= 0)))
        bad(where + "." + key, "expected a nonnegative integer");
    return x.get<std::uint64_t>();
}

std::string get_string(const json& v, const std::string& where, const char* key,
                       std::optional<std::string> fallback = std::nullopt) {
    if (!has(v, key)) {
        if (fallback) return *fallback;
        bad(where, std::string("missing required key '") + key + "'");
    }
    const json& x = v.at(key);
    if (!x.is_string()) bad(where + "." + key, "expected a string");
    return x.get<std::string>();
}

// A complex parameter is a plain number (purely real) or an [re, im] pair.
cplx get_complex(const json& v, const std::string& where, const char* key, cplx fallback) {
    if (!has(v, key)) return fallback;
    const json& x = v.at(key);
    if (x.is_number()) return cplx{x.get<double>(), 0.0};
    if (x.is_array() && x.size() == 2 && x[0].is_number() && x[1].is_number())
        return cplx{x[0].get<double>(), x[1].get<double>()};
    bad(where + "." + key, "expected a number or [re, im] pair");
}

std::vector<double> get_double_list(const json& v, const std::string& where, const char* key,
                                    std::optional<std::vector<double>> fallback) {
    if (!has(v, key)) {
        if (fallback) return *fallback;
        bad(where, std::string("missing required key '") + key + "'");
    }
    const json& x = v.at(key);
    if (!x.is_array()) bad(where + "." + key, "expected an array of numbers");
    std::vector<double> out;
    for (const json& e : x) {
        if (!e.is_number()) bad(where + "." + key, "expected an array of numbers");
        out.push_back(e.get<double>());
    }
    return out;
}

ManifoldSpec parse_manifold(const json& v) {
    const std::string where = "manifold";
    check_keys(v, where, {"domain", "side_x", "side_y", "boundary"});
    const std::string domain = get_string(v, where, "domain");
    const std::string boundary = get_string(v, where, "boundary", std::string("dirichlet"));
    Boundary bc;
    if (boundary == "dirichlet") {
        bc = Boundary::Dirichlet;
    } else if (boundary == "neumann") {
        bc = Boundary::Neumann;
    } else {
        bad(where + ".boundary", "expected 'dirichlet' or 'neumann'");
    }
    if (domain == "rectangle") {
        const double sx = get_double(v, where, "side_x");
        const double sy = get_double(v, where, "side_y");
        return ManifoldSpec::rectangle(sx, sy, bc);
    }
    if (domain == "disk") {
        if (has(v, "side_x") || has(v, "side_y"))
            bad(where, "side_x/side_y do not apply to the disk");
        return ManifoldSpec::unit_disk(bc);
    }
    bad(where + ".domain", "expected 'rectangle' or 'disk'");
}

InitialDataParams parse_init(const json& parent, const std::string& parent_where) {
    InitialDataParams out;
    if (!has(parent, "init")) return out;
    const json& v = parent.at("init");
    const std::string where = parent_where + ".init";
    check_keys(v, where, {"norm", "sobolev_s", "seed_offset"});
    out.norm = get_double(v, where, "norm", out.norm);
    out.sobolev_s = get_double(v, where, "sobolev_s", out.sobolev_s);
    out.seed_offset = get_u64(v, where, "seed_offset", out.seed_offset);
    if (!(out.norm > 0.0) || !std::isfinite(out.norm))
        bad(where + ".norm", "must be positive and finite");
    return out;
}

EvolveConfig parse_evolve(const json& v) {
    const std::string where = "evolve";
    check_keys(v, where,
               {"alpha", "beta", "gamma", "t_final", "dt", "init", "save_every"});
    EvolveConfig out;
    out.alpha = get_complex(v, where, "alpha", out.alpha);
    out.beta = get_complex(v, where, "beta", out.beta);
    out.gamma = get_complex(v, where, "gamma", out.gamma);
    out.t_final = get_double(v, where, "t_final", out.t_final);
    out.dt = get_double(v, where, "dt", out.dt);
    out.init = parse_init(v, where);
    out.save_every = get_int(v, where, "save_every", out.save_every);
    if (!(out.t_final > 0.0)) bad(where + ".t_final", "must be positive");
    if (!(out.dt > 0.0)) bad(where + ".dt", "must be positive");
    if (out.save_every < 0) bad(where + ".save_every", "must be nonnegative");
    return out;
}

PicardConfig parse_picard(const json& v) {
    const std::string where = "picard";
    check_keys(v, where,
               {"alpha", "beta", "gamma", "horizon", "dt", "n_iter", "sobolev_s",
                "stop_tol", "init"});
    PicardConfig out;
    out.alpha = get_complex(v, where, "alpha", out.alpha);
    out.beta = get_complex(v, where, "beta", out.beta);
    out.gamma = get_complex(v, where, "gamma", out.gamma);
    out.horizon = get_double(v, where, "horizon", out.horizon);
    out.dt = get_double(v, where, "dt", out.dt);
    out.n_iter = get_int(v, where, "n_iter", out.n_iter);
    out.sobolev_s = get_double(v, where, "sobolev_s", out.sobolev_s);
    out.stop_tol = get_double(v, where, "stop_tol", out.stop_tol);
    out.init = parse_init(v, where);
    if (!(out.horizon > 0.0)) bad(where + ".horizon", "must be positive");
    if (!(out.dt > 0.0)) bad(where + ".dt", "must be positive");
    if (out.n_iter < 1) bad(where + ".n_iter", "must be at least 1");
    return out;
}

VerifyConfig parse_verify(const json& v) {
    const std::string where = "verify";
    check_object(v, where);
    VerifyConfig out;
    out.kind = get_string(v, where, "kind");

    if (out.kind == "bilinear" || out.kind == "gradient-bilinear" ||
        out.kind == "xsb-bilinear") {
        check_keys(v, where, {"kind", "levels", "trials", "s", "n_t", "b", "t_win"});
        out.sweep.levels = get_double_list(v, where, "levels", out.sweep.levels);
        out.sweep.trials = get_int(v, where, "trials", out.sweep.trials);
        out.sweep.s = get_double(v, where, "s", out.sweep.s);
        out.sweep.n_t = get_int(v, where, "n_t", out.sweep.n_t);
        out.sweep.b = get_double(v, where, "b", out.sweep.b);
        out.sweep.t_win = get_double(v, where, "t_win", out.sweep.t_win);
    } else if (out.kind == "l4") {
        check_keys(v, where, {"kind", "level", "trials", "n_t", "tol"});
        out.l4.level = get_double(v, where, "level", out.l4.level);
        out.l4.trials = get_int(v, where, "trials", out.l4.trials);
        out.l4.n_t = get_int(v, where, "n_t", out.l4.n_t);
        out.l4.tol = get_double(v, where, "tol", out.l4.tol);
    } else if (out.kind == "dyadic") {
        check_keys(v, where, {"kind", "theta", "gamma", "c", "d"});
        out.dyadic.theta = get_double(v, where, "theta");
        out.dyadic.gamma = get_double(v, where, "gamma");
        out.dyadic.c = get_double_list(v, where, "c", std::nullopt);
        out.dyadic.d = get_double_list(v, where, "d", std::nullopt);
    } else if (out.kind == "interpolation") {
        check_keys(v, where, {"kind", "s_prime"});
        out.interpolation.s_prime = get_double(v, where, "s_prime");
    } else if (out.kind == "green") {
        check_keys(v, where, {"kind", "triples", "t_win", "n_t", "tol", "seed_offset"});
        if (has(v, "triples")) {
            const json& t = v.at("triples");
            if (!t.is_array()) bad(where + ".triples", "expected an array of [n0,n1,n2]");
            for (const json& e : t) {
                if (!e.is_array() || e.size() != 3 || !e[0].is_number() ||
                    !e[1].is_number() || !e[2].is_number())
                    bad(where + ".triples", "expected an array of [n0,n1,n2]");
                out.green.triples.push_back(
                    {e[0].get<double>(), e[1].get<double>(), e[2].get<double>()});
            }
        } else {
            for (double a : {2.0, 4.0, 8.0})
                for (double b : {2.0, 4.0, 8.0})
                    for (double c : {2.0, 4.0, 8.0}) out.green.triples.push_back({a, b, c});
        }
        out.green.t_win = get_double(v, where, "t_win", out.green.t_win);
        out.green.n_t = get_int(v, where, "n_t", out.green.n_t);
        out.green.tol = get_double(v, where, "tol", out.green.tol);
        out.green.seed_offset = get_u64(v, where, "seed_offset", out.green.seed_offset);
    } else if (out.kind == "duality") {
        check_keys(v, where, {"kind", "trials", "t_win", "n_t", "tol", "seed_offset"});
        out.duality.trials = get_int(v, where, "trials", out.duality.trials);
        out.duality.t_win = get_double(v, where, "t_win", out.duality.t_win);
        out.duality.n_t = get_int(v, where, "n_t", out.duality.n_t);
        out.duality.tol = get_double(v, where, "tol", out.duality.tol);
        out.duality.seed_offset = get_u64(v, where, "seed_offset", out.duality.seed_offset);
        if (out.duality.trials < 1) bad(where + ".trials", "must be at least 1");
    } else if (out.kind == "embeddings") {
        check_keys(v, where, {"kind", "level", "t_win", "n_t", "flat", "ramp", "seed_offset"});
        out.embedding.level = get_double(v, where, "level", out.embedding.level);
        out.embedding.t_win = get_double(v, where, "t_win", out.embedding.t_win);
        out.embedding.n_t = get_int(v, where, "n_t", out.embedding.n_t);
        out.embedding.flat = get_double(v, where, "flat", out.embedding.flat);
        out.embedding.ramp = get_double(v, where, "ramp", out.embedding.ramp);
        out.embedding.seed_offset = get_u64(v, where, "seed_offset", out.embedding.seed_offset);
    } else if (out.kind == "linear-estimates") {
        check_keys(v, where,
                   {"kind", "level", "b", "s", "horizons", "t_win", "n_t", "ramp_fraction",
                    "seed_offset"});
        out.linear.level = get_double(v, where, "level", out.linear.level);
        out.linear.b = get_double(v, where, "b", out.linear.b);
        out.linear.s = get_double(v, where, "s", out.linear.s);
        out.linear.horizons = get_double_list(v, where, "horizons", out.linear.horizons);
        out.linear.t_win = get_double(v, where, "t_win", out.linear.t_win);
        out.linear.n_t = get_int(v, where, "n_t", out.linear.n_t);
        out.linear.ramp_fraction = get_double(v, where, "ramp_fraction", out.linear.ramp_fraction);
        out.linear.seed_offset = get_u64(v, where, "seed_offset", out.linear.seed_offset);
        if (out.linear.horizons.empty()) bad(where + ".horizons", "must be non-empty");
    } else {
        bad(where + ".kind", "unknown verify kind '" + out.kind + "'");
    }
    return out;
}

} // namespace

RunConfig parse_run_config(const std::string& json_text) {
    json root;
    try {
        root = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("config: not valid JSON: ") + e.what());
    }
    const std::string where = "(top level)";
    check_keys(root, where,
               {"manifold", "mu_max", "seed", "output_dir", "spectrum", "evolve", "picard",
                "verify"});
    RunConfig out;
    if (!has(root, "manifold")) bad(where, "missing required key 'manifold'");
    out.manifold = parse_manifold(root.at("manifold"));
    out.mu_max = get_double(root, where, "mu_max");
    if (!(out.mu_max > 0.0) || !std::isfinite(out.mu_max))
        bad("mu_max", "must be positive and finite");
    out.seed = get_u64(root, where, "seed", out.seed);
    out.output_dir = get_string(root, where, "output_dir", std::string());
    if (has(root, "spectrum")) {
        check_keys(root.at("spectrum"), "spectrum", {});
        out.has_spectrum_section = true;
    }
    if (has(root, "evolve")) out.evolve = parse_evolve(root.at("evolve"));
    if (has(root, "picard")) out.picard = parse_picard(root.at("picard"));
    if (has(root, "verify")) out.verify = parse_verify(root.at("verify"));
    return out;
}

RunConfig load_run_config(const std::string& path) {
    return parse_run_config(read_text_file(path));
}

} // namespace xsblab
