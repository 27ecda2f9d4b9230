#include "xsblab/estimates.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <set>
#include <vector>

#include "xsblab/errors.hpp"
#include "xsblab/rng.hpp"
#include "xsblab/spacetime.hpp"

namespace xsblab {

namespace {

std::uint64_t bits_of(double x) {
    std::uint64_t u;
    std::memcpy(&u, &x, sizeof u);
    return u;
}

double lambda_top(const SpectralField& u) {
    const auto& modes = u.basis.modes();
    double top = 0.0;
    for (std::size_t k = 0; k < u.coeffs.size(); ++k)
        if (u.coeffs[k] != cplx{0.0, 0.0}) top = std::max(top, modes[k].lambda);
    return top;
}

int pow2_at_least(double x) {
    int n = 16;
    while (double(n) < x) n *= 2;
    return n;
}

// Free flow of f on the periodic window, multiplied by the standard cutoff
// (flat on a unit interval centered in the window, ramps of half a unit).
SpaceTimeField windowed_free(const SpectralField& f, double t_win, int n_t) {
    SpaceTimeField out = free_solution_field(f, t_win, n_t);
    const double off = 0.5 * (t_win - 1.0);
    scale_in_time(out, [&](double t) { return cplx{smooth_cutoff(t - off, 1.0, 0.5), 0.0}; });
    return out;
}

// L^2 over window x manifold of F H, or of |grad F|_g H.
double product_l2(const SpaceTimeField& f, const SpaceTimeField& h, bool grad_on_f) {
    const auto& basis = f.basis;
    const auto& grid = basis.grid();
    const std::size_t n_nodes = grid.size();
    std::vector<double> partial(std::size_t(f.n_t), 0.0);
#pragma omp parallel for schedule(static)
    for (int i = 0; i < f.n_t; ++i) {
        SpectralField fs = f.slice(i);
        SpectralField hs = h.slice(i);
        std::vector<cplx> hv = basis.synthesize(hs.coeffs);
        double acc = 0.0;
        if (grad_on_f) {
            std::vector<cplx> g0(n_nodes), g1(n_nodes);
            basis.synthesize_gradient(fs.coeffs.data(), g0.data(), g1.data());
            for (std::size_t x = 0; x < n_nodes; ++x)
                acc += grid.weight[x] * (std::norm(g0[x]) + std::norm(g1[x])) * std::norm(hv[x]);
        } else {
            std::vector<cplx> fv = basis.synthesize(fs.coeffs);
            for (std::size_t x = 0; x < n_nodes; ++x)
                acc += grid.weight[x] * std::norm(fv[x]) * std::norm(hv[x]);
        }
        partial[std::size_t(i)] = acc;
    }
    double total = 0.0;
    for (double p : partial) total += p;
    return std::sqrt(total * f.dt());
}

ExponentFit fit_loglog(const std::vector<double>& x, const std::vector<double>& y) {
    ExponentFit fit;
    fit.n_samples = int(x.size());
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        mx += x[i];
        my += y[i];
    }
    mx /= double(x.size());
    my /= double(x.size());
    double sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxx += (x[i] - mx) * (x[i] - mx);
        sxy += (x[i] - mx) * (y[i] - my);
    }
    fit.s_hat = sxy / sxx;
    fit.c_hat = std::exp(my - fit.s_hat * mx);
    double rss = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double e = y[i] - (my - fit.s_hat * mx) - fit.s_hat * x[i];
        rss += e * e;
    }
    fit.residual = std::sqrt(rss / double(x.size()));
    return fit;
}

struct Task {
    double gamma = 0.0;  // band of the plain factor h (slot 0)
    double lambda = 0.0; // band of the (gradient) factor f (slot 1)
    int trial = 0;
    std::uint64_t pair_seed = 0;
};

} // namespace

SweepResult run_sweep(const SpectralBasis& basis, const SweepConfig& cfg) {
    if (cfg.trials < 4) throw InvalidArgument("run_sweep: need at least 4 trials per pair");
    if (cfg.levels.empty()) throw InvalidArgument("run_sweep: empty band list");
    const bool gradient =
        cfg.kind == SweepKind::GradientBilinear || cfg.kind == SweepKind::XsbGradient;
    const bool windowed =
        cfg.kind == SweepKind::XsbBilinear || cfg.kind == SweepKind::XsbGradient;

    std::vector<Task> tasks;
    for (std::size_t a = 0; a < cfg.levels.size(); ++a) {
        for (std::size_t c = 0; c < cfg.levels.size(); ++c) {
            const double ga = cfg.levels[a], la = cfg.levels[c];
            if (!gradient && ga > la) continue; // symmetric kinds: unordered pairs
            for (int trial = 0; trial < cfg.trials; ++trial) {
                Task t;
                t.gamma = ga;
                t.lambda = la;
                t.trial = trial;
                t.pair_seed =
                    derive_seed({cfg.seed, bits_of(ga), bits_of(la), std::uint64_t(trial)});
                tasks.push_back(t);
            }
        }
    }

    std::set<double> mins;
    for (const auto& t : tasks) mins.insert(std::min(t.gamma, t.lambda));
    if (mins.size() < 2)
        throw InvalidArgument("run_sweep: degenerate abscissa; min(gamma, lambda) must vary");
    if (tasks.size() < 8) throw InvalidArgument("run_sweep: fewer than 8 samples");

    SweepResult result;
    std::vector<double> xs, ys;
    for (const auto& task : tasks) {
        SpectralField h = random_band_field(basis, task.gamma, derive_seed({task.pair_seed, 0}));
        SpectralField f = random_band_field(basis, task.lambda, derive_seed({task.pair_seed, 1}));

        double lhs = 0.0, rhs_base = 0.0;
        if (!windowed) {
            lhs = gradient ? gradient_bilinear_lhs(f, h, cfg.n_t)
                           : bilinear_lhs(h, f, cfg.n_t);
            rhs_base = l2_norm(f) * l2_norm(h);
        } else {
            const double top = std::max(lambda_top(f), lambda_top(h));
            const int n_t = pow2_at_least(std::max(16.0, cfg.t_win * top / 3.14159265358979 + 4.0));
            SpaceTimeField wf = windowed_free(f, cfg.t_win, n_t);
            SpaceTimeField wh = windowed_free(h, cfg.t_win, n_t);
            lhs = product_l2(wf, wh, gradient);
            rhs_base = xsb_norm(wf, 0.0, cfg.b) * xsb_norm(wh, 0.0, cfg.b);
        }
        if (gradient) rhs_base *= task.lambda;
        if (!(lhs > 0.0) || !(rhs_base > 0.0))
            throw NumericError("run_sweep: degenerate sample value");

        const double lo = std::min(task.gamma, task.lambda);
        EstimateSample sample;
        sample.gamma = task.gamma;
        sample.lambda = task.lambda;
        sample.lhs = lhs;
        sample.rhs_factor = std::pow(lo, cfg.s) * rhs_base;
        sample.ratio = lhs / sample.rhs_factor;
        sample.seed = task.pair_seed;
        sample.trial = task.trial;
        result.samples.push_back(sample);

        xs.push_back(std::log(lo));
        ys.push_back(std::log(lhs / rhs_base));
    }

    result.fit = fit_loglog(xs, ys);
    return result;
}

} // namespace xsblab
