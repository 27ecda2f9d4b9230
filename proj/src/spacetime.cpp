#include "xsblab/spacetime.hpp"

#include <algorithm>
#include <cmath>
#include <complex>

#include "xsblab/errors.hpp"
#include "fftw_util.hpp"

namespace xsblab {

namespace {

const double kTwoPi = 6.28318530717958647692;

double bracket(double x) { return std::sqrt(1.0 + x * x); }

bool power_of_two(int n) { return n > 0 && (n & (n - 1)) == 0; }

void require_compatible(const SpaceTimeField& u, const SpaceTimeField& v, const char* who) {
    if (!u.basis.same_as(v.basis) || u.n_t != v.n_t || u.t_win != v.t_win)
        throw InvalidArgument(std::string(who) + ": fields live on different windows or bases");
}

} // namespace

SpaceTimeField::SpaceTimeField(const SpectralBasis& b, double t_win_, int n_t_)
    : basis(b), t_win(t_win_), n_t(n_t_) {
    if (!basis.valid()) throw InvalidArgument("SpaceTimeField: basis is not initialized");
    if (!(t_win > 0.0)) throw InvalidArgument("SpaceTimeField: window length must be positive");
    if (!power_of_two(n_t) || n_t < 16)
        throw InvalidArgument("SpaceTimeField: n_t must be a power of two >= 16");
    data.assign(basis.n_modes() * std::size_t(n_t), cplx{0.0, 0.0});
}

void SpaceTimeField::validate() const {
    if (!basis.valid()) throw InvalidArgument("SpaceTimeField: basis is not initialized");
    if (!(t_win > 0.0)) throw InvalidArgument("SpaceTimeField: window length must be positive");
    if (!power_of_two(n_t) || n_t < 16)
        throw InvalidArgument("SpaceTimeField: n_t must be a power of two >= 16");
    if (data.size() != basis.n_modes() * std::size_t(n_t))
        throw InvalidArgument("SpaceTimeField: sample buffer has the wrong size");
}

SpectralField SpaceTimeField::slice(int i) const {
    SpectralField u(basis);
    for (std::size_t k = 0; k < n_modes(); ++k) u.coeffs[k] = at(k, i);
    return u;
}

void SpaceTimeField::set_slice(int i, const SpectralField& u) {
    if (!u.basis.same_as(basis)) throw InvalidArgument("set_slice: basis mismatch");
    for (std::size_t k = 0; k < n_modes(); ++k) at(k, i) = u.coeffs[k];
}

std::vector<double> tau_values(double t_win, int n_t) {
    if (!(t_win > 0.0) || n_t <= 0) throw InvalidArgument("tau_values: bad window");
    std::vector<double> tau(static_cast<std::size_t>(n_t));
    for (int n = 0; n < n_t; ++n) {
        int m = (n < n_t / 2) ? n : n - n_t;
        tau[std::size_t(n)] = kTwoPi * m / t_win;
    }
    return tau;
}

TimeSpectrum time_fourier(const SpaceTimeField& u) {
    u.validate();
    TimeSpectrum s;
    s.basis = u.basis;
    s.t_win = u.t_win;
    s.n_t = u.n_t;
    s.data = u.data;
    if (!s.data.empty()) {
        C2CBatchPlan plan(u.n_t, int(u.n_modes()), FFTW_FORWARD);
        plan.exec_inplace(s.data.data());
    }
    const double dt = u.dt();
    for (auto& z : s.data) z *= dt;
    return s;
}

SpaceTimeField inverse_time_fourier(const TimeSpectrum& s) {
    SpaceTimeField u(s.basis, s.t_win, s.n_t);
    u.data = s.data;
    if (!u.data.empty()) {
        C2CBatchPlan plan(s.n_t, int(s.basis.n_modes()), FFTW_BACKWARD);
        plan.exec_inplace(u.data.data());
    }
    const double scale = 1.0 / s.t_win;
    for (auto& z : u.data) z *= scale;
    return u;
}

SpaceTimeField free_solution_field(const SpectralField& u0, double t_win, int n_t) {
    u0.validate();
    SpaceTimeField out(u0.basis, t_win, n_t);
    const auto& modes = u0.basis.modes();
    double lambda_top = 0.0;
    for (std::size_t k = 0; k < u0.coeffs.size(); ++k)
        if (u0.coeffs[k] != cplx{0.0, 0.0}) lambda_top = std::max(lambda_top, modes[k].lambda);
    // The populated tone at tau = -lambda must stay at least one bin away
    // from the spectral fold of the window.
    if (lambda_top * t_win / kTwoPi > n_t / 2 - 1 + 1e-9)
        throw InvalidArgument("free_solution_field: window cannot resolve the fastest phase; "
                              "increase n_t or shrink t_win");
    for (std::size_t k = 0; k < u0.coeffs.size(); ++k) {
        const cplx c = u0.coeffs[k];
        if (c == cplx{0.0, 0.0}) continue;
        const double lam = modes[k].lambda;
        for (int i = 0; i < n_t; ++i) {
            const double ang = -lam * out.time(i);
            out.at(k, i) = c * cplx{std::cos(ang), std::sin(ang)};
        }
    }
    return out;
}

void scale_in_time(SpaceTimeField& u, const std::function<cplx(double)>& factor) {
    u.validate();
    for (int i = 0; i < u.n_t; ++i) {
        const cplx f = factor(u.time(i));
        for (std::size_t k = 0; k < u.n_modes(); ++k) u.at(k, i) *= f;
    }
}

double smooth_cutoff(double t, double t_flat, double ramp) {
    if (!(ramp > 0.0) || !(t_flat >= 0.0))
        throw InvalidArgument("smooth_cutoff: need t_flat >= 0 and ramp > 0");
    double x;
    if (t < 0.0)
        x = (t + ramp) / ramp;
    else if (t > t_flat)
        x = (t_flat + ramp - t) / ramp;
    else
        return 1.0;
    if (x <= 0.0) return 0.0;
    if (x >= 1.0) return 1.0;
    return ((6.0 * x - 15.0) * x + 10.0) * x * x * x;
}

double l2_spacetime(const SpaceTimeField& u) {
    u.validate();
    double acc = 0.0;
    for (const auto& z : u.data) acc += std::norm(z);
    return std::sqrt(acc * u.dt());
}

cplx inner_spacetime(const SpaceTimeField& u, const SpaceTimeField& v) {
    u.validate();
    v.validate();
    require_compatible(u, v, "inner_spacetime");
    cplx acc{0.0, 0.0};
    for (std::size_t j = 0; j < u.data.size(); ++j) acc += u.data[j] * std::conj(v.data[j]);
    return acc * u.dt();
}

double xsb_norm(const SpaceTimeField& u, double s, double b) {
    TimeSpectrum sp = time_fourier(u);
    const auto tau = tau_values(u.t_win, u.n_t);
    const auto& modes = u.basis.modes();
    double acc = 0.0;
    for (std::size_t k = 0; k < u.n_modes(); ++k) {
        const double ws = std::pow(bracket(modes[k].mu), 2.0 * s);
        const double lam = modes[k].lambda;
        double inner = 0.0;
        for (int n = 0; n < u.n_t; ++n)
            inner += std::pow(bracket(tau[std::size_t(n)] + lam), 2.0 * b) * std::norm(sp.at(k, n));
        acc += ws * inner;
    }
    return std::sqrt(acc / u.t_win);
}

double xsb_norm_conjugated(const SpaceTimeField& u, double s, double b) {
    u.validate();
    SpaceTimeField v = u;
    const auto& modes = u.basis.modes();
    for (std::size_t k = 0; k < u.n_modes(); ++k) {
        const double lam = modes[k].lambda;
        for (int i = 0; i < u.n_t; ++i) {
            const double ang = lam * u.time(i);
            v.at(k, i) *= cplx{std::cos(ang), std::sin(ang)};
        }
    }
    TimeSpectrum sp = time_fourier(v);
    const auto tau = tau_values(u.t_win, u.n_t);
    double acc = 0.0;
    for (std::size_t k = 0; k < u.n_modes(); ++k) {
        const double ws = std::pow(bracket(modes[k].mu), 2.0 * s);
        double inner = 0.0;
        for (int n = 0; n < u.n_t; ++n)
            inner += std::pow(bracket(tau[std::size_t(n)]), 2.0 * b) * std::norm(sp.at(k, n));
        acc += ws * inner;
    }
    return std::sqrt(acc / u.t_win);
}

std::vector<double> modulation_levels(const SpaceTimeField& u) {
    u.validate();
    const auto tau = tau_values(u.t_win, u.n_t);
    const double tau_lo = *std::min_element(tau.begin(), tau.end());
    const double tau_hi = *std::max_element(tau.begin(), tau.end());
    double top = 1.0;
    for (const auto& m : u.basis.modes())
        top = std::max({top, bracket(tau_lo + m.lambda), bracket(tau_hi + m.lambda)});
    std::vector<double> levels;
    for (double level = 1.0; level <= top; level *= 2.0) levels.push_back(level);
    return levels;
}

SpaceTimeField modulation_project(const SpaceTimeField& u, double level) {
    if (!(level > 0.0)) throw InvalidArgument("modulation_project: level must be positive");
    TimeSpectrum sp = time_fourier(u);
    const auto tau = tau_values(u.t_win, u.n_t);
    const auto& modes = u.basis.modes();
    for (std::size_t k = 0; k < u.n_modes(); ++k) {
        const double lam = modes[k].lambda;
        for (int n = 0; n < u.n_t; ++n) {
            const double w = bracket(tau[std::size_t(n)] + lam);
            if (!(level <= w && w < 2.0 * level)) sp.at(k, n) = cplx{0.0, 0.0};
        }
    }
    return inverse_time_fourier(sp);
}

SpaceTimeField apply_lambda_b(const SpaceTimeField& u, double b) {
    TimeSpectrum sp = time_fourier(u);
    const auto tau = tau_values(u.t_win, u.n_t);
    const auto& modes = u.basis.modes();
    for (std::size_t k = 0; k < u.n_modes(); ++k) {
        const double lam = modes[k].lambda;
        for (int n = 0; n < u.n_t; ++n)
            sp.at(k, n) *= std::pow(bracket(tau[std::size_t(n)] + lam), b);
    }
    return inverse_time_fourier(sp);
}

EmbeddingReport embedding_checks(const SpaceTimeField& u) {
    u.validate();
    EmbeddingReport rep;
    double acc = 0.0;
    for (int i = 0; i < u.n_t; ++i) {
        double sq = 0.0;
        for (std::size_t k = 0; k < u.n_modes(); ++k) sq += std::norm(u.at(k, i));
        acc += std::pow(sq, 1.5);
    }
    rep.lhs = std::cbrt(acc * u.dt());
    rep.rhs = xsb_norm(u, 0.0, 1.0 / 6.0);
    if (rep.rhs > 0.0) {
        rep.ratio = rep.lhs / rep.rhs;
        rep.defined = true;
    }
    return rep;
}

double restriction_norm_estimate(const Trajectory& traj, double s, double b,
                                 double t_win, int n_t, double ramp_fraction) {
    traj.validate();
    if (!(ramp_fraction > 0.0 && ramp_fraction <= 1.0))
        throw InvalidArgument("restriction_norm_estimate: ramp_fraction must lie in (0, 1]");
    const double start = traj.times.front();
    const double horizon = traj.times.back() - start;
    if (!(horizon > 0.0))
        throw InvalidArgument("restriction_norm_estimate: trajectory spans no time");
    if (horizon > t_win / 4.0 + 1e-12)
        throw InvalidArgument("restriction_norm_estimate: horizon exceeds a quarter of the "
                              "window; enlarge t_win");
    const double ramp = ramp_fraction * horizon;
    const double h = traj.dt();
    const std::size_t n_seg = traj.states.size() - 1;
    const double offset = 0.5 * (t_win - horizon);
    SpaceTimeField out(traj.states.front().basis, t_win, n_t);
    for (int i = 0; i < n_t; ++i) {
        const double t = out.time(i) - offset;
        const double psi = smooth_cutoff(t, horizon, ramp);
        if (psi == 0.0) continue;
        SpectralField ext;
        if (t <= 0.0)
            ext = linear_flow(traj.states.front(), t);
        else if (t >= horizon)
            ext = linear_flow(traj.states.back(), t - horizon);
        else {
            std::size_t j = std::min(std::size_t(t / h), n_seg - 1);
            ext = linear_flow(traj.states[j], t - double(j) * h);
        }
        for (std::size_t k = 0; k < out.n_modes(); ++k) out.at(k, i) = psi * ext.coeffs[k];
    }
    return xsb_norm(out, s, b);
}

double duality_pairing_check(const SpaceTimeField& u, const SpaceTimeField& v,
                             double s, double b) {
    u.validate();
    v.validate();
    require_compatible(u, v, "duality_pairing_check");
    SpaceTimeField lv = apply_lambda_b(v, b);
    SpaceTimeField lu = apply_lambda_b(u, -b);
    const auto& modes = u.basis.modes();
    for (std::size_t k = 0; k < u.n_modes(); ++k) {
        const double wv = std::pow(bracket(modes[k].mu), 0.5 * s);
        const double wu = 1.0 / wv;
        for (int i = 0; i < u.n_t; ++i) {
            lv.at(k, i) *= wv;
            lu.at(k, i) *= wu;
        }
    }
    const cplx weighted = inner_spacetime(lv, lu);
    const cplx plain = inner_spacetime(v, u);
    return std::abs(weighted - plain);
}

} // namespace xsblab
