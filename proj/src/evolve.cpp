#include "xsblab/evolve.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "xsblab/errors.hpp"
#include "xsblab/spectral_ops.hpp"

namespace xsblab {

namespace {

bool finite(const cplx& z) {
    return std::isfinite(z.real()) && std::isfinite(z.imag());
}

double coeff_norm(const std::vector<cplx>& c) {
    double acc = 0.0;
    for (const cplx& z : c) acc += std::norm(z);
    return std::sqrt(acc);
}

// Applies the quadratic combination and the exact projection on raw
// coefficient vectors; shared by nonlinearity() and the split-step substep.
class QuadraticRhs {
public:
    QuadraticRhs(const SpectralBasis& basis, const EvolutionParams& p)
        : basis_(basis), alpha_(p.alpha), beta_(p.beta), gamma_(p.gamma),
          nodal_(basis.n_nodes()), product_(basis.n_nodes()) {}

    bool trivial() const {
        return alpha_ == cplx{0.0, 0.0} && beta_ == cplx{0.0, 0.0} &&
               gamma_ == cplx{0.0, 0.0};
    }

    // out = coefficients of Q(u) for the field with coefficients c.
    void project_q(const std::vector<cplx>& c, std::vector<cplx>& out) {
        if (trivial()) {
            out.assign(c.size(), cplx{0.0, 0.0});
            return;
        }
        basis_.synthesize(c.data(), nodal_.data());
        for (std::size_t i = 0; i < nodal_.size(); ++i) {
            const cplx w = nodal_[i];
            const cplx w2 = w * w;
            product_[i] = alpha_ * w2 + beta_ * std::conj(w2) +
                          gamma_ * cplx{std::norm(w), 0.0};
        }
        out.resize(c.size());
        basis_.analyze_quadratic(product_.data(), out.data());
    }

    // out = -i Q(u): the right-hand side of dc/dt = -i Qhat(c).
    void ode_rhs(const std::vector<cplx>& c, std::vector<cplx>& out) {
        project_q(c, out);
        for (cplx& z : out) z = cplx{z.imag(), -z.real()};
    }

private:
    SpectralBasis basis_;
    cplx alpha_, beta_, gamma_;
    std::vector<cplx> nodal_;
    std::vector<cplx> product_;
};

void apply_phases(const std::vector<EigenMode>& modes, double t,
                  std::vector<cplx>& c) {
    for (std::size_t k = 0; k < c.size(); ++k) {
        const double ang = -modes[k].lambda * t;
        c[k] *= cplx{std::cos(ang), std::sin(ang)};
    }
}

// One classical 4th-order step of size h for dc/dt = rhs(c).
void rk4_step(QuadraticRhs& rhs, std::vector<cplx>& c, double h,
              std::vector<cplx>& k1, std::vector<cplx>& k2,
              std::vector<cplx>& k3, std::vector<cplx>& k4,
              std::vector<cplx>& scratch) {
    const std::size_t n = c.size();
    rhs.ode_rhs(c, k1);
    scratch.resize(n);
    for (std::size_t j = 0; j < n; ++j) scratch[j] = c[j] + 0.5 * h * k1[j];
    rhs.ode_rhs(scratch, k2);
    for (std::size_t j = 0; j < n; ++j) scratch[j] = c[j] + 0.5 * h * k2[j];
    rhs.ode_rhs(scratch, k3);
    for (std::size_t j = 0; j < n; ++j) scratch[j] = c[j] + h * k3[j];
    rhs.ode_rhs(scratch, k4);
    const double w = h / 6.0;
    for (std::size_t j = 0; j < n; ++j) {
        c[j] += w * (k1[j] + 2.0 * k2[j] + 2.0 * k3[j] + k4[j]);
    }
}

double support_mu_top(const SpectralField& u) {
    const auto& modes = u.basis.modes();
    double top = 0.0;
    for (std::size_t k = 0; k < u.coeffs.size(); ++k) {
        if (u.coeffs[k] != cplx{0.0, 0.0}) top = std::max(top, modes[k].mu);
    }
    return top;
}

} // namespace

void EvolutionParams::validate() const {
    if (!(dt > 0.0) || !std::isfinite(dt)) {
        throw InvalidArgument("EvolutionParams: dt must be positive and finite");
    }
    if (n_steps < 1) {
        throw InvalidArgument("EvolutionParams: n_steps must be at least 1");
    }
    for (const cplx& z : {alpha, beta, gamma}) {
        if (!finite(z)) {
            throw InvalidArgument("EvolutionParams: nonlinearity coefficients must be finite");
        }
    }
}

double Trajectory::dt() const {
    if (times.size() < 2) return 0.0;
    return times[1] - times[0];
}

void Trajectory::validate() const {
    if (times.size() != states.size()) {
        throw InvalidArgument("Trajectory: times/states length mismatch");
    }
    if (times.size() < 2) return;
    const double h = times[1] - times[0];
    if (!(h > 0.0)) throw InvalidArgument("Trajectory: times must increase");
    for (std::size_t i = 1; i < times.size(); ++i) {
        if (std::abs((times[i] - times[i - 1]) - h) > 1e-12 * std::max(1.0, h)) {
            throw InvalidArgument("Trajectory: time grid must be uniform");
        }
        if (!states[i].basis.same_as(states[0].basis)) {
            throw InvalidArgument("Trajectory: states must share one basis");
        }
    }
}

SpectralField linear_flow(const SpectralField& u, double t) {
    u.validate();
    if (!std::isfinite(t)) throw InvalidArgument("linear_flow: t must be finite");
    SpectralField out = u;
    apply_phases(u.basis.modes(), t, out.coeffs);
    return out;
}

SpectralField nonlinearity(const SpectralField& u, const EvolutionParams& p) {
    u.validate();
    p.validate();
    const double top = support_mu_top(u);
    if (u.basis.grid().exactness_mu + 1e-9 < 2.0 * top) {
        throw NumericError("nonlinearity: grid not exact for quadratic products of the field's support");
    }
    QuadraticRhs rhs(u.basis, p);
    SpectralField out(u.basis);
    rhs.project_q(u.coeffs, out.coeffs);
    return out;
}

Trajectory split_step_evolve(const SpectralField& u0, const EvolutionParams& p) {
    u0.validate();
    p.validate();

    Trajectory traj;
    traj.times.reserve(std::size_t(p.n_steps) + 1);
    traj.states.reserve(std::size_t(p.n_steps) + 1);
    traj.times.push_back(0.0);
    traj.states.push_back(u0);

    QuadraticRhs rhs(u0.basis, p);
    const auto& modes = u0.basis.modes();
    std::vector<cplx> c = u0.coeffs;
    std::vector<cplx> k1, k2, k3, k4, scratch;

    for (int step = 0; step < p.n_steps; ++step) {
        apply_phases(modes, 0.5 * p.dt, c);
        if (!rhs.trivial()) {
            rk4_step(rhs, c, 0.5 * p.dt, k1, k2, k3, k4, scratch);
            rk4_step(rhs, c, 0.5 * p.dt, k1, k2, k3, k4, scratch);
        }
        apply_phases(modes, 0.5 * p.dt, c);

        const double t = p.dt * double(step + 1);
        const double norm = coeff_norm(c);
        if (!std::isfinite(norm)) {
            throw NumericError("split_step_evolve: non-finite state at t=" + std::to_string(t));
        }
        if (norm > kBlowUpNorm) {
            throw BlowUpError("split_step_evolve: L2 norm " + std::to_string(norm) +
                                  " passed the blow-up threshold at t=" + std::to_string(t),
                              step + 1, t, norm);
        }
        traj.times.push_back(t);
        traj.states.emplace_back(u0.basis, c);
    }
    return traj;
}

PicardResult picard_solve(const SpectralField& u0, const EvolutionParams& p,
                          double T, int n_iter, double s, double stop_tol) {
    u0.validate();
    p.validate();
    if (!(T > 0.0) || T > 1.0) {
        throw InvalidArgument("picard_solve: requires 0 < T <= 1");
    }
    if (n_iter < 1) throw InvalidArgument("picard_solve: n_iter must be >= 1");
    const double steps_real = T / p.dt;
    const int n = int(std::lround(steps_real));
    if (n < 1 || std::abs(double(n) * p.dt - T) > 1e-9 * std::max(1.0, T)) {
        throw InvalidArgument("picard_solve: dt must divide the horizon T");
    }
    const double h = p.dt;
    const auto& modes = u0.basis.modes();
    const std::size_t nm = u0.coeffs.size();

    // free evolution: both the first iterate and the inhomogeneous term
    std::vector<std::vector<cplx>> free_states(std::size_t(n) + 1);
    for (int i = 0; i <= n; ++i) {
        free_states[std::size_t(i)] = u0.coeffs;
        apply_phases(modes, h * double(i), free_states[std::size_t(i)]);
    }

    std::vector<std::vector<cplx>> cur = free_states;
    std::vector<std::vector<cplx>> q(std::size_t(n) + 1);
    QuadraticRhs rhs(u0.basis, p);

    ContractionReport report;
    report.s = s;
    report.stop_tol = stop_tol;
    int rising = 0;

    for (int iter = 0; iter < n_iter; ++iter) {
        // Q along the current iterate; nodes are independent.
        #pragma omp parallel for schedule(static)
        for (int i = 0; i <= n; ++i) {
            QuadraticRhs local(u0.basis, p);
            local.project_q(cur[std::size_t(i)], q[std::size_t(i)]);
        }

        // K_i = e^{ih Laplace}(K_{i-1} + h/2 Q_{i-1}) + h/2 Q_i  (trapezoid)
        std::vector<cplx> kacc(nm, cplx{0.0, 0.0});
        double gap_l2 = 0.0, gap_hs = 0.0;
        std::vector<std::vector<cplx>> next(std::size_t(n) + 1);
        next[0] = u0.coeffs;
        for (int i = 1; i <= n; ++i) {
            for (std::size_t k = 0; k < nm; ++k) {
                kacc[k] += 0.5 * h * q[std::size_t(i - 1)][k];
            }
            apply_phases(modes, h, kacc);
            for (std::size_t k = 0; k < nm; ++k) {
                kacc[k] += 0.5 * h * q[std::size_t(i)][k];
            }
            auto& out = next[std::size_t(i)];
            out.resize(nm);
            for (std::size_t k = 0; k < nm; ++k) {
                // free part - i * Duhamel integral
                out[k] = free_states[std::size_t(i)][k] +
                         cplx{kacc[k].imag(), -kacc[k].real()};
            }
        }

        for (int i = 0; i <= n; ++i) {
            double a2 = 0.0, ah = 0.0;
            for (std::size_t k = 0; k < nm; ++k) {
                const cplx d = next[std::size_t(i)][k] - cur[std::size_t(i)][k];
                const double mu = modes[k].mu;
                const double w = std::pow(1.0 + mu * mu, s); // <mu>^{2s}
                a2 += std::norm(d);
                ah += w * std::norm(d);
            }
            gap_l2 = std::max(gap_l2, std::sqrt(a2));
            gap_hs = std::max(gap_hs, std::sqrt(ah));
        }

        cur.swap(next);
        report.iterations = iter + 1;
        report.d_l2.push_back(gap_l2);
        report.d_hs.push_back(gap_hs);

        if (!std::isfinite(gap_hs)) {
            report.contracting = false;
            break;
        }
        const std::size_t m = report.d_hs.size();
        if (m >= 2 && report.d_hs[m - 1] > report.d_hs[m - 2]) {
            if (++rising >= 3) {
                report.contracting = false;
                break;
            }
        } else {
            rising = 0;
        }
        if (gap_hs <= stop_tol) break;
    }

    // median of successive gap ratios
    auto median_ratio = [](const std::vector<double>& d) {
        std::vector<double> r;
        for (std::size_t j = 0; j + 1 < d.size(); ++j) {
            if (d[j] > 0.0 && std::isfinite(d[j + 1] / d[j])) {
                r.push_back(d[j + 1] / d[j]);
            }
        }
        if (r.empty()) return 0.0;
        std::sort(r.begin(), r.end());
        const std::size_t m = r.size();
        return (m % 2 == 1) ? r[m / 2] : 0.5 * (r[m / 2 - 1] + r[m / 2]);
    };
    report.kappa = median_ratio(report.d_hs);
    report.kappa_l2 = median_ratio(report.d_l2);

    PicardResult result;
    result.report = report;
    result.trajectory.times.resize(std::size_t(n) + 1);
    result.trajectory.states.reserve(std::size_t(n) + 1);
    for (int i = 0; i <= n; ++i) {
        result.trajectory.times[std::size_t(i)] = h * double(i);
        result.trajectory.states.emplace_back(u0.basis, std::move(cur[std::size_t(i)]));
    }
    return result;
}

double mass(const SpectralField& u) {
    const double n = l2_norm(u);
    return n * n;
}

double energy_gradient(const SpectralField& u) {
    u.validate();
    const std::size_t n = u.basis.n_nodes();
    std::vector<cplx> g0(n), g1(n);
    u.basis.synthesize_gradient(u.coeffs.data(), g0.data(), g1.data());
    const auto& w = u.basis.grid().weight;
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        acc += w[i] * (std::norm(g0[i]) + std::norm(g1[i]));
    }
    return acc;
}

double lipschitz_probe(const SpectralField& u0, const SpectralField& v0,
                       const EvolutionParams& p, double T, int n_iter, double s) {
    require_same_basis(u0, v0, "lipschitz_probe");
    double denom = sobolev_norm(u0 - v0, s);
    if (denom < 1e-300) return 0.0;
    PicardResult a = picard_solve(u0, p, T, n_iter, s);
    PicardResult b = picard_solve(v0, p, T, n_iter, s);
    double sup = 0.0;
    for (std::size_t i = 0; i < a.trajectory.states.size(); ++i) {
        sup = std::max(sup, sobolev_norm(a.trajectory.states[i] - b.trajectory.states[i], s));
    }
    return sup / denom;
}

} // namespace xsblab
