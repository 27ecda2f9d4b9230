#include "xsblab/estimates.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <vector>

#include "xsblab/errors.hpp"
#include "xsblab/evolve.hpp"
#include "xsblab/rng.hpp"
#include "xsblab/spectral_ops.hpp"

namespace xsblab {

namespace {

double support_top(const SpectralField& u) {
    const auto& modes = u.basis.modes();
    double top = 0.0;
    for (std::size_t k = 0; k < u.coeffs.size(); ++k)
        if (u.coeffs[k] != cplx{0.0, 0.0}) top = std::max(top, modes[k].mu);
    return top;
}

void require_product_resolved(const SpectralField& f, const SpectralField& h, const char* who) {
    const double budget = 3.0 * f.basis.grid().exactness_mu;
    if (2.0 * (support_top(f) + support_top(h)) > budget + 1e-9)
        throw InvalidArgument(std::string(who) +
                              ": quartic product exceeds the exact-quadrature budget of the grid");
}

// Integrand samples S_i at t_i = i / n_t for i = 0..n_t, combined by the
// trapezoid rule; the half-resolution value reuses the even samples.
struct TimeQuadrature {
    std::vector<double> samples;
    double full() const {
        double acc = 0.5 * (samples.front() + samples.back());
        for (std::size_t i = 1; i + 1 < samples.size(); ++i) acc += samples[i];
        return acc / double(samples.size() - 1);
    }
    double half() const {
        double acc = 0.5 * (samples.front() + samples.back());
        for (std::size_t i = 2; i + 2 < samples.size(); i += 2) acc += samples[i];
        return acc / (double(samples.size() - 1) / 2.0);
    }
};

double quartic_time_integral(const SpectralField& f, const SpectralField& h, int n_t,
                             bool grad_on_f, double* convergence_delta) {
    require_same_basis(f, h, grad_on_f ? "gradient_bilinear_lhs" : "bilinear_lhs");
    if (n_t < 64) throw InvalidArgument("bilinear time quadrature needs n_t >= 64");
    require_product_resolved(f, h, grad_on_f ? "gradient_bilinear_lhs" : "bilinear_lhs");

    const auto& grid = f.basis.grid();
    const std::size_t n_nodes = grid.size();
    TimeQuadrature tq;
    tq.samples.assign(std::size_t(n_t) + 1, 0.0);

#pragma omp parallel for schedule(static)
    for (int i = 0; i <= n_t; ++i) {
        const double t = double(i) / double(n_t);
        SpectralField ft = linear_flow(f, t);
        SpectralField ht = linear_flow(h, t);
        std::vector<cplx> hv = h.basis.synthesize(ht.coeffs);
        double acc = 0.0;
        if (grad_on_f) {
            std::vector<cplx> g0(n_nodes), g1(n_nodes);
            f.basis.synthesize_gradient(ft.coeffs.data(), g0.data(), g1.data());
            for (std::size_t x = 0; x < n_nodes; ++x)
                acc += grid.weight[x] * (std::norm(g0[x]) + std::norm(g1[x])) * std::norm(hv[x]);
        } else {
            std::vector<cplx> fv = f.basis.synthesize(ft.coeffs);
            for (std::size_t x = 0; x < n_nodes; ++x)
                acc += grid.weight[x] * std::norm(fv[x]) * std::norm(hv[x]);
        }
        tq.samples[std::size_t(i)] = acc;
    }

    const double full = std::sqrt(std::max(0.0, tq.full()));
    if (convergence_delta) *convergence_delta = std::abs(full - std::sqrt(std::max(0.0, tq.half())));
    return full;
}

} // namespace

SpectralField random_band_field(const SpectralBasis& basis, double level, std::uint64_t seed,
                                bool unimodular) {
    if (!(level > 0.0)) throw InvalidArgument("random_band_field: level must be positive");
    if (2.0 * level > basis.mu_max() + 1e-9)
        throw InvalidArgument("random_band_field: band [level, 2*level] exceeds the basis");
    auto idx = band_modes(basis, level, BandEdges::Closed);
    if (idx.empty()) throw InvalidArgument("random_band_field: the band holds no modes");
    Rng rng(seed);
    SpectralField u(basis);
    for (int k : idx) {
        if (unimodular) {
            const double ang = 2.0 * 3.14159265358979323846 * rng.uniform();
            u.coeffs[std::size_t(k)] = cplx{std::cos(ang), std::sin(ang)};
        } else {
            u.coeffs[std::size_t(k)] = rng.normal_complex();
        }
    }
    const double n = l2_norm(u);
    for (auto& c : u.coeffs) c *= 1.0 / n;
    return u;
}

double bilinear_lhs(const SpectralField& f, const SpectralField& h, int n_t,
                    double* convergence_delta) {
    return quartic_time_integral(f, h, n_t, false, convergence_delta);
}

double gradient_bilinear_lhs(const SpectralField& f, const SpectralField& h, int n_t,
                             double* convergence_delta) {
    return quartic_time_integral(f, h, n_t, true, convergence_delta);
}

L4Report l4_check(const SpectralBasis& basis, double level, int trials, std::uint64_t seed,
                  int n_t) {
    if (trials < 1) throw InvalidArgument("l4_check: need at least one trial");
    if (n_t < 64) throw InvalidArgument("l4_check: time quadrature needs n_t >= 64");
    L4Report rep;
    rep.trials = trials;
    const auto& grid = basis.grid();
    for (int trial = 0; trial < trials; ++trial) {
        SpectralField f = random_band_field(basis, level, derive_seed({seed, std::uint64_t(trial)}));
        // fourth-power space-time integral of the free flow
        std::vector<double> samples(std::size_t(n_t) + 1, 0.0);
#pragma omp parallel for schedule(static)
        for (int i = 0; i <= n_t; ++i) {
            const double t = double(i) / double(n_t);
            SpectralField ft = linear_flow(f, t);
            std::vector<cplx> fv = basis.synthesize(ft.coeffs);
            double acc = 0.0;
            for (std::size_t x = 0; x < grid.size(); ++x) {
                const double m2 = std::norm(fv[x]);
                acc += grid.weight[x] * m2 * m2;
            }
            samples[std::size_t(i)] = acc;
        }
        double integral = 0.5 * (samples.front() + samples.back());
        for (int i = 1; i < n_t; ++i) integral += samples[std::size_t(i)];
        integral /= double(n_t);

        const double l4_sq = std::sqrt(integral); // squared L^4 norm
        const double bil = bilinear_lhs(f, f, n_t);
        rep.worst_consistency = std::max(rep.worst_consistency, std::abs(l4_sq - bil));
        const double nf = l2_norm(f);
        rep.max_ratio = std::max(rep.max_ratio, l4_sq / (std::pow(level, rep.s) * nf * nf));
    }
    return rep;
}

InterpolationParams interpolation_params(double s_prime) {
    const double s0 = 2.0 / 3.0;
    if (!(s_prime > s0) || !(s_prime < 2.0))
        throw InvalidArgument("interpolation_params: s_prime must lie strictly in (2/3, 2)");
    InterpolationParams p;
    p.delta = 0.5 * (s_prime - s0);
    const double gap = 5.0 / 6.0 - p.delta;
    const double bound = (gap > 0.0) ? std::min(1.0, p.delta / gap) : 1.0;
    p.theta = 0.5 * bound;
    p.epsilon = p.theta / (2.0 * (9.0 - 3.0 * p.theta));
    p.b = 0.5 + p.epsilon;
    p.b_prime = 0.5 - 2.0 * p.epsilon;
    const bool first = s_prime > 1.5 * p.theta + (s0 + p.delta) * (1.0 - p.theta);
    const bool second = p.b_prime > p.theta / 6.0 + p.b * (1.0 - p.theta);
    if (!first || !second)
        throw NumericError("interpolation_params: constructed tuple failed verification");
    return p;
}

DyadicCheck dyadic_summation_check(double theta, double gamma, const std::vector<double>& c,
                                   const std::vector<double>& d) {
    if (!(theta > 0.0) || !(gamma > 0.0))
        throw InvalidArgument("dyadic_summation_check: theta and gamma must be positive");
    if (c.empty() || d.empty())
        throw InvalidArgument("dyadic_summation_check: sequences must be non-empty");
    for (double v : c)
        if (v < 0.0) throw InvalidArgument("dyadic_summation_check: negative entry in c");
    for (double v : d)
        if (v < 0.0) throw InvalidArgument("dyadic_summation_check: negative entry in d");
    DyadicCheck out;
    for (std::size_t i = 0; i < c.size(); ++i) {
        const double n_i = std::ldexp(1.0, int(i));
        for (std::size_t j = 0; j < d.size(); ++j) {
            const double n_j = std::ldexp(1.0, int(j));
            if (n_i <= gamma * n_j) out.lhs += std::pow(n_i / n_j, theta) * c[i] * d[j];
        }
    }
    double c2 = 0.0, d2 = 0.0;
    for (double v : c) c2 += v * v;
    for (double v : d) d2 += v * v;
    out.rhs = std::sqrt(c2) * std::sqrt(d2);
    out.ratio = (out.rhs > 0.0) ? out.lhs / out.rhs : 0.0;
    return out;
}

double green_identity_residual(const SpectralField& u0, const SpectralField& u1,
                               const SpectralField& u2, double n0, double t_win, int n_t,
                               GreenParts* parts) {
    if (t_win < 0.0) throw InvalidArgument("green_identity_residual: negative window");
    if (n_t < 1) throw InvalidArgument("green_identity_residual: need n_t >= 1");
    require_same_basis(u0, u1, "green_identity_residual");
    require_same_basis(u0, u2, "green_identity_residual");
    const SpectralBasis& basis = u0.basis;
    SpectralField tu0 = apply_T(u0, n0);

    const std::size_t n_nodes = basis.grid().size();
    const double inv_n0sq = 1.0 / (n0 * n0);
    const int n_samples = (t_win == 0.0) ? 1 : n_t + 1;

    const auto n_samp = static_cast<std::size_t>(n_samples);
    std::vector<cplx> direct(n_samp), term1(n_samp), term2(n_samp), term3(n_samp);

#pragma omp parallel for schedule(static)
    for (int i = 0; i < n_samples; ++i) {
        const double t = (t_win == 0.0) ? 0.0 : t_win * double(i) / double(n_t);
        SpectralField u0t = linear_flow(u0, t);
        SpectralField u1t = linear_flow(u1, t);
        SpectralField u2t = linear_flow(u2, t);
        SpectralField tu0t = linear_flow(tu0, t);

        std::vector<cplx> w1 = basis.synthesize(u1t.coeffs);
        std::vector<cplx> w2 = basis.synthesize(u2t.coeffs);
        std::vector<cplx> l1 = basis.synthesize(laplacian(u1t).coeffs);
        std::vector<cplx> l2v = basis.synthesize(laplacian(u2t).coeffs);
        std::vector<cplx> g10(n_nodes), g11(n_nodes), g20(n_nodes), g21(n_nodes);
        basis.synthesize_gradient(u1t.coeffs.data(), g10.data(), g11.data());
        basis.synthesize_gradient(u2t.coeffs.data(), g20.data(), g21.data());

        std::vector<cplx> prod(n_nodes);
        auto pair_with = [&](const std::vector<cplx>& nodal, const SpectralField& against) {
            std::vector<cplx> proj = basis.analyze_quadratic(nodal);
            cplx acc{0.0, 0.0};
            for (std::size_t k = 0; k < proj.size(); ++k)
                acc += proj[k] * std::conj(against.coeffs[k]);
            return acc;
        };

        for (std::size_t x = 0; x < n_nodes; ++x) prod[x] = w1[x] * w2[x];
        direct[std::size_t(i)] = pair_with(prod, u0t);

        for (std::size_t x = 0; x < n_nodes; ++x) prod[x] = w1[x] * l2v[x];
        term1[std::size_t(i)] = -inv_n0sq * pair_with(prod, tu0t);
        for (std::size_t x = 0; x < n_nodes; ++x) prod[x] = w2[x] * l1[x];
        term2[std::size_t(i)] = -inv_n0sq * pair_with(prod, tu0t);
        for (std::size_t x = 0; x < n_nodes; ++x)
            prod[x] = g10[x] * g20[x] + g11[x] * g21[x];
        term3[std::size_t(i)] = -2.0 * inv_n0sq * pair_with(prod, tu0t);
    }

    auto trapezoid = [&](const std::vector<cplx>& s) {
        if (s.size() == 1) return s[0];
        cplx acc = 0.5 * (s.front() + s.back());
        for (std::size_t i = 1; i + 1 < s.size(); ++i) acc += s[i];
        return acc * (t_win / double(n_t));
    };
    const cplx di = trapezoid(direct);
    const cplx t1 = trapezoid(term1);
    const cplx t2 = trapezoid(term2);
    const cplx t3 = trapezoid(term3);
    if (parts != nullptr) *parts = GreenParts{di, t1, t2, t3};
    return std::abs(di - (t1 + t2 + t3)) / (1.0 + std::abs(di));
}

double green_identity_check(const SpectralBasis& basis, double n0, double n1, double n2,
                            std::uint64_t seed, double t_win, int n_t) {
    SpectralField u0 = random_band_field(basis, n0, derive_seed({seed, 0}));
    SpectralField u1 = random_band_field(basis, n1, derive_seed({seed, 1}));
    SpectralField u2 = random_band_field(basis, n2, derive_seed({seed, 2}));
    return green_identity_residual(u0, u1, u2, n0, t_win, n_t);
}

} // namespace xsblab
