// Band-pair estimate laboratory: random band fields, bilinear / gradient
// space-time quadratures against closed-form single-mode values, dyadic
// exponent sweeps with log-log fits, fourth-power norm checks, admissible
// interpolation parameters, dyadic double-sum bounds, and the
// integration-by-parts identity for frequency-weighted triple products.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <algorithm>
#include <cmath>
#include <complex>
#include <vector>

#include "doctest.h"
#include "xsblab/errors.hpp"
#include "xsblab/estimates.hpp"
#include "xsblab/evolve.hpp"
#include "xsblab/manifold.hpp"
#include "xsblab/spectral_ops.hpp"

using namespace xsblab;

namespace {

constexpr double kPi = 3.14159265358979323846;

SpectralBasis rect_basis(double mu_max, Boundary bc = Boundary::Dirichlet) {
    return build_basis(ManifoldSpec::rectangle(kPi, kPi, bc), mu_max);
}

// Index of the mode with -Laplace eigenvalue lam (unique up to degeneracy;
// returns the first hit in basis order).
int mode_with_lambda(const SpectralBasis& b, double lam) {
    for (std::size_t k = 0; k < b.modes().size(); ++k)
        if (std::abs(b.modes()[k].mu * b.modes()[k].mu - lam) < 1e-9) return int(k);
    REQUIRE(false);
    return -1;
}

} // namespace

TEST_CASE("random band fields: normalization, support, seeding, variants") {
    auto b = rect_basis(16.0);

    SpectralField f = random_band_field(b, 2.0, 42);
    CHECK(l2_norm(f) == doctest::Approx(1.0).epsilon(1e-12));

    // Support lies in the closed band: projecting onto it is the identity.
    SpectralField pf = project_band(f, 2.0);
    double diff = 0.0;
    for (std::size_t k = 0; k < f.coeffs.size(); ++k)
        diff = std::max(diff, std::abs(f.coeffs[k] - pf.coeffs[k]));
    CHECK(diff == 0.0);

    // Deterministic per seed; different seeds give genuinely different fields.
    SpectralField f2 = random_band_field(b, 2.0, 42);
    for (std::size_t k = 0; k < f.coeffs.size(); ++k) CHECK(f.coeffs[k] == f2.coeffs[k]);
    SpectralField g = random_band_field(b, 2.0, 43);
    CHECK(std::abs(l2_inner(f, g)) < 1.0 - 1e-6);

    // Unimodular variant: every populated coefficient has one common modulus.
    SpectralField u = random_band_field(b, 2.0, 7, true);
    CHECK(l2_norm(u) == doctest::Approx(1.0).epsilon(1e-12));
    double mod = 0.0;
    int populated = 0;
    for (const auto& c : u.coeffs) {
        if (c == cplx{0.0, 0.0}) continue;
        if (populated == 0) mod = std::abs(c);
        CHECK(std::abs(c) == doctest::Approx(mod).epsilon(1e-12));
        ++populated;
    }
    CHECK(populated == int(band_modes(b, 2.0).size()));
    CHECK(populated >= 2);

    // Empty band and bands sticking out of the resolved range are rejected.
    CHECK_THROWS_AS((void)random_band_field(b, 0.5, 1), InvalidArgument);
    CHECK_THROWS_AS((void)random_band_field(b, 9.0, 1), InvalidArgument);
    CHECK_THROWS_AS((void)random_band_field(b, 0.0, 1), InvalidArgument);
}

TEST_CASE("bilinear quadrature: closed-form single-mode values") {
    auto b = rect_basis(16.0);
    SpectralField e11 = unit_mode(b, mode_with_lambda(b, 2.0));  // sin x sin y
    SpectralField e23 = unit_mode(b, mode_with_lambda(b, 13.0)); // sin 2x sin 3y

    // |e11|^4 integrates to 9/(4 pi^2); the free flow only rotates the
    // phase of a single mode, so the time integral is trivial.
    double delta = -1.0;
    CHECK(bilinear_lhs(e11, e11, 64, &delta) ==
          doctest::Approx(3.0 / (2.0 * kPi)).epsilon(1e-13));
    CHECK(delta <= 1e-14); // time-independent integrand: both rules agree

    // Distinct per-axis indices: int sin^2(ax) sin^2(cx) = pi/4 per factor,
    // so the product integral is exactly 1/pi^2.
    CHECK(bilinear_lhs(e23, e11) == doctest::Approx(1.0 / kPi).epsilon(1e-13));
    CHECK(bilinear_lhs(e11, e23) == doctest::Approx(1.0 / kPi).epsilon(1e-13));

    // Scaling in either slot is 1-homogeneous in modulus.
    SpectralField sf = (cplx{0.3, -0.4}) * e23; // modulus 1/2
    CHECK(bilinear_lhs(sf, e11) == doctest::Approx(0.5 / kPi).epsilon(1e-13));
    CHECK(bilinear_lhs(e11, sf) == doctest::Approx(0.5 / kPi).epsilon(1e-13));

    CHECK_THROWS_AS((void)bilinear_lhs(e11, e11, 32), InvalidArgument);
}

TEST_CASE("bilinear quadrature: time rule converges on band data") {
    auto b = rect_basis(16.0);
    SpectralField f = random_band_field(b, 2.0, 77);
    SpectralField h = random_band_field(b, 2.0, 78);

    // Genuinely time-dependent integrand: halving the rule at n_t = 4096
    // moves the value by < 1e-8, and refining further only shrinks it.
    double d4096 = -1.0, d8192 = -1.0;
    double v4096 = bilinear_lhs(f, h, 4096, &d4096);
    double v8192 = bilinear_lhs(f, h, 8192, &d8192);
    CHECK(d4096 > 0.0);
    CHECK(d4096 <= 1e-8);
    CHECK(d8192 <= d4096);
    CHECK(std::abs(v8192 - v4096) <= 1e-8);
}

TEST_CASE("gradient bilinear quadrature: closed forms and degeneracies") {
    auto b = rect_basis(16.0);
    SpectralField e11 = unit_mode(b, mode_with_lambda(b, 2.0));
    SpectralField e23 = unit_mode(b, mode_with_lambda(b, 13.0));

    // |grad e23|^2 against |e11|^2 with distinct per-axis indices gives
    // lambda/pi^2 exactly, so the ratio to the plain value is sqrt(lambda).
    CHECK(gradient_bilinear_lhs(e23, e11) ==
          doctest::Approx(std::sqrt(13.0) / kPi).epsilon(1e-13));
    CHECK(gradient_bilinear_lhs(e11, e23) ==
          doctest::Approx(std::sqrt(2.0) / kPi).epsilon(1e-13));
    CHECK(gradient_bilinear_lhs(e23, e11) / bilinear_lhs(e23, e11) ==
          doctest::Approx(std::sqrt(13.0)).epsilon(1e-12));

    // Modulus scaling in the gradient slot.
    SpectralField sf = (cplx{0.0, 0.5}) * e23;
    CHECK(gradient_bilinear_lhs(sf, e11) ==
          doctest::Approx(0.5 * std::sqrt(13.0) / kPi).epsilon(1e-13));

    // The constant mode of a Neumann box has zero gradient.
    auto bn = rect_basis(16.0, Boundary::Neumann);
    SpectralField cst = unit_mode(bn, mode_with_lambda(bn, 0.0));
    SpectralField h = random_band_field(bn, 2.0, 5);
    CHECK(gradient_bilinear_lhs(cst, h) == 0.0);
    CHECK(bilinear_lhs(cst, h) > 0.0);
}

TEST_CASE("fourth-power report: single-mode band is fully determined") {
    auto b = rect_basis(16.0);

    // The closed band [1,2] holds exactly one mode, so every unit draw is a
    // unimodular multiple of it and the report is seed-independent.
    CHECK(band_modes(b, 1.0).size() == 1);
    L4Report r = l4_check(b, 1.0, 4, 99);
    CHECK(r.trials == 4);
    CHECK(r.s == doctest::Approx(0.7));
    CHECK(r.max_ratio == doctest::Approx(3.0 / (2.0 * kPi)).epsilon(1e-12));
    CHECK(r.worst_consistency <= 1e-10);

    L4Report r2 = l4_check(b, 1.0, 4, 1234);
    CHECK(r2.max_ratio == doctest::Approx(r.max_ratio).epsilon(1e-12));

    // Multi-mode band: the fourth-power value must match the bilinear
    // quadrature applied to the field against itself.
    L4Report rm = l4_check(b, 2.0, 16, 99);
    CHECK(rm.max_ratio > 0.0);
    CHECK(rm.max_ratio < 10.0);
    CHECK(rm.worst_consistency <= 1e-10);

    CHECK_THROWS_AS((void)l4_check(b, 2.0, 0, 1), InvalidArgument);
    CHECK_THROWS_AS((void)l4_check(b, 2.0, 4, 1, 16), InvalidArgument);
}

TEST_CASE("band-pair sweep: fit, bookkeeping, determinism, rejections") {
    auto b = rect_basis(16.0);
    SweepConfig cfg;
    cfg.kind = SweepKind::Bilinear;
    cfg.levels = {2.0, 4.0, 8.0};
    cfg.trials = 4;
    cfg.seed = 31;

    SweepResult r = run_sweep(b, cfg);
    // Unordered triangle over three levels, four trials each.
    CHECK(r.samples.size() == 24);
    CHECK(r.fit.n_samples == 24);

    // Fitted growth rate in min(gamma, lambda) stays below 2/3 + 0.1.
    CHECK(r.fit.s_hat <= 2.0 / 3.0 + 0.1);
    CHECK(r.fit.c_hat > 0.0);
    CHECK(r.fit.residual >= 0.0);

    for (const auto& s : r.samples) {
        CHECK(s.gamma <= s.lambda); // symmetric kind enumerates the triangle
        CHECK(s.lhs > 0.0);
        CHECK(s.rhs_factor > 0.0);
        CHECK(s.ratio * s.rhs_factor == doctest::Approx(s.lhs).epsilon(1e-12));
        // rhs_factor carries min(gamma,lambda)^s times unit-norm products.
        CHECK(s.rhs_factor ==
              doctest::Approx(std::pow(std::min(s.gamma, s.lambda), cfg.s)).epsilon(1e-12));
    }

    // Bitwise deterministic rerun.
    SweepResult r2 = run_sweep(b, cfg);
    REQUIRE(r2.samples.size() == r.samples.size());
    for (std::size_t i = 0; i < r.samples.size(); ++i) {
        CHECK(r2.samples[i].lhs == r.samples[i].lhs);
        CHECK(r2.samples[i].ratio == r.samples[i].ratio);
        CHECK(r2.samples[i].seed == r.samples[i].seed);
    }
    CHECK(r2.fit.s_hat == r.fit.s_hat);
    CHECK(r2.fit.c_hat == r.fit.c_hat);

    // Max ratio at s = 0.75 is stable under doubling the trial count (the
    // first four trials are a prefix of the eight-trial run by seeding).
    double rmax4 = 0.0;
    for (const auto& s : r.samples) rmax4 = std::max(rmax4, s.ratio);
    SweepConfig cfg8 = cfg;
    cfg8.trials = 8;
    SweepResult r8 = run_sweep(b, cfg8);
    double rmax8 = 0.0;
    for (const auto& s : r8.samples) rmax8 = std::max(rmax8, s.ratio);
    CHECK(rmax8 >= rmax4 * (1.0 - 1e-12));
    CHECK(rmax8 <= rmax4 * 1.2);

    // Degenerate abscissa / too few trials / empty levels are rejected.
    SweepConfig bad = cfg;
    bad.levels = {4.0};
    CHECK_THROWS_AS((void)run_sweep(b, bad), InvalidArgument);
    bad = cfg;
    bad.trials = 3;
    CHECK_THROWS_AS((void)run_sweep(b, bad), InvalidArgument);
    bad = cfg;
    bad.levels.clear();
    CHECK_THROWS_AS((void)run_sweep(b, bad), InvalidArgument);
}

TEST_CASE("band-pair sweep: gradient slope matches the plain slope on shared fields") {
    auto b = rect_basis(16.0);
    SweepConfig cfg;
    cfg.levels = {2.0, 4.0, 8.0};
    cfg.trials = 4;
    cfg.seed = 31;

    cfg.kind = SweepKind::Bilinear;
    SweepResult rb = run_sweep(b, cfg);
    cfg.kind = SweepKind::GradientBilinear;
    SweepResult rg = run_sweep(b, cfg);

    // Gradient kinds run the full ordered grid.
    CHECK(rg.samples.size() == 36);
    CHECK(std::abs(rg.fit.s_hat - rb.fit.s_hat) <= 0.15);

    // On the triangle the gradient sweep reuses the plain sweep's fields, so
    // matched samples satisfy lhs_grad <= 2*lambda * lhs_plain (the gradient
    // factor lives on the band [lambda, 2*lambda]).
    for (const auto& sg : rg.samples) {
        if (sg.gamma > sg.lambda) continue;
        for (const auto& sb : rb.samples) {
            if (sb.gamma == sg.gamma && sb.lambda == sg.lambda && sb.trial == sg.trial) {
                CHECK(sg.seed == sb.seed);
                CHECK(sg.lhs <= 2.0 * sg.lambda * sb.lhs * (1.0 + 1e-9));
            }
        }
    }
}

TEST_CASE("band-pair sweep: windowed free-flow variant tracks the plain ratios") {
    auto b = rect_basis(16.0);
    SweepConfig cfg;
    cfg.levels = {2.0, 4.0};
    cfg.trials = 4;
    cfg.seed = 31;

    cfg.kind = SweepKind::Bilinear;
    SweepResult rb = run_sweep(b, cfg);
    cfg.kind = SweepKind::XsbBilinear;
    SweepResult rx = run_sweep(b, cfg);

    REQUIRE(rx.samples.size() == rb.samples.size());
    CHECK(rx.fit.s_hat <= 2.0 / 3.0 + 0.1);

    // Same bands, same seeds: the windowed-norm ratio differs from the plain
    // ratio only by the cutoff bookkeeping, uniformly over samples (+-30%).
    std::vector<double> quotient;
    for (std::size_t i = 0; i < rx.samples.size(); ++i) {
        CHECK(rx.samples[i].gamma == rb.samples[i].gamma);
        CHECK(rx.samples[i].lambda == rb.samples[i].lambda);
        CHECK(rx.samples[i].seed == rb.samples[i].seed);
        quotient.push_back(rx.samples[i].ratio / rb.samples[i].ratio);
    }
    double mean = 0.0;
    for (double q : quotient) mean += q;
    mean /= double(quotient.size());
    for (double q : quotient) {
        CHECK(q >= 0.7 * mean);
        CHECK(q <= 1.3 * mean);
    }

    // The gradient variant of the windowed sweep also fits and stays tame.
    cfg.kind = SweepKind::XsbGradient;
    SweepResult rxg = run_sweep(b, cfg);
    CHECK(rxg.samples.size() == 16);
    CHECK(std::abs(rxg.fit.s_hat - rx.fit.s_hat) <= 0.25);
}

TEST_CASE("interpolation parameters: frozen values and admissibility") {
    InterpolationParams p = interpolation_params(1.0);
    CHECK(p.delta == doctest::Approx(1.0 / 6.0).epsilon(1e-14));
    CHECK(p.theta == doctest::Approx(0.125).epsilon(1e-14));
    CHECK(p.epsilon == doctest::Approx(1.0 / 138.0).epsilon(1e-13));
    CHECK(p.b == doctest::Approx(0.5 + 1.0 / 138.0).epsilon(1e-14));
    CHECK(p.b_prime == doctest::Approx(0.5 - 2.0 / 138.0).epsilon(1e-14));

    // Structural inequalities across the admissible range.
    for (double sp : {0.67, 0.7, 0.8, 1.0, 1.3, 1.6, 1.9, 1.99}) {
        InterpolationParams q = interpolation_params(sp);
        CHECK(q.delta > 0.0);
        CHECK(q.theta > 0.0);
        CHECK(q.theta <= 0.5);
        CHECK(q.epsilon > 0.0);
        CHECK(q.b > 0.5);
        CHECK(q.b_prime < 0.5);
        CHECK(q.b_prime > 0.0);
        CHECK(q.b + q.b_prime < 1.0);
        // The two admissibility margins the constructor re-verifies:
        CHECK(sp > 1.5 * q.theta + (2.0 / 3.0 + q.delta) * (1.0 - q.theta));
        CHECK(q.b_prime > q.theta / 6.0 + q.b * (1.0 - q.theta));
    }

    CHECK_THROWS_AS((void)interpolation_params(2.0 / 3.0), InvalidArgument);
    CHECK_THROWS_AS((void)interpolation_params(2.0), InvalidArgument);
    CHECK_THROWS_AS((void)interpolation_params(0.1), InvalidArgument);
    CHECK_THROWS_AS((void)interpolation_params(5.0), InvalidArgument);
}

TEST_CASE("dyadic double sum: enumerated value, homogeneity, rejections") {
    // theta = gamma = 1, c = d = (1,1,1) over N in {1,2,4}: admissible pairs
    // are i <= j and the kernel sums to 1 + 1/2 + 1/4 + 1 + 1/2 + 1 = 4.25,
    // while |c||d| = 3.
    DyadicCheck d = dyadic_summation_check(1.0, 1.0, {1.0, 1.0, 1.0}, {1.0, 1.0, 1.0});
    CHECK(d.lhs == doctest::Approx(4.25).epsilon(1e-14));
    CHECK(d.rhs == doctest::Approx(3.0).epsilon(1e-14));
    CHECK(d.ratio == doctest::Approx(4.25 / 3.0).epsilon(1e-14));

    // Larger gamma admits more pairs, larger theta damps them.
    DyadicCheck wide = dyadic_summation_check(1.0, 4.0, {1.0, 1.0, 1.0}, {1.0, 1.0, 1.0});
    CHECK(wide.lhs > d.lhs);
    DyadicCheck damped = dyadic_summation_check(2.0, 1.0, {1.0, 1.0, 1.0}, {1.0, 1.0, 1.0});
    CHECK(damped.lhs < d.lhs);

    // Joint scaling of c leaves the ratio unchanged.
    DyadicCheck s = dyadic_summation_check(1.0, 1.0, {2.5, 2.5, 2.5}, {1.0, 1.0, 1.0});
    CHECK(s.ratio == doctest::Approx(d.ratio).epsilon(1e-13));

    // Zero sequences give a zero ratio rather than a division error.
    DyadicCheck z = dyadic_summation_check(1.0, 1.0, {0.0, 0.0}, {1.0, 1.0});
    CHECK(z.lhs == 0.0);
    CHECK(z.ratio == 0.0);

    CHECK_THROWS_AS((void)dyadic_summation_check(0.0, 1.0, {1.0}, {1.0}), InvalidArgument);
    CHECK_THROWS_AS((void)dyadic_summation_check(1.0, 0.0, {1.0}, {1.0}), InvalidArgument);
    CHECK_THROWS_AS((void)dyadic_summation_check(1.0, 1.0, {-1.0}, {1.0}), InvalidArgument);
    CHECK_THROWS_AS((void)dyadic_summation_check(1.0, 1.0, {1.0}, {}), InvalidArgument);
}

TEST_CASE("triple-product identity: residual is tiny on every domain") {
    const double tol = 1e-8; // expect machine-level agreement
    for (Boundary bc : {Boundary::Dirichlet, Boundary::Neumann}) {
        auto rect = rect_basis(16.0, bc);
        auto disk = build_basis(ManifoldSpec::unit_disk(bc), 16.0);
        for (const SpectralBasis* b : {&rect, &disk}) {
            CHECK(green_identity_check(*b, 2.0, 2.0, 2.0, 1234) <= tol);
            CHECK(green_identity_check(*b, 2.0, 4.0, 8.0, 77) <= tol);
            CHECK(green_identity_check(*b, 4.0, 8.0, 2.0, 91) <= tol);
            // Instantaneous variant (no time integral).
            CHECK(green_identity_check(*b, 2.0, 2.0, 2.0, 1234, 0.0, 1) <= tol);
        }
    }
}

TEST_CASE("triple-product identity: constant factor kills the Laplacian and gradient terms") {
    auto bn = rect_basis(16.0, Boundary::Neumann);
    SpectralField u0 = random_band_field(bn, 2.0, 5);
    SpectralField u1 = random_band_field(bn, 2.0, 6);
    SpectralField u2 = unit_mode(bn, mode_with_lambda(bn, 0.0)); // constant

    GreenParts parts;
    double resid = green_identity_residual(u0, u1, u2, 2.0, 0.5, 16, &parts);
    CHECK(resid <= 1e-10);
    CHECK(std::abs(parts.i1) <= 1e-14); // carries Laplacian of the constant
    CHECK(std::abs(parts.i3) <= 1e-14); // carries its gradient
    CHECK(std::abs(parts.i2) > 1e-6);   // the surviving term balances alone
    CHECK(std::abs(parts.direct - parts.i2) <= 1e-12);

    // Mismatched bases and bad windows are rejected.
    auto other = rect_basis(16.0, Boundary::Dirichlet);
    SpectralField w = random_band_field(other, 2.0, 6);
    CHECK_THROWS_AS((void)green_identity_residual(u0, u1, w, 2.0), InvalidArgument);
    CHECK_THROWS_AS((void)green_identity_residual(u0, u1, u2, 2.0, -0.5), InvalidArgument);
    CHECK_THROWS_AS((void)green_identity_residual(u0, u1, u2, 2.0, 0.5, 0), InvalidArgument);
}
