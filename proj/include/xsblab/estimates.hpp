#pragma once

#include <cstdint>
#include <vector>

#include "xsblab/field.hpp"
#include "xsblab/spacetime.hpp"

namespace xsblab {

// Unit-L2 field with independent complex Gaussian coefficients on the closed
// dyadic band [level, 2*level] and zeros elsewhere; deterministic per seed.
// With unimodular = true the coefficients have unit modulus and random phase
// instead (sensitivity variant).
SpectralField random_band_field(const SpectralBasis& basis, double level,
                                std::uint64_t seed, bool unimodular = false);

// sqrt( int_0^1 int_M |e^{itD}f|^2 |e^{itD}h|^2 ) by uniform trapezoid in
// time (n_t subintervals, n_t >= 64) and the basis quadrature grid in space.
// The spatial rule is exact for these quartic products whenever both fields
// fit the basis; under-resolved supports are rejected.  convergence_delta,
// when given, receives the change against the half-resolution time rule.
double bilinear_lhs(const SpectralField& f, const SpectralField& h, int n_t = 64,
                    double* convergence_delta = nullptr);

// Same with the first factor replaced by the metric length of its gradient:
// sqrt( int_0^1 int_M |grad e^{itD}f|_g^2 |e^{itD}h|^2 ).
double gradient_bilinear_lhs(const SpectralField& f, const SpectralField& h, int n_t = 64,
                             double* convergence_delta = nullptr);

struct EstimateSample {
    double gamma = 0.0;      // band level of the plain factor h
    double lambda = 0.0;     // band level of the (gradient-carrying) factor f
    double lhs = 0.0;
    double rhs_factor = 0.0; // min(gamma,lambda)^s * norm product (* lambda if gradient)
    double ratio = 0.0;      // lhs / rhs_factor
    std::uint64_t seed = 0;  // the per-pair seed the fields were drawn from
    int trial = 0;
};

struct ExponentFit {
    double s_hat = 0.0;
    double c_hat = 0.0;
    double residual = 0.0; // RMS of the log-space fit
    int n_samples = 0;
};

enum class SweepKind { Bilinear, GradientBilinear, XsbBilinear, XsbGradient };

struct SweepConfig {
    SweepKind kind = SweepKind::Bilinear;
    double s = 0.75;                          // exponent applied to min(gamma, lambda)
    std::vector<double> levels{4.0, 8.0, 16.0, 32.0, 64.0};
    int trials = 8;                           // >= 4
    std::uint64_t seed = 1;
    int n_t = 64;                             // time samples for the [0,1] quadrature
    double b = 0.55;                          // modulation exponent, xsb kinds
    double t_win = 4.0;                       // periodic window, xsb kinds
};

struct SweepResult {
    std::vector<EstimateSample> samples;
    ExponentFit fit;
};

// Measures lhs/rhs over dyadic band pairs and trials and fits
// log(lhs / rhs_base) = log c_hat + s_hat * log(min(gamma, lambda)).
// Symmetric kinds run the unordered triangle gamma <= lambda; gradient kinds
// run the full ordered grid.  Per-sample seeds derive from
// (master seed, band bits, trial) so results are schedule-independent, and
// the h/f slots of the gradient kinds reuse the bilinear fields on the
// triangle so fitted slopes are comparable on matched data.
SweepResult run_sweep(const SpectralBasis& basis, const SweepConfig& cfg);

struct L4Report {
    double s = 0.7;
    double max_ratio = 0.0;          // max over trials of l4^2 / (level^s |f|^2)
    double worst_consistency = 0.0;  // max |l4^2 - bilinear_lhs(f,f)|
    int trials = 0;
};
// Fourth-power space-time norm of the free flow of random band fields.
L4Report l4_check(const SpectralBasis& basis, double level, int trials,
                  std::uint64_t seed, int n_t = 64);

struct InterpolationParams {
    double delta = 0.0;
    double theta = 0.0;
    double epsilon = 0.0;
    double b = 0.0;
    double b_prime = 0.0;
};
// Deterministic admissible parameter tuple for 2/3 < s_prime < 2: delta is
// half the excess over 2/3, theta the midpoint of its admissible interval,
// epsilon = theta / (2(9 - 3 theta)), b = 1/2 + epsilon, b' = 1/2 - 2 epsilon.
// The two defining inequalities are re-verified before returning.
InterpolationParams interpolation_params(double s_prime);

struct DyadicCheck {
    double lhs = 0.0;
    double rhs = 0.0;
    double ratio = 0.0;
};
// lhs = sum over dyadic pairs N = 2^i, N' = 2^j with N <= gamma N' of
// (N/N')^theta c_i d_j; rhs = |c|_2 |d|_2.  c and d are indexed by i from
// N = 1.  Entries must be nonnegative.
DyadicCheck dyadic_summation_check(double theta, double gamma,
                                   const std::vector<double>& c,
                                   const std::vector<double>& d);

struct GreenParts {
    cplx direct{0.0, 0.0}; // time integral of int_M u1 u2 conj(u0)
    cplx i1{0.0, 0.0};     // term carrying u1 * (Laplacian u2)
    cplx i2{0.0, 0.0};     // term carrying u2 * (Laplacian u1)
    cplx i3{0.0, 0.0};     // term carrying the metric gradient pairing
};

// Core of the integration-by-parts identity check: with u0 supported on the
// band [n0, 2*n0] and all three fields evolved by the linear flow, compares
//   int_0^t_win int_M u1 u2 conj(u0)
// against the three-term decomposition obtained by writing u0 through the
// band rescaling operator and moving the Laplacian onto u1 u2.  Both sides
// use the same trapezoid rule in time (t_win = 0 evaluates the identity at
// the initial instant only); returns |direct - (i1+i2+i3)| / (1 + |direct|).
double green_identity_residual(const SpectralField& u0, const SpectralField& u1,
                               const SpectralField& u2, double n0, double t_win = 0.5,
                               int n_t = 16, GreenParts* parts = nullptr);

// Convenience wrapper drawing the three fields at random from the closed
// bands [n0,2n0], [n1,2n1], [n2,2n2].
double green_identity_check(const SpectralBasis& basis, double n0, double n1, double n2,
                            std::uint64_t seed, double t_win = 0.5, int n_t = 16);

} // namespace xsblab
