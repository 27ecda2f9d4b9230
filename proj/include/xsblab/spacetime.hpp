#pragma once

#include <functional>
#include <vector>

#include "xsblab/evolve.hpp"
#include "xsblab/field.hpp"

namespace xsblab {

// A coefficient field sampled on a uniform periodic time window [0, t_win).
// Layout is mode-major: data[k * n_t + i] is the coefficient of mode k at
// time node i * dt.  n_t must be a power of two >= 16 so the per-mode time
// transforms are plain FFTs.
struct SpaceTimeField {
    SpectralBasis basis;
    double t_win = 0.0;
    int n_t = 0;
    std::vector<cplx> data;

    SpaceTimeField() = default;
    SpaceTimeField(const SpectralBasis& b, double t_win_, int n_t_);

    double dt() const { return t_win / n_t; }
    double time(int i) const { return t_win * i / n_t; }
    std::size_t n_modes() const { return basis.n_modes(); }

    cplx& at(std::size_t k, int i) { return data[k * std::size_t(n_t) + std::size_t(i)]; }
    const cplx& at(std::size_t k, int i) const {
        return data[k * std::size_t(n_t) + std::size_t(i)];
    }

    SpectralField slice(int i) const;
    void set_slice(int i, const SpectralField& u);
    void validate() const;
};

// Discrete time spectrum of a SpaceTimeField: data[k * n_t + n] approximates
// the time Fourier integral of mode k at frequency tau_n = 2 pi m / t_win,
// where m is the signed alias of bin n (m = n for n < n_t/2, else n - n_t).
// Normalization: hat u(tau_n) = dt * sum_i u(t_i) e^{-i tau_n t_i}, so the
// Parseval identity reads dt * sum_i |u_i|^2 = (1/t_win) * sum_n |hat u_n|^2.
struct TimeSpectrum {
    SpectralBasis basis;
    double t_win = 0.0;
    int n_t = 0;
    std::vector<cplx> data;

    cplx& at(std::size_t k, int n) { return data[k * std::size_t(n_t) + std::size_t(n)]; }
    const cplx& at(std::size_t k, int n) const {
        return data[k * std::size_t(n_t) + std::size_t(n)];
    }
};

// Signed frequency value of each FFT bin.
std::vector<double> tau_values(double t_win, int n_t);

TimeSpectrum time_fourier(const SpaceTimeField& u);
SpaceTimeField inverse_time_fourier(const TimeSpectrum& s);

// Samples the exact linear flow of u0 on the window.  Rejects windows that
// cannot represent the fastest populated phase e^{-i lambda t} without
// aliasing (the tone must land at least one bin away from the fold).
SpaceTimeField free_solution_field(const SpectralField& u0, double t_win, int n_t);

// Multiplies every time slice by factor(t_i).
void scale_in_time(SpaceTimeField& u, const std::function<cplx(double)>& factor);

// C^2 window: 0 outside [-ramp, t_flat + ramp], 1 on [0, t_flat], quintic
// smoothstep transitions of width ramp on both sides.
double smooth_cutoff(double t, double t_flat, double ramp);

// L^2 of the window in time and L^2 of the manifold in space.
double l2_spacetime(const SpaceTimeField& u);
// dt * sum_{i,k} u conj(v); the discrete L^2(window; L^2) pairing.
cplx inner_spacetime(const SpaceTimeField& u, const SpaceTimeField& v);

// Dispersive space-time norm: the time spectrum of each mode is weighted by
// <tau + lambda_k>^b against the mode's eigenvalue and by <mu_k>^s:
//   norm^2 = (1/t_win) sum_k sum_n <tau_n + lambda_k>^{2b} <mu_k>^{2s} |hat u|^2.
double xsb_norm(const SpaceTimeField& u, double s, double b);
// Same quantity computed the other way: conjugate each mode by the inverse
// free flow e^{+i lambda_k t}, then take a plain H^b-in-time norm.  Agrees
// with xsb_norm bin-for-bin when every populated phase is periodic on the
// window (eigenvalues on the 2 pi / t_win lattice) and the data is
// band-limited in tau; otherwise the two discretizations differ by spectral
// leakage and only the first form is used as the definition.
double xsb_norm_conjugated(const SpaceTimeField& u, double s, double b);

// Dyadic levels L = 1, 2, 4, ... covering every <tau_n + lambda_k> value of
// the (bin, mode) lattice of u.
std::vector<double> modulation_levels(const SpaceTimeField& u);
// Keeps the (bin, mode) entries with L <= <tau_n + lambda_k> < 2L.
SpaceTimeField modulation_project(const SpaceTimeField& u, double level);
// Multiplies each (bin, mode) entry by <tau_n + lambda_k>^b.
SpaceTimeField apply_lambda_b(const SpaceTimeField& u, double b);

struct EmbeddingReport {
    double lhs = 0.0;   // || ||u(t)||_{L^2(M)} ||_{L^3(window)}
    double rhs = 0.0;   // xsb_norm(u, 0, 1/6)
    double ratio = 0.0; // lhs / rhs, 0 when the field vanishes
    bool defined = false;
};
EmbeddingReport embedding_checks(const SpaceTimeField& u);

// Upper bound for the restriction-type space-time norm of a trajectory on
// [0, T]: one explicit extension is measured, namely the trajectory continued
// by the free flow on both sides, multiplied by smooth_cutoff with
// t_flat = T and ramp = ramp_fraction * T, centered in the window.
// Requires T <= t_win / 4.
double restriction_norm_estimate(const Trajectory& traj, double s, double b,
                                 double t_win, int n_t, double ramp_fraction = 0.5);

// Residual |<J^s L^b v, J^{-s} L^{-b} u> - <v, u>| of the weight-cancellation
// identity behind the duality pairing; exact on the discrete lattice up to
// roundoff, for any basis.
double duality_pairing_check(const SpaceTimeField& u, const SpaceTimeField& v,
                             double s, double b);

} // namespace xsblab
