#pragma once

namespace xsblab {

// Cylinder functions of integer order, accurate to ~1e-12 absolute for
// orders 0..200 and arguments in [0, 1e6].  Small arguments use the power
// series in its monotone-term regime (accumulated in long double); everything
// else uses Miller's backward recurrence with the even-order normalization
// identity, which is uniformly stable and needs no external library.

double bessel_j(int order, double x);

// dJ_m/dx via the two-neighbor recurrence (J'_0 = -J_1).
double bessel_j_prime(int order, double x);

// d^2 J_m/dx^2 via a double application of the neighbor recurrence, i.e.
// independent of the Bessel ODE; used to cross-check eigen-residuals.
double bessel_j_second(int order, double x);

enum class BesselRootKind {
    JZero,      // positive zeros of J_m
    JPrimeZero, // positive zeros of J'_m
};

// rank-th positive root (rank >= 1), bracketed by a unit-step scan (zero
// spacing exceeds pi, so no bracket can hold two) and bisected to ~1e-14
// relative.
double bessel_root(int order, int rank, BesselRootKind kind);

} // namespace xsblab
