#pragma once

#include <vector>

#include "xsblab/field.hpp"

namespace xsblab {

// Dyadic frequency bands [level, 2*level].  The closed interval is the
// default everywhere an operator acts on "a band-limited field"; the
// half-open variant [level, 2*level) exists so that partition-of-unity
// bookkeeping over levels 2^m has no double-counted endpoints.
enum class BandEdges { Closed, HalfOpen };

// Indices k with level <= mu_k <= 2*level (Closed) or < 2*level (HalfOpen).
std::vector<int> band_modes(const SpectralBasis& b, double level,
                            BandEdges edges = BandEdges::Closed);

// Zeroes every coefficient outside the band.  Idempotent and self-adjoint.
// Requires 0 < level <= mu_max of the basis.
SpectralField project_band(const SpectralField& u, double level,
                           BandEdges edges = BandEdges::Closed);

// (sum_k <mu_k>^{2s} |c_k|^2)^{1/2} with <x> = sqrt(1 + x^2).  The 2s
// exponent matches the operator norm ||(1-Laplace)^{s/2} u||_{L2}; an
// alternative convention with exponent s (differing by s -> s/2) appears in
// the fractional weight apply_js below and is kept deliberately distinct.
double sobolev_norm(const SpectralField& u, double s);

// Diagonal reweightings on a closed dyadic band [N, 2N]:
//   apply_T scales c_k by (N/mu_k)^2, apply_V by (mu_k/N)^2.
// They are mutual inverses, and -Laplace(T u) = N^2 u on the band.  Fields
// with support outside the band are rejected.
SpectralField apply_T(const SpectralField& u, double level);
SpectralField apply_V(const SpectralField& u, double level);

// Fractional weight J^s: scales c_k by <mu_k>^{s/2}.  Note the half
// exponent; the space-time duality identity uses this literal form.
SpectralField apply_js(const SpectralField& u, double s);

// Laplacian in coefficient space: c_k -> -lambda_k c_k.
SpectralField laplacian(const SpectralField& u);

// Nodal values of the metric inner product (grad u, grad v)_g at the
// quadrature nodes.  Bilinear (no conjugation), matching the product rule
// Laplace(uv) = u Laplace(v) + v Laplace(u) + 2 (grad u, grad v)_g.
std::vector<cplx> gradient_pair(const SpectralField& u, const SpectralField& v);

} // namespace xsblab
