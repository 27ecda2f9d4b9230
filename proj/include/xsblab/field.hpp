#pragma once

#include <vector>

#include "xsblab/basis.hpp"

namespace xsblab {

// A function on the domain in coefficient form: c_k against the orthonormal
// eigenbasis, so ||u||_{L2}^2 = sum_k |c_k|^2 and nodal values come from
// basis.synthesize.  Cheap to copy for small bases; the basis handle is
// shared immutable state.
struct SpectralField {
    SpectralBasis basis;
    std::vector<cplx> coeffs;

    SpectralField() = default;
    explicit SpectralField(const SpectralBasis& b)
        : basis(b), coeffs(b.n_modes(), cplx{0.0, 0.0}) {}
    SpectralField(const SpectralBasis& b, std::vector<cplx> c);

    std::size_t size() const { return coeffs.size(); }
    void validate() const; // throws InvalidArgument on size/basis mismatch
};

// Field equal to one basis mode e_k.
SpectralField unit_mode(const SpectralBasis& b, int k);

double l2_norm(const SpectralField& u);

// L2 pairing <u, v> = integral u * conj(v) = sum_k u_k conj(v_k).
cplx l2_inner(const SpectralField& u, const SpectralField& v);

// Throws InvalidArgument unless u and v share one basis object.
void require_same_basis(const SpectralField& u, const SpectralField& v,
                        const char* where);

SpectralField operator+(const SpectralField& u, const SpectralField& v);
SpectralField operator-(const SpectralField& u, const SpectralField& v);
SpectralField operator*(cplx scale, const SpectralField& u);
SpectralField operator*(double scale, const SpectralField& u);

} // namespace xsblab
