#include "xsblab/field.hpp"

#include <cmath>
#include <utility>

#include "xsblab/errors.hpp"

namespace xsblab {

SpectralField::SpectralField(const SpectralBasis& b, std::vector<cplx> c)
    : basis(b), coeffs(std::move(c)) {
    validate();
}

void SpectralField::validate() const {
    if (!basis.valid()) {
        throw InvalidArgument("SpectralField: basis not set");
    }
    if (coeffs.size() != basis.n_modes()) {
        throw InvalidArgument("SpectralField: coefficient count " +
                              std::to_string(coeffs.size()) +
                              " does not match basis mode count " +
                              std::to_string(basis.n_modes()));
    }
}

SpectralField unit_mode(const SpectralBasis& b, int k) {
    if (k < 0 || std::size_t(k) >= b.n_modes()) {
        throw InvalidArgument("unit_mode: mode index out of range");
    }
    SpectralField u(b);
    u.coeffs[std::size_t(k)] = cplx{1.0, 0.0};
    return u;
}

double l2_norm(const SpectralField& u) {
    u.validate();
    double acc = 0.0;
    for (const cplx& c : u.coeffs) acc += std::norm(c);
    return std::sqrt(acc);
}

cplx l2_inner(const SpectralField& u, const SpectralField& v) {
    require_same_basis(u, v, "l2_inner");
    cplx acc{0.0, 0.0};
    for (std::size_t k = 0; k < u.coeffs.size(); ++k) {
        acc += u.coeffs[k] * std::conj(v.coeffs[k]);
    }
    return acc;
}

void require_same_basis(const SpectralField& u, const SpectralField& v,
                        const char* where) {
    u.validate();
    v.validate();
    if (!u.basis.same_as(v.basis)) {
        throw InvalidArgument(std::string(where) +
                              ": fields live on different bases");
    }
}

SpectralField operator+(const SpectralField& u, const SpectralField& v) {
    require_same_basis(u, v, "operator+");
    SpectralField out = u;
    for (std::size_t k = 0; k < out.coeffs.size(); ++k) out.coeffs[k] += v.coeffs[k];
    return out;
}

SpectralField operator-(const SpectralField& u, const SpectralField& v) {
    require_same_basis(u, v, "operator-");
    SpectralField out = u;
    for (std::size_t k = 0; k < out.coeffs.size(); ++k) out.coeffs[k] -= v.coeffs[k];
    return out;
}

SpectralField operator*(cplx scale, const SpectralField& u) {
    u.validate();
    SpectralField out = u;
    for (cplx& c : out.coeffs) c *= scale;
    return out;
}

SpectralField operator*(double scale, const SpectralField& u) {
    return cplx{scale, 0.0} * u;
}

} // namespace xsblab
