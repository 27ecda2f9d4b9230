#include "xsblab/spectral_ops.hpp"

#include <cmath>
#include <string>

#include "xsblab/errors.hpp"

namespace xsblab {

namespace {

double bracket_weight(double mu) { return std::sqrt(1.0 + mu * mu); }

void require_valid_level(const SpectralBasis& b, double level, const char* where) {
    if (!(level > 0.0) || !std::isfinite(level)) {
        throw InvalidArgument(std::string(where) + ": band level must be positive");
    }
    if (level > b.mu_max()) {
        throw InvalidArgument(std::string(where) + ": band level " +
                              std::to_string(level) + " exceeds mu_max " +
                              std::to_string(b.mu_max()));
    }
}

} // namespace

std::vector<int> band_modes(const SpectralBasis& b, double level, BandEdges edges) {
    require_valid_level(b, level, "band_modes");
    std::vector<int> out;
    const double top = 2.0 * level;
    for (const EigenMode& m : b.modes()) {
        const bool upper = (edges == BandEdges::Closed) ? (m.mu <= top) : (m.mu < top);
        if (m.mu >= level && upper) out.push_back(m.index);
    }
    return out;
}

SpectralField project_band(const SpectralField& u, double level, BandEdges edges) {
    u.validate();
    require_valid_level(u.basis, level, "project_band");
    SpectralField out(u.basis);
    const double top = 2.0 * level;
    const auto& modes = u.basis.modes();
    for (std::size_t k = 0; k < u.coeffs.size(); ++k) {
        const double mu = modes[k].mu;
        const bool upper = (edges == BandEdges::Closed) ? (mu <= top) : (mu < top);
        if (mu >= level && upper) out.coeffs[k] = u.coeffs[k];
    }
    return out;
}

double sobolev_norm(const SpectralField& u, double s) {
    u.validate();
    if (!std::isfinite(s)) throw InvalidArgument("sobolev_norm: s must be finite");
    const auto& modes = u.basis.modes();
    double acc = 0.0;
    for (std::size_t k = 0; k < u.coeffs.size(); ++k) {
        const double w = std::pow(bracket_weight(modes[k].mu), 2.0 * s);
        acc += w * std::norm(u.coeffs[k]);
    }
    return std::sqrt(acc);
}

namespace {

SpectralField apply_band_power(const SpectralField& u, double level, int sign,
                               const char* where) {
    u.validate();
    require_valid_level(u.basis, level, where);
    const auto& modes = u.basis.modes();
    SpectralField out(u.basis);
    const double top = 2.0 * level;
    for (std::size_t k = 0; k < u.coeffs.size(); ++k) {
        if (u.coeffs[k] == cplx{0.0, 0.0}) continue;
        const double mu = modes[k].mu;
        if (mu < level || mu > top) {
            throw InvalidArgument(std::string(where) +
                                  ": field has support at mu=" + std::to_string(mu) +
                                  " outside the band [" + std::to_string(level) + ", " +
                                  std::to_string(top) + "]");
        }
        const double r = (sign > 0) ? (level / mu) : (mu / level);
        out.coeffs[k] = u.coeffs[k] * (r * r);
    }
    return out;
}

} // namespace

SpectralField apply_T(const SpectralField& u, double level) {
    return apply_band_power(u, level, +1, "apply_T");
}

SpectralField apply_V(const SpectralField& u, double level) {
    return apply_band_power(u, level, -1, "apply_V");
}

SpectralField apply_js(const SpectralField& u, double s) {
    u.validate();
    if (!std::isfinite(s)) throw InvalidArgument("apply_js: s must be finite");
    const auto& modes = u.basis.modes();
    SpectralField out = u;
    for (std::size_t k = 0; k < out.coeffs.size(); ++k) {
        out.coeffs[k] *= std::pow(bracket_weight(modes[k].mu), 0.5 * s);
    }
    return out;
}

SpectralField laplacian(const SpectralField& u) {
    u.validate();
    const auto& modes = u.basis.modes();
    SpectralField out = u;
    for (std::size_t k = 0; k < out.coeffs.size(); ++k) {
        out.coeffs[k] *= -modes[k].lambda;
    }
    return out;
}

std::vector<cplx> gradient_pair(const SpectralField& u, const SpectralField& v) {
    require_same_basis(u, v, "gradient_pair");
    const std::size_t n = u.basis.n_nodes();
    std::vector<cplx> gu0(n), gu1(n), gv0(n), gv1(n);
    u.basis.synthesize_gradient(u.coeffs.data(), gu0.data(), gu1.data());
    v.basis.synthesize_gradient(v.coeffs.data(), gv0.data(), gv1.data());
    std::vector<cplx> out(n);
    for (std::size_t i = 0; i < n; ++i) {
        out[i] = gu0[i] * gv0[i] + gu1[i] * gv1[i];
    }
    return out;
}

} // namespace xsblab
