#include "xsblab/basis.hpp"

#include <algorithm>
#include <cinttypes>
#include <cmath>
#include <cstdio>

#include "xsblab/errors.hpp"
#include "xsblab/version.hpp"
#include "engine.hpp"

namespace xsblab {

std::string label_str(const ModeLabel& l, Domain d) {
    char buf[64];
    if (d == Domain::Rectangle) {
        std::snprintf(buf, sizeof(buf), "(%d,%d)", l.a, l.b);
    } else {
        std::snprintf(buf, sizeof(buf), "(%d,%d,%s)", l.a, l.b,
                      l.parity == 0 ? "cos" : "sin");
    }
    return buf;
}

void finalize_modes(std::vector<EigenMode>& modes) {
    std::sort(modes.begin(), modes.end(), [](const EigenMode& p, const EigenMode& q) {
        if (p.mu != q.mu) return p.mu < q.mu;
        return p.label < q.label;
    });
    for (std::size_t k = 0; k < modes.size(); ++k) modes[k].index = static_cast<int>(k);
}

int next_smooth(int n) {
    if (n < 1) n = 1;
    for (;; ++n) {
        int r = n;
        while (r % 2 == 0) r /= 2;
        while (r % 3 == 0) r /= 3;
        while (r % 5 == 0) r /= 5;
        if (r == 1) return n;
    }
}

const BasisImpl& SpectralBasis::impl() const {
    if (!impl_) throw InvalidArgument("SpectralBasis: used before build_basis");
    return *impl_;
}

const ManifoldSpec& SpectralBasis::spec() const { return impl().spec; }
double SpectralBasis::mu_max() const { return impl().mu_max; }
const std::vector<EigenMode>& SpectralBasis::modes() const { return impl().modes; }
const QuadratureGrid& SpectralBasis::grid() const { return impl().grid; }
std::size_t SpectralBasis::n_modes() const { return impl().modes.size(); }
std::size_t SpectralBasis::n_nodes() const { return impl().grid.size(); }

std::string SpectralBasis::fingerprint() const {
    const BasisImpl& b = impl();
    char buf[256];
    std::snprintf(buf, sizeof(buf), "%s|mu_max=%.17g|modes=%zu|nodes=%zu|v=%s",
                  b.spec.describe().c_str(), b.mu_max, b.modes.size(), b.grid.size(),
                  kVersion);
    std::uint64_t h = 1469598103934665603ull;  // FNV-1a
    for (const char* p = buf; *p; ++p) {
        h ^= static_cast<unsigned char>(*p);
        h *= 1099511628211ull;
    }
    char out[32];
    std::snprintf(out, sizeof(out), "xsb-%016" PRIx64, h);
    return out;
}

void SpectralBasis::synthesize(const cplx* coeffs, cplx* nodal) const {
    impl().synthesize(coeffs, nodal);
}

void SpectralBasis::analyze(const cplx* nodal, cplx* coeffs) const {
    impl().analyze(nodal, coeffs);
}

std::vector<cplx> SpectralBasis::synthesize(const std::vector<cplx>& coeffs) const {
    if (coeffs.size() != n_modes())
        throw InvalidArgument("synthesize: coefficient count does not match basis");
    std::vector<cplx> nodal(n_nodes());
    impl().synthesize(coeffs.data(), nodal.data());
    return nodal;
}

std::vector<cplx> SpectralBasis::analyze(const std::vector<cplx>& nodal) const {
    if (nodal.size() != n_nodes())
        throw InvalidArgument("analyze: nodal value count does not match grid");
    std::vector<cplx> coeffs(n_modes());
    impl().analyze(nodal.data(), coeffs.data());
    return coeffs;
}

void SpectralBasis::analyze_quadratic(const cplx* product_nodal, cplx* coeffs) const {
    impl().analyze_quadratic(product_nodal, coeffs);
}

std::vector<cplx> SpectralBasis::analyze_quadratic(const std::vector<cplx>& product_nodal) const {
    if (product_nodal.size() != n_nodes())
        throw InvalidArgument("analyze_quadratic: nodal value count does not match grid");
    std::vector<cplx> coeffs(n_modes());
    impl().analyze_quadratic(product_nodal.data(), coeffs.data());
    return coeffs;
}

void SpectralBasis::synthesize_gradient(const cplx* coeffs, cplx* g0, cplx* g1) const {
    impl().synthesize_gradient(coeffs, g0, g1);
}

std::vector<double> SpectralBasis::mode_values(int k) const {
    if (k < 0 || static_cast<std::size_t>(k) >= n_modes())
        throw InvalidArgument("mode_values: mode index out of range");
    return impl().mode_values(k);
}

std::pair<std::vector<double>, std::vector<double>> SpectralBasis::mode_gradient(int k) const {
    if (k < 0 || static_cast<std::size_t>(k) >= n_modes())
        throw InvalidArgument("mode_gradient: mode index out of range");
    return impl().mode_gradient(k);
}

void SpectralBasis::synthesize_reference(const cplx* coeffs, cplx* nodal) const {
    reference_synthesize(impl(), coeffs, nodal);
}

void SpectralBasis::analyze_reference(const cplx* nodal, cplx* coeffs) const {
    reference_analyze(impl(), nodal, coeffs);
}

double SpectralBasis::orthonormality_residual() const { return impl().orthonormality_residual(); }

double SpectralBasis::eigen_residual() const { return impl().eigen_residual(); }

SpectralBasis build_basis(const ManifoldSpec& spec, double mu_max, double grid_refinement) {
    spec.validate();
    if (!(mu_max > 0.0) || !std::isfinite(mu_max))
        throw InvalidArgument("build_basis: mu_max must be positive and finite");
    if (!(grid_refinement >= 0.05 && grid_refinement <= 10.0))
        throw InvalidArgument("build_basis: grid_refinement outside [0.05, 10]");
    if (spec.domain == Domain::UnitDisk && mu_max > 180.0)
        throw InvalidArgument("build_basis: disk bases support mu_max up to 180");

    std::shared_ptr<const BasisImpl> impl =
        spec.domain == Domain::Rectangle ? make_rectangle_engine(spec, mu_max, grid_refinement)
                                         : make_disk_engine(spec, mu_max, grid_refinement);

    if (impl->modes.empty())
        throw InvalidArgument("build_basis: no eigenmode has frequency at or below mu_max");
    // Coefficient-space products (nonlinearities, T/V rescaling checks) assume
    // triple products of resolved modes integrate exactly on the grid.
    if (impl->grid.exactness_mu < 2.0 * mu_max - 1e-9)
        throw InvalidArgument(
            "build_basis: grid_refinement too small; quadrature cannot resolve products of "
            "basis functions (needs exactness out to twice mu_max)");

    return SpectralBasis(std::move(impl));
}

}  // namespace xsblab
