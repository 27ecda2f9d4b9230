#pragma once

#include <complex>
#include <cstdint>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "xsblab/manifold.hpp"
#include "xsblab/quadrature.hpp"

namespace xsblab {

using cplx = std::complex<double>;

// Mode identity within its family.
//   rectangle: a, b = axis indices (m, n); parity unused (0).
//   disk:      a = angular index m, b = radial rank q (q = 0 only for the
//              Neumann constant mode), parity 0 = cos, 1 = sin.
struct ModeLabel {
    int a = 0;
    int b = 0;
    int parity = 0;
    friend auto operator<=>(const ModeLabel&, const ModeLabel&) = default;
};

std::string label_str(const ModeLabel& l, Domain d);

struct EigenMode {
    int index = 0;     // position in the sorted basis
    ModeLabel label;
    double mu = 0.0;     // frequency, sqrt(lambda)
    double lambda = 0.0; // eigenvalue of -Laplacian
};

class BasisImpl;

// Orthonormal truncated eigenbasis of -Laplace on a model domain together
// with a quadrature grid sized so that products of up to four resolved modes
// integrate to near machine precision.  Cheap to copy (shared immutable
// state); all transforms are const and thread-safe.
class SpectralBasis {
public:
    SpectralBasis() = default;
    explicit SpectralBasis(std::shared_ptr<const BasisImpl> impl) : impl_(std::move(impl)) {}

    const ManifoldSpec& spec() const;
    double mu_max() const;
    const std::vector<EigenMode>& modes() const;
    const QuadratureGrid& grid() const;
    std::size_t n_modes() const;
    std::size_t n_nodes() const;
    std::string fingerprint() const;

    bool valid() const { return impl_ != nullptr; }
    bool same_as(const SpectralBasis& other) const { return impl_ == other.impl_; }

    // Nodal values of the coefficient field and the inverse map.  analyze
    // after synthesize is the identity on coefficients; synthesize uses the
    // fast (FFT-backed) engine.
    void synthesize(const cplx* coeffs, cplx* nodal) const;
    void analyze(const cplx* nodal, cplx* coeffs) const;
    std::vector<cplx> synthesize(const std::vector<cplx>& coeffs) const;
    std::vector<cplx> analyze(const std::vector<cplx>& nodal) const;

    // Exact basis projection of a pointwise product of two resolved fields
    // (synthesized coefficients, their conjugates, or gradient components).
    // analyze() quadrature is exact for such products on the disk and under
    // Neumann conditions; under rectangle Dirichlet conditions the product
    // leaves the half-period sine family, and this entry point routes through
    // a cosine analysis plus a closed-form change of family instead.  For
    // inputs that are not such products the result is a well-defined but
    // merely approximate projection.
    void analyze_quadratic(const cplx* product_nodal, cplx* coeffs) const;
    std::vector<cplx> analyze_quadratic(const std::vector<cplx>& product_nodal) const;

    // Nodal values of the two metric-orthogonal gradient components
    // (d/dx, d/dy on the rectangle; d/dr, (1/r) d/dtheta on the disk).  The
    // metric inner product of two gradients is the component-wise product sum.
    void synthesize_gradient(const cplx* coeffs, cplx* g0, cplx* g1) const;

    // Closed-form tabulation of one mode (orthonormal) and its gradient.
    std::vector<double> mode_values(int k) const;
    std::pair<std::vector<double>, std::vector<double>> mode_gradient(int k) const;

    // Serial reference transforms: direct mode sums, used as correctness
    // oracle for the fast engine and by the benchmark.
    void synthesize_reference(const cplx* coeffs, cplx* nodal) const;
    void analyze_reference(const cplx* nodal, cplx* coeffs) const;

    // max_{j,k} |<e_j, e_k> - delta_jk| over all mode pairs on the grid
    double orthonormality_residual() const;
    // max_k ||(-Laplace - lambda_k) e_k||_{L2(grid)} / max(1, lambda_k), with
    // the Laplacian evaluated from closed-form second derivatives
    double eigen_residual() const;

private:
    const BasisImpl& impl() const;
    std::shared_ptr<const BasisImpl> impl_;
};

// Build the basis holding every mode with mu <= mu_max.  grid_refinement
// scales the auto-sized quadrature node counts; values < 1 may yield a grid
// whose declared exactness falls below 2*mu_max, which is rejected.
SpectralBasis build_basis(const ManifoldSpec& spec, double mu_max, double grid_refinement = 1.0);

} // namespace xsblab
