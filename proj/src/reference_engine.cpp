#include <vector>

#include "engine.hpp"

namespace xsblab {

// Direct O(modes x nodes) sums over the closed-form mode tables.  Slow on
// purpose: no transform tricks, so the fast engines can be validated against
// an implementation whose only moving part is the mode tabulation itself.

void reference_synthesize(const BasisImpl& b, const cplx* coeffs, cplx* nodal) {
    const std::size_t n = b.grid.size();
    for (std::size_t i = 0; i < n; ++i) nodal[i] = cplx(0.0, 0.0);
    for (std::size_t k = 0; k < b.modes.size(); ++k) {
        const std::vector<double> e = b.mode_values(static_cast<int>(k));
        const cplx c = coeffs[k];
        for (std::size_t i = 0; i < n; ++i) nodal[i] += c * e[i];
    }
}

void reference_analyze(const BasisImpl& b, const cplx* nodal, cplx* coeffs) {
    const std::size_t n = b.grid.size();
    for (std::size_t k = 0; k < b.modes.size(); ++k) {
        const std::vector<double> e = b.mode_values(static_cast<int>(k));
        cplx acc(0.0, 0.0);
        for (std::size_t i = 0; i < n; ++i) acc += b.grid.weight[i] * e[i] * nodal[i];
        coeffs[k] = acc;
    }
}

}  // namespace xsblab
