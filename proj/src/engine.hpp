#pragma once

#include <memory>

#include "xsblab/basis.hpp"

namespace xsblab {

// Internal basis state shared by the domain engines.  Mode enumeration and
// sorting live in basis.cpp; engines fill the tables and implement the
// transforms.
class BasisImpl {
public:
    virtual ~BasisImpl() = default;

    ManifoldSpec spec;
    double mu_max = 0.0;
    std::vector<EigenMode> modes;
    QuadratureGrid grid;

    virtual void synthesize(const cplx* coeffs, cplx* nodal) const = 0;
    virtual void analyze(const cplx* nodal, cplx* coeffs) const = 0;
    virtual void analyze_quadratic(const cplx* nodal, cplx* coeffs) const = 0;
    virtual void synthesize_gradient(const cplx* coeffs, cplx* g0, cplx* g1) const = 0;
    virtual std::vector<double> mode_values(int k) const = 0;
    virtual std::pair<std::vector<double>, std::vector<double>> mode_gradient(int k) const = 0;
    virtual double orthonormality_residual() const = 0;
    virtual double eigen_residual() const = 0;
};

// Sort modes by (mu, label) and stamp indices; engines call this once their
// raw mode set is enumerated.
void finalize_modes(std::vector<EigenMode>& modes);

std::shared_ptr<const BasisImpl> make_rectangle_engine(const ManifoldSpec& spec, double mu_max,
                                                       double refine);
std::shared_ptr<const BasisImpl> make_disk_engine(const ManifoldSpec& spec, double mu_max,
                                                  double refine);

// Serial direct mode-sum transforms (reference path).
void reference_synthesize(const BasisImpl& b, const cplx* coeffs, cplx* nodal);
void reference_analyze(const BasisImpl& b, const cplx* nodal, cplx* coeffs);

// Smallest integer >= n with no prime factor beyond 5 (FFT-friendly size).
int next_smooth(int n);

} // namespace xsblab
