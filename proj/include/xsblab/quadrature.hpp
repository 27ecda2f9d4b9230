#pragma once

#include <cstddef>
#include <vector>

namespace xsblab {

struct Quad1D {
    std::vector<double> x;
    std::vector<double> w;
};

// Gauss-Legendre rule with n nodes on [a, b]; exact for polynomials of
// degree <= 2n-1.  Nodes by Newton iteration on the three-term recurrence.
Quad1D gauss_legendre(int n, double a, double b);

// Tensor/polar quadrature over a 2-D domain, flattened to one node list.
// exactness_mu is the largest frequency nu such that triple products of
// eigenfunctions with frequencies <= nu integrate to near machine precision
// on this grid.
struct QuadratureGrid {
    std::vector<double> node_x; // Cartesian coordinates of the nodes
    std::vector<double> node_y;
    std::vector<double> weight;
    double exactness_mu = 0.0;

    std::size_t size() const { return weight.size(); }
    double area() const;
};

} // namespace xsblab
