#include "xsblab/quadrature.hpp"

#include <cmath>

#include "xsblab/errors.hpp"

namespace xsblab {

Quad1D gauss_legendre(int n, double a, double b) {
    if (n < 1) throw InvalidArgument("gauss_legendre: need at least one node");
    Quad1D q;
    q.x.resize(n);
    q.w.resize(n);

    const double mid = 0.5 * (a + b);
    const double half = 0.5 * (b - a);

    // Symmetric rule: solve for the nodes in (0, 1] and mirror.
    for (int i = 0; i < (n + 1) / 2; ++i) {
        // Chebyshev-like initial guess for the i-th root of P_n.
        double z = std::cos(M_PI * (i + 0.75) / (n + 0.5));
        double pp = 0.0;
        for (int it = 0; it < 100; ++it) {
            // Evaluate P_n(z) and P'_n(z) by the three-term recurrence.
            double p0 = 1.0, p1 = 0.0;
            for (int j = 0; j < n; ++j) {
                double p2 = p1;
                p1 = p0;
                p0 = ((2.0 * j + 1.0) * z * p1 - j * p2) / (j + 1.0);
            }
            pp = n * (z * p0 - p1) / (z * z - 1.0);
            double dz = p0 / pp;
            z -= dz;
            if (std::fabs(dz) < 1e-15) break;
        }
        double w = 2.0 / ((1.0 - z * z) * pp * pp);
        q.x[i] = mid - half * z;
        q.x[n - 1 - i] = mid + half * z;
        q.w[i] = half * w;
        q.w[n - 1 - i] = half * w;
    }
    return q;
}

double QuadratureGrid::area() const {
    double s = 0.0;
    for (double w : weight) s += w;
    return s;
}

} // namespace xsblab
