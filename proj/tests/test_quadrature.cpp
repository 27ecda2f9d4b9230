#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "xsblab/quadrature.hpp"

using namespace xsblab;

namespace {

double monomial_integral(int p, double a, double b) {
    return (std::pow(b, p + 1) - std::pow(a, p + 1)) / (p + 1);
}

}  // namespace

TEST_CASE("gauss legendre integrates polynomials of degree 2n-1 exactly") {
    for (int n : {1, 2, 3, 5, 8, 16, 40}) {
        Quad1D q = gauss_legendre(n, -1.0, 1.0);
        for (int p = 0; p <= 2 * n - 1; ++p) {
            double acc = 0.0;
            for (std::size_t i = 0; i < q.x.size(); ++i) acc += q.w[i] * std::pow(q.x[i], p);
            CHECK(std::fabs(acc - monomial_integral(p, -1.0, 1.0)) <= 1e-13);
        }
        // and visibly fails on degree 2n for small rules (guards against an
        // accidentally larger rule); the defect decays ~4^-n and drowns in
        // roundoff past n ~ 8
        if (n <= 5) {
            double acc = 0.0;
            for (std::size_t i = 0; i < q.x.size(); ++i) acc += q.w[i] * std::pow(q.x[i], 2 * n);
            CHECK(std::fabs(acc - monomial_integral(2 * n, -1.0, 1.0)) > 1e-9);
        }
    }
}

TEST_CASE("mapped interval keeps exactness and weight sum") {
    const double a = 0.25, b = 3.75;
    Quad1D q = gauss_legendre(12, a, b);
    double wsum = 0.0;
    for (double w : q.w) wsum += w;
    CHECK(std::fabs(wsum - (b - a)) <= 1e-13);
    for (int p = 0; p <= 23; ++p) {
        double acc = 0.0;
        for (std::size_t i = 0; i < q.x.size(); ++i) acc += q.w[i] * std::pow(q.x[i], p);
        CHECK(std::fabs(acc - monomial_integral(p, a, b)) / std::fabs(monomial_integral(p, a, b)) <=
              1e-13);
    }
    for (std::size_t i = 0; i < q.x.size(); ++i) {
        CHECK(q.x[i] > a);
        CHECK(q.x[i] < b);
    }
}

TEST_CASE("nodes are sorted and symmetric on symmetric intervals") {
    Quad1D q = gauss_legendre(9, -2.0, 2.0);
    for (std::size_t i = 0; i + 1 < q.x.size(); ++i) CHECK(q.x[i] < q.x[i + 1]);
    for (std::size_t i = 0; i < q.x.size(); ++i) {
        CHECK(std::fabs(q.x[i] + q.x[q.x.size() - 1 - i]) <= 1e-14);
        CHECK(std::fabs(q.w[i] - q.w[q.w.size() - 1 - i]) <= 1e-14);
    }
}

TEST_CASE("smooth integrand converges to a frozen value") {
    // int_0^1 exp(cos(3x)) dx, reference from an over-resolved rule fixed
    // ahead of implementation work
    const double want = 1.3083999447462753;
    Quad1D q = gauss_legendre(24, 0.0, 1.0);
    double acc = 0.0;
    for (std::size_t i = 0; i < q.x.size(); ++i) acc += q.w[i] * std::exp(std::cos(3.0 * q.x[i]));
    CHECK(std::fabs(acc - want) <= 1e-12);
}
