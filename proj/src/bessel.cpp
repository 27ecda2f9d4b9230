#include "xsblab/bessel.hpp"

#include <cmath>
#include <string>

#include "xsblab/errors.hpp"

namespace xsblab {

namespace {

constexpr int kMaxOrder = 200;
constexpr double kMaxArg = 1e6;

void validate(int order, double x) {
    if (order < 0 || order > kMaxOrder) {
        throw InvalidArgument("bessel: order must be in [0, " + std::to_string(kMaxOrder) +
                              "], got " + std::to_string(order));
    }
    if (!(x >= 0.0)) {
        throw InvalidArgument("bessel: argument must be >= 0, got " + std::to_string(x));
    }
    if (x > kMaxArg) {
        throw InvalidArgument("bessel: argument " + std::to_string(x) +
                              " exceeds supported range " + std::to_string(kMaxArg));
    }
}

// Power series sum_k (-1)^k (x/2)^{m+2k} / (k! (m+k)!), restricted to the
// regime where term magnitudes decrease from the start ((x/2)^2 <= m+1), so
// cancellation never exceeds the first term.  long double accumulation keeps
// the absolute error near 1e-18.
double series_j(int m, double x) {
    const long double half = 0.5L * (long double)x;
    // First term (x/2)^m / m!.  Underflows to 0 for large m and tiny x, which
    // is the correct answer at our absolute tolerance.
    long double term = 1.0L;
    for (int k = 1; k <= m; ++k) term *= half / k;
    long double sum = term;
    const long double h2 = half * half;
    for (int k = 1; k < 400; ++k) {
        term *= -h2 / ((long double)k * (long double)(m + k));
        sum += term;
        if (std::fabs((double)term) < 1e-20) break;
    }
    return (double)sum;
}

bool series_applies(int m, double x) {
    double lim = 2.0 * std::sqrt((double)m + 1.0);
    return x <= std::min(12.0, lim);
}

// Miller's backward recurrence: run J_{k-1} = (2k/x) J_k - J_{k+1} down from
// a start order high enough that the minimal solution dominates, normalize
// with 1 = J_0 + 2 J_2 + 2 J_4 + ...  Captures up to three consecutive
// orders so callers can form derivatives from one pass.
struct MillerResult {
    double j[3]; // orders base, base+1, base+2 (entries beyond range are 0)
};

MillerResult miller_j(int base, int count, double x) {
    const int top = base + count - 1;
    int start = std::max(top, (int)std::ceil(x)) + 40 +
                (int)(6.0 * std::cbrt(std::max(x, 1.0))) +
                (int)std::sqrt(40.0 * std::max(top, 1));
    if (start % 2) ++start;

    constexpr double kBig = 1e100;
    constexpr double kBigInv = 1e-100;

    double jp = 0.0;  // J_{k+1} (unnormalized)
    double jc = 1e-30; // J_k at k = start
    double norm = 0.0;
    double captured[3] = {0.0, 0.0, 0.0};

    for (int k = start; k >= 0; --k) {
        if (k % 2 == 0) norm += (k == 0 ? jc : 2.0 * jc);
        if (k >= base && k <= top) captured[k - base] = jc;
        if (k > 0) {
            double jm = (2.0 * k / x) * jc - jp;
            jp = jc;
            jc = jm;
            if (std::fabs(jc) > kBig) {
                jc *= kBigInv;
                jp *= kBigInv;
                norm *= kBigInv;
                for (double& c : captured) c *= kBigInv;
            }
        }
    }

    MillerResult r;
    for (int i = 0; i < 3; ++i) r.j[i] = (i < count) ? captured[i] / norm : 0.0;
    return r;
}

double eval_j(int m, double x) {
    if (x == 0.0) return m == 0 ? 1.0 : 0.0;
    if (series_applies(m, x)) return series_j(m, x);
    return miller_j(m, 1, x).j[0];
}

} // namespace

double bessel_j(int order, double x) {
    validate(order, x);
    return eval_j(order, x);
}

double bessel_j_prime(int order, double x) {
    validate(order, x);
    if (order == 0) return -eval_j(1, x);
    if (x == 0.0) return order == 1 ? 0.5 : 0.0;
    if (series_applies(order - 1, x)) { // strictest gate among orders m-1, m, m+1
        return 0.5 * (series_j(order - 1, x) - series_j(order + 1, x));
    }
    // One backward pass covering orders m-1, m, m+1.
    MillerResult r = miller_j(order - 1, 3, x);
    return 0.5 * (r.j[0] - r.j[2]);
}

double bessel_j_second(int order, double x) {
    validate(order, x);
    // J'' = (J_{m-2} - 2 J_m + J_{m+2}) / 4, with J_{-k} = (-1)^k J_k.
    auto j = [&](int m) { return m >= 0 ? eval_j(m, x) : (m % 2 ? -1.0 : 1.0) * eval_j(-m, x); };
    return 0.25 * (j(order - 2) - 2.0 * j(order) + j(order + 2));
}

double bessel_root(int order, int rank, BesselRootKind kind) {
    if (rank < 1) throw InvalidArgument("bessel_root: rank must be >= 1");
    validate(order, 0.0);

    auto f = [&](double x) {
        return kind == BesselRootKind::JZero ? eval_j(order, x)
                                             : bessel_j_prime(order, x);
    };

    // March in unit steps counting sign changes; consecutive roots are
    // roughly pi apart (never closer than ~3), so a unit bracket holds at
    // most one.
    double a = (order == 0) ? 0.1 : (double)order;
    double fa = f(a);
    int found = 0;
    for (int step = 0; step < 999000; ++step) {
        double b = a + 1.0;
        double fb = f(b);
        if (fa == 0.0) {
            // landed exactly on a root at a
            ++found;
            if (found == rank) return a;
            fa = fb;
            a = b;
            continue;
        }
        if (fa * fb < 0.0 || fb == 0.0) {
            ++found;
            if (found == rank) {
                double lo = a, hi = b, flo = fa;
                for (int it = 0; it < 200; ++it) {
                    double mid = 0.5 * (lo + hi);
                    if (mid == lo || mid == hi) break;
                    double fm = f(mid);
                    if (fm == 0.0) return mid;
                    if (flo * fm < 0.0) {
                        hi = mid;
                    } else {
                        lo = mid;
                        flo = fm;
                    }
                    if (hi - lo < 1e-15 * std::max(1.0, hi)) break;
                }
                return 0.5 * (lo + hi);
            }
        }
        a = b;
        fa = fb;
        if (a > kMaxArg - 2.0) break;
    }
    throw NumericError("bessel_root: failed to bracket root rank " + std::to_string(rank) +
                       " of order " + std::to_string(order));
}

} // namespace xsblab
