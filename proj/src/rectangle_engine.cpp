#include <cmath>
#include <memory>
#include <vector>

#include "xsblab/errors.hpp"
#include "engine.hpp"
#include "fftw_util.hpp"

namespace xsblab {
namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;

// Per-axis tables for the separable transforms.  Slot s holds axis index
// m = s+1 (Dirichlet, sine family) or m = s (Neumann, cosine family); with
// that convention the slot index coincides with the r2r array position for
// both synthesis and analysis kinds.
struct AxisTable {
    double L = 0.0;
    int n = 0;         // grid nodes
    double h = 0.0;    // node spacing, nodes at (j + 1/2) h
    int count = 0;     // slots
    bool dirichlet = true;
    std::vector<int> mval;      // axis index per slot
    std::vector<double> freq;   // m pi / L per slot
    std::vector<double> norm;   // L2 normalization per slot
    R2RPlan synth;  // half-sample trig synthesis (DST-III / DCT-III)
    R2RPlan grad;   // synthesis of the differentiated family (opposite kind)
    R2RPlan ana;    // adjoint transform (DST-II / DCT-II)
    R2RPlan cosana; // cosine analysis of even products (Dirichlet only)
};

AxisTable make_axis(double L, double mu_max, double refine, bool dirichlet) {
    AxisTable ax;
    ax.L = L;
    ax.dirichlet = dirichlet;
    const double slots_real = mu_max * L / kPi;
    const int max_m = static_cast<int>(std::floor(slots_real * (1.0 + 1e-12)));
    ax.count = dirichlet ? max_m : max_m + 1;
    if (ax.count < 0) ax.count = 0;
    // Midpoint sums on n nodes integrate cos(k pi x / L) exactly for all
    // k < 2n, so sizing n past 3*mu_max*L/pi keeps triple products of
    // resolved slots inside the exact range.
    ax.n = next_smooth(std::max(4, static_cast<int>(std::ceil(refine * (3.0 * slots_real + 2.0)))));
    ax.h = L / ax.n;
    ax.mval.resize(ax.count);
    ax.freq.resize(ax.count);
    ax.norm.resize(ax.count);
    for (int s = 0; s < ax.count; ++s) {
        const int m = dirichlet ? s + 1 : s;
        ax.mval[s] = m;
        // One rounding only: for a side equal to pi the quotient is exactly
        // 1.0, so the frequency (and hence the eigenvalue m^2 + n^2) is an
        // exact integer.
        ax.freq[s] = m * (kPi / L);
        ax.norm[s] = m == 0 ? std::sqrt(1.0 / L) : std::sqrt(2.0 / L);
    }
    ax.synth = R2RPlan(ax.n, dirichlet ? FFTW_RODFT01 : FFTW_REDFT01);
    ax.grad = R2RPlan(ax.n, dirichlet ? FFTW_REDFT01 : FFTW_RODFT01);
    ax.ana = R2RPlan(ax.n, dirichlet ? FFTW_RODFT10 : FFTW_REDFT10);
    if (dirichlet) ax.cosana = R2RPlan(ax.n, FFTW_REDFT10);
    return ax;
}

// Projection of the cosine family onto the normalized sine slots:
// int_0^L cos(k pi x / L) sin(m pi x / L) dx = (L/pi) 2m/(m^2-k^2) when m+k
// is odd, zero otherwise.  Row m-slot, column k.
std::vector<double> make_cos_to_sine_mix(const AxisTable& ax, int kc) {
    std::vector<double> mix(static_cast<std::size_t>(ax.count) * kc, 0.0);
    for (int s = 0; s < ax.count; ++s) {
        const double m = ax.mval[s];
        for (int k = 0; k < kc; ++k) {
            if ((ax.mval[s] + k) % 2 == 0) continue;
            mix[static_cast<std::size_t>(s) * kc + k] =
                ax.norm[s] * (ax.L / kPi) * 2.0 * m / (m * m - static_cast<double>(k) * k);
        }
    }
    return mix;
}

// Exact-integration ceiling of the midpoint rule in frequency units: triple
// products of slots at frequency nu stay exact while 3 nu L / pi < 2n.
double axis_exactness(const AxisTable& ax) {
    return std::floor((2.0 * ax.n - 1.0) / 3.0) * kPi / ax.L;
}

class RectangleEngine final : public BasisImpl {
public:
    RectangleEngine(const ManifoldSpec& s, double mu, double refine) {
        spec = s;
        mu_max = mu;
        const bool dir = s.boundary == Boundary::Dirichlet;
        ax_ = make_axis(s.side_x, mu, refine, dir);
        ay_ = make_axis(s.side_y, mu, refine, dir);

        const double mu_cut = mu * (1.0 + 1e-12);
        for (int sx = 0; sx < ax_.count; ++sx) {
            for (int sy = 0; sy < ay_.count; ++sy) {
                const double lam = ax_.freq[sx] * ax_.freq[sx] + ay_.freq[sy] * ay_.freq[sy];
                const double f = std::sqrt(lam);
                if (f > mu_cut) break;  // freq grows with sy
                EigenMode mode;
                mode.label = ModeLabel{ax_.mval[sx], ay_.mval[sy], 0};
                mode.mu = f;
                mode.lambda = lam;
                modes.push_back(mode);
            }
        }
        finalize_modes(modes);

        // slot lookup for the dense coefficient matrix
        slot_of_.resize(modes.size());
        for (std::size_t k = 0; k < modes.size(); ++k) {
            const int m = modes[k].label.a, n = modes[k].label.b;
            slot_of_[k] = {dir ? m - 1 : m, dir ? n - 1 : n};
        }

        grid.node_x.resize(static_cast<std::size_t>(ax_.n) * ay_.n);
        grid.node_y.resize(grid.node_x.size());
        grid.weight.assign(grid.node_x.size(), ax_.h * ay_.h);
        for (int ix = 0; ix < ax_.n; ++ix) {
            const double x = (ix + 0.5) * ax_.h;
            for (int jy = 0; jy < ay_.n; ++jy) {
                const std::size_t idx = static_cast<std::size_t>(ix) * ay_.n + jy;
                grid.node_x[idx] = x;
                grid.node_y[idx] = (jy + 0.5) * ay_.h;
            }
        }
        grid.exactness_mu = std::min(axis_exactness(ax_), axis_exactness(ay_));

        if (dir) {
            // pointwise products of resolved sine fields live in the cosine
            // family with axis index up to twice the largest slot
            kcx_ = std::min(2 * ax_.count + 1, ax_.n);
            kcy_ = std::min(2 * ay_.count + 1, ay_.n);
            mixx_ = make_cos_to_sine_mix(ax_, kcx_);
            mixy_ = make_cos_to_sine_mix(ay_, kcy_);
        }
    }

    void synthesize(const cplx* coeffs, cplx* nodal) const override {
        run_separable(coeffs, nodal, Pass::Plain, Pass::Plain);
    }

    void analyze(const cplx* nodal, cplx* coeffs) const override {
        const int cx = ax_.count, cy = ay_.count, nx = ax_.n, ny = ay_.n;
        std::vector<double> tre(static_cast<std::size_t>(cx) * ny),
            tim(static_cast<std::size_t>(cx) * ny);
        // stage 1: per y-node column, project onto the x families
#pragma omp parallel
        {
            std::vector<double> in(nx), out(nx);
#pragma omp for schedule(static)
            for (int jy = 0; jy < ny; ++jy) {
                for (int pass = 0; pass < 2; ++pass) {
                    for (int ix = 0; ix < nx; ++ix) {
                        const cplx v = nodal[static_cast<std::size_t>(ix) * ny + jy];
                        in[ix] = pass == 0 ? v.real() : v.imag();
                    }
                    ax_.ana.exec(in.data(), out.data());
                    double* t = pass == 0 ? tre.data() : tim.data();
                    for (int sx = 0; sx < cx; ++sx)
                        t[static_cast<std::size_t>(sx) * ny + jy] = out[sx] * (ax_.h * 0.5);
                }
            }
        }
        // stage 2: per x family, project the column traces onto the y families
        std::vector<cplx> dense(static_cast<std::size_t>(cx) * cy);
#pragma omp parallel
        {
            std::vector<double> outre(ny), outim(ny);
#pragma omp for schedule(static)
            for (int sx = 0; sx < cx; ++sx) {
                ay_.ana.exec(tre.data() + static_cast<std::size_t>(sx) * ny, outre.data());
                ay_.ana.exec(tim.data() + static_cast<std::size_t>(sx) * ny, outim.data());
                for (int sy = 0; sy < cy; ++sy)
                    dense[static_cast<std::size_t>(sx) * cy + sy] =
                        cplx(outre[sy], outim[sy]) * (ay_.h * 0.5);
            }
        }
        for (std::size_t k = 0; k < modes.size(); ++k) {
            const auto [sx, sy] = slot_of_[k];
            coeffs[k] = dense[static_cast<std::size_t>(sx) * cy + sy] * (ax_.norm[sx] * ay_.norm[sy]);
        }
    }

    void synthesize_gradient(const cplx* coeffs, cplx* g0, cplx* g1) const override {
        run_separable(coeffs, g0, Pass::Plain, Pass::Diff);
        run_separable(coeffs, g1, Pass::Diff, Pass::Plain);
    }

    void analyze_quadratic(const cplx* nodal, cplx* coeffs) const override {
        if (!ax_.dirichlet) {
            // cosine products stay in the cosine family: plain analysis is
            // already exact for them
            analyze(nodal, coeffs);
            return;
        }
        // The product of two sine-family fields (or their gradients) is a
        // cosine-series on both axes; the half-sample grid resolves it
        // exactly through the cosine analysis, and the change back to the
        // sine slots is the closed-form mixing integral.
        const int nx = ax_.n, ny = ay_.n, cx = ax_.count, cy = ay_.count;
        std::vector<double> tre(static_cast<std::size_t>(kcx_) * ny),
            tim(static_cast<std::size_t>(kcx_) * ny);
#pragma omp parallel
        {
            std::vector<double> in(nx), out(nx);
#pragma omp for schedule(static)
            for (int jy = 0; jy < ny; ++jy) {
                for (int pass = 0; pass < 2; ++pass) {
                    for (int ix = 0; ix < nx; ++ix) {
                        const cplx v = nodal[static_cast<std::size_t>(ix) * ny + jy];
                        in[ix] = pass == 0 ? v.real() : v.imag();
                    }
                    ax_.cosana.exec(in.data(), out.data());
                    double* t = pass == 0 ? tre.data() : tim.data();
                    for (int k = 0; k < kcx_; ++k)
                        t[static_cast<std::size_t>(k) * ny + jy] =
                            out[k] / (k == 0 ? 2.0 * nx : static_cast<double>(nx));
                }
            }
        }
        // cosine coefficient matrix D[kx][ky]
        std::vector<cplx> dmat(static_cast<std::size_t>(kcx_) * kcy_);
#pragma omp parallel
        {
            std::vector<double> outre(ny), outim(ny);
#pragma omp for schedule(static)
            for (int kx = 0; kx < kcx_; ++kx) {
                ay_.cosana.exec(tre.data() + static_cast<std::size_t>(kx) * ny, outre.data());
                ay_.cosana.exec(tim.data() + static_cast<std::size_t>(kx) * ny, outim.data());
                for (int ky = 0; ky < kcy_; ++ky)
                    dmat[static_cast<std::size_t>(kx) * kcy_ + ky] =
                        cplx(outre[ky], outim[ky]) / (ky == 0 ? 2.0 * ny : static_cast<double>(ny));
            }
        }
        // two-sided mixing: C = Mx D My^T
        std::vector<cplx> emat(static_cast<std::size_t>(kcx_) * cy, cplx(0.0, 0.0));
#pragma omp parallel for schedule(static)
        for (int kx = 0; kx < kcx_; ++kx) {
            const cplx* drow = dmat.data() + static_cast<std::size_t>(kx) * kcy_;
            cplx* erow = emat.data() + static_cast<std::size_t>(kx) * cy;
            for (int sy = 0; sy < cy; ++sy) {
                const double* my = mixy_.data() + static_cast<std::size_t>(sy) * kcy_;
                cplx acc(0.0, 0.0);
                for (int ky = 0; ky < kcy_; ++ky) acc += my[ky] * drow[ky];
                erow[sy] = acc;
            }
        }
        std::vector<cplx> cmat(static_cast<std::size_t>(cx) * cy, cplx(0.0, 0.0));
#pragma omp parallel for schedule(static)
        for (int sx = 0; sx < cx; ++sx) {
            const double* mx = mixx_.data() + static_cast<std::size_t>(sx) * kcx_;
            cplx* crow = cmat.data() + static_cast<std::size_t>(sx) * cy;
            for (int kx = 0; kx < kcx_; ++kx) {
                const cplx* erow = emat.data() + static_cast<std::size_t>(kx) * cy;
                const double w = mx[kx];
                if (w == 0.0) continue;
                for (int sy = 0; sy < cy; ++sy) crow[sy] += w * erow[sy];
            }
        }
        for (std::size_t k = 0; k < modes.size(); ++k) {
            const auto [sx, sy] = slot_of_[k];
            coeffs[k] = cmat[static_cast<std::size_t>(sx) * cy + sy];
        }
    }

    std::vector<double> mode_values(int k) const override {
        const auto [sx, sy] = slot_of_[k];
        const auto vx = axis_values(ax_, sx, false);
        const auto vy = axis_values(ay_, sy, false);
        return outer(vx, vy);
    }

    std::pair<std::vector<double>, std::vector<double>> mode_gradient(int k) const override {
        const auto [sx, sy] = slot_of_[k];
        const auto vx = axis_values(ax_, sx, false);
        const auto vy = axis_values(ay_, sy, false);
        const auto dx = axis_values(ax_, sx, true);
        const auto dy = axis_values(ay_, sy, true);
        return {outer(dx, vy), outer(vx, dy)};
    }

    double orthonormality_residual() const override {
        const auto gx = axis_gram(ax_);
        const auto gy = axis_gram(ay_);
        double diag = 0.0;
        for (std::size_t k = 0; k < modes.size(); ++k) {
            const auto [sx, sy] = slot_of_[k];
            diag = std::max(diag, std::fabs(gx[static_cast<std::size_t>(sx) * ax_.count + sx] *
                                                gy[static_cast<std::size_t>(sy) * ay_.count + sy] -
                                            1.0));
        }
        const auto off_and_dmax = [](const std::vector<double>& g, int c) {
            double off = 0.0, dmax = 0.0;
            for (int a = 0; a < c; ++a)
                for (int b = 0; b < c; ++b) {
                    const double v = std::fabs(g[static_cast<std::size_t>(a) * c + b]);
                    (a == b ? dmax : off) = std::max(a == b ? dmax : off, v);
                }
            return std::pair<double, double>{off, dmax};
        };
        const auto [offx, dx] = off_and_dmax(gx, ax_.count);
        const auto [offy, dy] = off_and_dmax(gy, ay_.count);
        // every slot pair co-occurs with some shared partner slot, so the
        // cross terms below are attained by actual mode pairs
        return std::max({diag, offx * dy, offy * dx, offx * offy});
    }

    double eigen_residual() const override {
        // the tabulated second derivative of each trig factor is exactly
        // -freq^2 times the factor, so the pointwise defect reduces to the
        // difference between the stored eigenvalue and the frequency sum
        double r = 0.0;
        for (std::size_t k = 0; k < modes.size(); ++k) {
            const auto [sx, sy] = slot_of_[k];
            const double lam = ax_.freq[sx] * ax_.freq[sx] + ay_.freq[sy] * ay_.freq[sy];
            r = std::max(r, std::fabs(lam - modes[k].lambda) / std::max(1.0, modes[k].lambda));
        }
        return r;
    }

private:
    enum class Pass { Plain, Diff };

    // Shared two-stage inverse pipeline: stage 1 expands the y dependence per
    // x slot, stage 2 expands the x dependence per y node.  Pass::Diff swaps
    // in the differentiated family on that axis.
    void run_separable(const cplx* coeffs, cplx* nodal, Pass py, Pass px) const {
        const int cx = ax_.count, cy = ay_.count, nx = ax_.n, ny = ay_.n;
        std::vector<cplx> dense(static_cast<std::size_t>(cx) * cy, cplx(0.0, 0.0));
        for (std::size_t k = 0; k < modes.size(); ++k) {
            const auto [sx, sy] = slot_of_[k];
            dense[static_cast<std::size_t>(sx) * cy + sy] =
                coeffs[k] * (ax_.norm[sx] * ay_.norm[sy]);
        }
        std::vector<double> tre(static_cast<std::size_t>(cx) * ny),
            tim(static_cast<std::size_t>(cx) * ny);
#pragma omp parallel
        {
            std::vector<double> in(ny), out(ny);
#pragma omp for schedule(static)
            for (int sx = 0; sx < cx; ++sx) {
                for (int pass = 0; pass < 2; ++pass) {
                    std::fill(in.begin(), in.end(), 0.0);
                    for (int sy = 0; sy < cy; ++sy) {
                        const cplx c = dense[static_cast<std::size_t>(sx) * cy + sy];
                        place(ay_, sy, py, pass == 0 ? c.real() : c.imag(), in.data());
                    }
                    (py == Pass::Plain ? ay_.synth : ay_.grad).exec(in.data(), out.data());
                    double* t = pass == 0 ? tre.data() : tim.data();
                    std::copy(out.begin(), out.end(), t + static_cast<std::size_t>(sx) * ny);
                }
            }
        }
#pragma omp parallel
        {
            std::vector<double> in(nx), outre(nx), outim(nx);
#pragma omp for schedule(static)
            for (int jy = 0; jy < ny; ++jy) {
                for (int pass = 0; pass < 2; ++pass) {
                    std::fill(in.begin(), in.end(), 0.0);
                    const double* t = pass == 0 ? tre.data() : tim.data();
                    for (int sx = 0; sx < cx; ++sx)
                        place(ax_, sx, px, t[static_cast<std::size_t>(sx) * ny + jy], in.data());
                    (px == Pass::Plain ? ax_.synth : ax_.grad)
                        .exec(in.data(), (pass == 0 ? outre : outim).data());
                }
                for (int ix = 0; ix < nx; ++ix)
                    nodal[static_cast<std::size_t>(ix) * ny + jy] = cplx(outre[ix], outim[ix]);
            }
        }
    }

    // Scatter one slot amplitude into the r2r input array.
    //   Plain sine family  (DST-III): slot s -> index s, half amplitude.
    //   Plain cosine family (DCT-III): slot s -> index s, half amplitude
    //                                  except the constant slot (full).
    //   Differentiated sine family -> cosine series at index m, +freq/2.
    //   Differentiated cosine family -> sine series at index m-1, -freq/2.
    static void place(const AxisTable& ax, int s, Pass p, double amp, double* in) {
        if (p == Pass::Plain) {
            in[s] += ax.dirichlet || ax.mval[s] > 0 ? 0.5 * amp : amp;
            return;
        }
        const int m = ax.mval[s];
        if (ax.dirichlet) {
            in[m] += 0.5 * ax.freq[s] * amp;
        } else if (m > 0) {
            in[m - 1] -= 0.5 * ax.freq[s] * amp;
        }
    }

    // Nodal values of one axis factor (norm folded); diff = true tabulates
    // its derivative.
    static std::vector<double> axis_values(const AxisTable& ax, int s, bool diff) {
        std::vector<double> v(ax.n);
        const double f = ax.freq[s], nrm = ax.norm[s];
        for (int j = 0; j < ax.n; ++j) {
            const double x = (j + 0.5) * ax.h;
            if (ax.dirichlet)
                v[j] = diff ? nrm * f * std::cos(f * x) : nrm * std::sin(f * x);
            else
                v[j] = diff ? -nrm * f * std::sin(f * x) : nrm * std::cos(f * x);
        }
        return v;
    }

    std::vector<double> outer(const std::vector<double>& vx, const std::vector<double>& vy) const {
        std::vector<double> v(static_cast<std::size_t>(ax_.n) * ay_.n);
        for (int ix = 0; ix < ax_.n; ++ix)
            for (int jy = 0; jy < ay_.n; ++jy)
                v[static_cast<std::size_t>(ix) * ay_.n + jy] = vx[ix] * vy[jy];
        return v;
    }

    static std::vector<double> axis_gram(const AxisTable& ax) {
        std::vector<double> g(static_cast<std::size_t>(ax.count) * ax.count, 0.0);
        std::vector<std::vector<double>> vals(ax.count);
        for (int s = 0; s < ax.count; ++s) vals[s] = axis_values(ax, s, false);
        for (int a = 0; a < ax.count; ++a)
            for (int b = a; b < ax.count; ++b) {
                double acc = 0.0;
                for (int j = 0; j < ax.n; ++j) acc += vals[a][j] * vals[b][j];
                acc *= ax.h;
                g[static_cast<std::size_t>(a) * ax.count + b] = acc;
                g[static_cast<std::size_t>(b) * ax.count + a] = acc;
            }
        return g;
    }

    AxisTable ax_, ay_;
    std::vector<std::pair<int, int>> slot_of_;
    int kcx_ = 0, kcy_ = 0;
    std::vector<double> mixx_, mixy_;  // cosine-to-sine-slot change of family
};

}  // namespace

std::shared_ptr<const BasisImpl> make_rectangle_engine(const ManifoldSpec& spec, double mu_max,
                                                       double refine) {
    return std::make_shared<RectangleEngine>(spec, mu_max, refine);
}

}  // namespace xsblab
