#include <algorithm>
#include <cmath>
#include <map>
#include <memory>
#include <vector>

#include "xsblab/bessel.hpp"
#include "xsblab/errors.hpp"
#include "engine.hpp"
#include "fftw_util.hpp"

namespace xsblab {
namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;

// One radial shape, shared by the cosine and sine modes of angular order m.
// R carries the full L2 normalization of the mode (radial and angular), so a
// mode is R(r) times a bare cos/sin(m theta) factor.
struct RadialFamily {
    int m = 0;
    int q = 0;          // radial rank; 0 only for the constant mode
    double nu = 0.0;    // frequency; lambda = nu^2
    double scale = 0.0; // R(r) = scale * J_m(nu r)
    std::vector<double> R;    // values at the radial nodes
    std::vector<double> Rp;   // d/dr
    std::vector<double> Ror;  // R / r
};

class DiskEngine final : public BasisImpl {
public:
    DiskEngine(const ManifoldSpec& s, double mu, double refine) {
        spec = s;
        mu_max = mu;
        const bool dir = s.boundary == Boundary::Dirichlet;
        const double mu_cut = mu * (1.0 + 1e-12);

        // Radial rule: Gauss-Legendre in r with the area weight r folded in.
        // Products of three resolved radial shapes are entire of exponential
        // type 3 nu, which a polynomial of degree ~1.45 per unit type absorbs
        // to machine precision; the +32 floor keeps small bases comfortable.
        n_r_ = static_cast<int>(std::ceil(4.7 * refine * mu)) + 32;
        Quad1D gl = gauss_legendre(n_r_, 0.0, 1.0);
        r_ = gl.x;
        wtil_.resize(n_r_);
        for (int i = 0; i < n_r_; ++i) wtil_[i] = gl.w[i] * r_[i];

        // Angular rule: uniform nodes resolve e^{ik theta} exactly for
        // |k| <= n_theta - 1; keep the count even and FFT-friendly.
        n_theta_ = next_smooth(std::max(8, static_cast<int>(std::ceil(refine * (6.0 * mu + 4.0)))));
        while (n_theta_ % 2 != 0) n_theta_ = next_smooth(n_theta_ + 1);

        // Enumerate radial families.  The first root of each order increases
        // with m (for m >= 1), so the order loop can stop at first exhaustion.
        const BesselRootKind kind = dir ? BesselRootKind::JZero : BesselRootKind::JPrimeZero;
        if (!dir) {
            RadialFamily cf;  // constant mode: frequency zero
            cf.m = 0;
            cf.q = 0;
            cf.nu = 0.0;
            cf.scale = 1.0 / std::sqrt(kPi);
            cf.R.assign(n_r_, cf.scale);
            cf.Rp.assign(n_r_, 0.0);
            cf.Ror.resize(n_r_);
            for (int i = 0; i < n_r_; ++i) cf.Ror[i] = cf.R[i] / r_[i];
            families_.push_back(std::move(cf));
        }
        for (int m = 0; m <= 200; ++m) {
            const double nu1 = bessel_root(m, 1, kind);
            if (nu1 > mu_cut) {
                if (m >= 1) break;
                continue;
            }
            for (int q = 1;; ++q) {
                const double nu = q == 1 ? nu1 : bessel_root(m, q, kind);
                if (nu > mu_cut) break;
                families_.push_back(make_family(m, q, nu, dir));
            }
        }

        for (std::size_t f = 0; f < families_.size(); ++f) {
            const RadialFamily& fam = families_[f];
            EigenMode cm;
            cm.label = ModeLabel{fam.m, fam.q, 0};
            cm.mu = fam.nu;
            cm.lambda = fam.nu * fam.nu;
            modes.push_back(cm);
            if (fam.m >= 1) {
                EigenMode sm = cm;
                sm.label.parity = 1;
                modes.push_back(sm);
            }
        }
        finalize_modes(modes);

        std::map<std::pair<int, int>, int> lookup;
        for (std::size_t f = 0; f < families_.size(); ++f)
            lookup[{families_[f].m, families_[f].q}] = static_cast<int>(f);
        fam_of_.resize(modes.size());
        m_top_ = 0;
        for (std::size_t k = 0; k < modes.size(); ++k) {
            fam_of_[k] = lookup.at({modes[k].label.a, modes[k].label.b});
            m_top_ = std::max(m_top_, modes[k].label.a);
        }

        grid.node_x.resize(static_cast<std::size_t>(n_r_) * n_theta_);
        grid.node_y.resize(grid.node_x.size());
        grid.weight.resize(grid.node_x.size());
        const double dtheta = 2.0 * kPi / n_theta_;
        for (int i = 0; i < n_r_; ++i)
            for (int l = 0; l < n_theta_; ++l) {
                const std::size_t idx = static_cast<std::size_t>(i) * n_theta_ + l;
                grid.node_x[idx] = r_[i] * std::cos(dtheta * l);
                grid.node_y[idx] = r_[i] * std::sin(dtheta * l);
                grid.weight[idx] = wtil_[i] * dtheta;
            }
        grid.exactness_mu = std::min((n_theta_ - 1.0) / 3.0, (2.0 * n_r_ - 1.0) / 4.65);

        bwd_ = C2CBatchPlan(n_theta_, n_r_, FFTW_BACKWARD);
        fwd_ = C2CBatchPlan(n_theta_, n_r_, FFTW_FORWARD);
    }

    void synthesize(const cplx* coeffs, cplx* nodal) const override {
        std::vector<cplx> A, B;
        fill_banks(coeffs, BankKind::Value, A, B);
        banks_to_nodal(A, B, nodal);
    }

    void synthesize_gradient(const cplx* coeffs, cplx* g0, cplx* g1) const override {
        std::vector<cplx> A, B;
        fill_banks(coeffs, BankKind::RadialDeriv, A, B);
        banks_to_nodal(A, B, g0);
        fill_banks(coeffs, BankKind::AngularDeriv, A, B);
        banks_to_nodal(A, B, g1);
    }

    // The polar grid is exact for triple products in both factors: full-period
    // uniform angles handle every trig parity, and the radial rule has the
    // degree headroom.  So quadratic products need no special route.
    void analyze_quadratic(const cplx* nodal, cplx* coeffs) const override {
        analyze(nodal, coeffs);
    }

    void analyze(const cplx* nodal, cplx* coeffs) const override {
        std::vector<cplx> f(nodal, nodal + grid.size());
        fwd_.exec_inplace(f.data());
        // theta integrals per radial node: Ccos[m][i] = int f cos(m th) dth,
        // Csin likewise, from the +-m frequency bins
        const std::size_t bank = static_cast<std::size_t>(m_top_ + 1) * n_r_;
        std::vector<cplx> ccos(bank), csin(bank);
        const double scale = 2.0 * kPi / n_theta_;
#pragma omp parallel for schedule(static)
        for (int i = 0; i < n_r_; ++i) {
            const cplx* row = f.data() + static_cast<std::size_t>(i) * n_theta_;
            ccos[i] = scale * row[0];
            csin[i] = cplx(0.0, 0.0);
            for (int m = 1; m <= m_top_; ++m) {
                const cplx fp = row[m], fm = row[n_theta_ - m];
                ccos[static_cast<std::size_t>(m) * n_r_ + i] = scale * 0.5 * (fp + fm);
                csin[static_cast<std::size_t>(m) * n_r_ + i] =
                    scale * cplx(0.0, 0.5) * (fp - fm);
            }
        }
#pragma omp parallel for schedule(static)
        for (std::ptrdiff_t k = 0; k < static_cast<std::ptrdiff_t>(modes.size()); ++k) {
            const RadialFamily& fam = families_[fam_of_[k]];
            const cplx* c = (modes[k].label.parity == 0 ? ccos : csin).data() +
                            static_cast<std::size_t>(fam.m) * n_r_;
            cplx acc(0.0, 0.0);
            for (int i = 0; i < n_r_; ++i) acc += wtil_[i] * fam.R[i] * c[i];
            coeffs[k] = acc;
        }
    }

    std::vector<double> mode_values(int k) const override {
        const RadialFamily& fam = families_[fam_of_[k]];
        return tabulate(fam.R, fam.m, modes[k].label.parity);
    }

    std::pair<std::vector<double>, std::vector<double>> mode_gradient(int k) const override {
        const RadialFamily& fam = families_[fam_of_[k]];
        const int m = fam.m, parity = modes[k].label.parity;
        std::vector<double> g0 = tabulate(fam.Rp, m, parity);
        // (1/r) d/dtheta swaps the angular factor and scales by -+m
        std::vector<double> mro(n_r_);
        for (int i = 0; i < n_r_; ++i) mro[i] = (parity == 0 ? -m : m) * fam.Ror[i];
        std::vector<double> g1 = tabulate(mro, m, 1 - parity);
        return {std::move(g0), std::move(g1)};
    }

    double orthonormality_residual() const override {
        const std::size_t nf = families_.size();
        std::vector<double> rad(nf * nf);
        for (std::size_t a = 0; a < nf; ++a)
            for (std::size_t b = a; b < nf; ++b) {
                double acc = 0.0;
                for (int i = 0; i < n_r_; ++i) acc += wtil_[i] * families_[a].R[i] * families_[b].R[i];
                rad[a * nf + b] = rad[b * nf + a] = acc;
            }
        // numeric angular Gram over the distinct (order, parity) factors
        const int na = 2 * (m_top_ + 1);
        const double dtheta = 2.0 * kPi / n_theta_;
        std::vector<std::vector<double>> ang(na, std::vector<double>(n_theta_));
        for (int m = 0; m <= m_top_; ++m)
            for (int p = 0; p < 2; ++p)
                for (int l = 0; l < n_theta_; ++l)
                    ang[2 * m + p][l] = p == 0 ? std::cos(m * dtheta * l) : std::sin(m * dtheta * l);
        std::vector<double> ath(static_cast<std::size_t>(na) * na);
        for (int a = 0; a < na; ++a)
            for (int b = a; b < na; ++b) {
                double acc = 0.0;
                for (int l = 0; l < n_theta_; ++l) acc += ang[a][l] * ang[b][l];
                ath[static_cast<std::size_t>(a) * na + b] =
                    ath[static_cast<std::size_t>(b) * na + a] = acc * dtheta;
            }
        double res = 0.0;
        for (std::size_t j = 0; j < modes.size(); ++j)
            for (std::size_t k = j; k < modes.size(); ++k) {
                const int aj = 2 * modes[j].label.a + modes[j].label.parity;
                const int bk = 2 * modes[k].label.a + modes[k].label.parity;
                const double g = rad[static_cast<std::size_t>(fam_of_[j]) * nf + fam_of_[k]] *
                                 ath[static_cast<std::size_t>(aj) * na + bk];
                res = std::max(res, std::fabs(g - (j == k ? 1.0 : 0.0)));
            }
        return res;
    }

    double eigen_residual() const override {
        double res = 0.0;
#pragma omp parallel for schedule(static) reduction(max : res)
        for (std::ptrdiff_t f = 0; f < static_cast<std::ptrdiff_t>(families_.size()); ++f) {
            const RadialFamily& fam = families_[f];
            if (fam.nu == 0.0) continue;  // constant shape: defect identically zero
            const double lam = fam.nu * fam.nu;
            double acc = 0.0;
            for (int i = 0; i < n_r_; ++i) {
                const double t = fam.nu * r_[i];
                const double d = fam.scale * (lam * bessel_j_second(fam.m, t) +
                                              fam.nu * bessel_j_prime(fam.m, t) / r_[i] -
                                              fam.m * fam.m * bessel_j(fam.m, t) /
                                                  (r_[i] * r_[i])) +
                                 lam * fam.R[i];
                acc += wtil_[i] * d * d;
            }
            acc *= fam.m == 0 ? 2.0 * kPi : kPi;
            res = std::max(res, std::sqrt(acc) / std::max(1.0, lam));
        }
        return res;
    }

private:
    enum class BankKind { Value, RadialDeriv, AngularDeriv };

    RadialFamily make_family(int m, int q, double nu, bool dir) const {
        RadialFamily fam;
        fam.m = m;
        fam.q = q;
        fam.nu = nu;
        const double jp = bessel_j_prime(m, nu);
        const double jv = bessel_j(m, nu);
        // closed-form radial norms: int_0^1 J_m(nu r)^2 r dr
        const double rnorm2 = dir ? 0.5 * jp * jp
                                  : 0.5 * (1.0 - static_cast<double>(m) * m / (nu * nu)) * jv * jv;
        if (!(rnorm2 > 0.0)) throw NumericError("disk basis: degenerate radial norm");
        const double anorm = m == 0 ? 1.0 / std::sqrt(2.0 * kPi) : 1.0 / std::sqrt(kPi);
        const double c = anorm / std::sqrt(rnorm2);
        fam.scale = c;
        fam.R.resize(n_r_);
        fam.Rp.resize(n_r_);
        fam.Ror.resize(n_r_);
        for (int i = 0; i < n_r_; ++i) {
            const double t = nu * r_[i];
            fam.R[i] = c * bessel_j(m, t);
            fam.Rp[i] = c * nu * bessel_j_prime(m, t);
            fam.Ror[i] = fam.R[i] / r_[i];
        }
        return fam;
    }

    // Accumulate the per-order radial profiles: A feeds the cos(m theta)
    // bins, B the sin(m theta) bins.
    void fill_banks(const cplx* coeffs, BankKind kind, std::vector<cplx>& A,
                    std::vector<cplx>& B) const {
        const std::size_t bank = static_cast<std::size_t>(m_top_ + 1) * n_r_;
        A.assign(bank, cplx(0.0, 0.0));
        B.assign(bank, cplx(0.0, 0.0));
        for (std::size_t k = 0; k < modes.size(); ++k) {
            const RadialFamily& fam = families_[fam_of_[k]];
            const int parity = modes[k].label.parity;
            const cplx c = coeffs[k];
            cplx* dst;
            const std::vector<double>* tab;
            double sgn = 1.0;
            if (kind == BankKind::AngularDeriv) {
                // d/dtheta: cos modes feed sin bins with weight -m, sin modes
                // feed cos bins with weight +m
                tab = &fam.Ror;
                dst = (parity == 0 ? B : A).data();
                sgn = (parity == 0 ? -1.0 : 1.0) * fam.m;
                if (fam.m == 0) continue;
            } else {
                tab = kind == BankKind::Value ? &fam.R : &fam.Rp;
                dst = (parity == 0 ? A : B).data();
            }
            dst += static_cast<std::size_t>(fam.m) * n_r_;
            for (int i = 0; i < n_r_; ++i) dst[i] += sgn * c * (*tab)[i];
        }
    }

    void banks_to_nodal(const std::vector<cplx>& A, const std::vector<cplx>& B,
                        cplx* nodal) const {
#pragma omp parallel for schedule(static)
        for (int i = 0; i < n_r_; ++i) {
            cplx* row = nodal + static_cast<std::size_t>(i) * n_theta_;
            std::fill(row, row + n_theta_, cplx(0.0, 0.0));
            row[0] = A[i];
            for (int m = 1; m <= m_top_; ++m) {
                const cplx a = A[static_cast<std::size_t>(m) * n_r_ + i];
                const cplx b = B[static_cast<std::size_t>(m) * n_r_ + i];
                row[m] = 0.5 * (a - cplx(0.0, 1.0) * b);
                row[n_theta_ - m] = 0.5 * (a + cplx(0.0, 1.0) * b);
            }
        }
        bwd_.exec_inplace(nodal);
    }

    std::vector<double> tabulate(const std::vector<double>& radial, int m, int parity) const {
        std::vector<double> v(grid.size());
        const double dtheta = 2.0 * kPi / n_theta_;
        std::vector<double> ang(n_theta_);
        for (int l = 0; l < n_theta_; ++l)
            ang[l] = parity == 0 ? std::cos(m * dtheta * l) : std::sin(m * dtheta * l);
        for (int i = 0; i < n_r_; ++i)
            for (int l = 0; l < n_theta_; ++l)
                v[static_cast<std::size_t>(i) * n_theta_ + l] = radial[i] * ang[l];
        return v;
    }

    int n_r_ = 0, n_theta_ = 0, m_top_ = 0;
    std::vector<double> r_, wtil_;
    std::vector<RadialFamily> families_;
    std::vector<int> fam_of_;
    C2CBatchPlan bwd_, fwd_;
};

}  // namespace

std::shared_ptr<const BasisImpl> make_disk_engine(const ManifoldSpec& spec, double mu_max,
                                                  double refine) {
    return std::make_shared<DiskEngine>(spec, mu_max, refine);
}

}  // namespace xsblab
