// Timing comparison: fast transform engines (FFT-based, OpenMP-parallel)
// against the serial reference mode sums.  Prints one table row per basis.
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <string>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "xsblab/basis.hpp"
#include "xsblab/manifold.hpp"
#include "xsblab/rng.hpp"

using namespace xsblab;
using clock_type = std::chrono::steady_clock;

namespace {

const double kPi = 3.14159265358979323846;

double time_ms(int reps, const std::function<void()>& body) {
    body(); // warm-up (plan creation, cache)
    auto t0 = clock_type::now();
    for (int r = 0; r < reps; ++r) body();
    auto t1 = clock_type::now();
    return std::chrono::duration<double, std::milli>(t1 - t0).count() / reps;
}

void bench_basis(const std::string& name, const ManifoldSpec& spec, double mu_max,
                 int reps_fast, int reps_ref) {
    auto basis = build_basis(spec, mu_max);
    Rng rng(99);
    std::vector<cplx> coeffs(basis.n_modes());
    for (auto& c : coeffs) c = rng.normal_complex();
    std::vector<cplx> nodal(basis.n_nodes()), back(basis.n_modes());

    const double syn_fast =
        time_ms(reps_fast, [&] { basis.synthesize(coeffs.data(), nodal.data()); });
    const double syn_ref =
        time_ms(reps_ref, [&] { basis.synthesize_reference(coeffs.data(), nodal.data()); });
    basis.synthesize(coeffs.data(), nodal.data());
    const double ana_fast =
        time_ms(reps_fast, [&] { basis.analyze(nodal.data(), back.data()); });
    const double ana_ref =
        time_ms(reps_ref, [&] { basis.analyze_reference(nodal.data(), back.data()); });

    std::printf("%-24s %6zu %8zu %11.3f %11.3f %7.1fx %11.3f %11.3f %7.1fx\n",
                name.c_str(), basis.n_modes(), basis.n_nodes(), syn_fast, syn_ref,
                syn_ref / syn_fast, ana_fast, ana_ref, ana_ref / ana_fast);
}

} // namespace

int main(int argc, char** argv) {
    int threads = 0;
    if (argc > 1) threads = std::atoi(argv[1]);
#ifdef _OPENMP
    if (threads > 0) omp_set_num_threads(threads);
    std::printf("OpenMP max threads: %d\n", omp_get_max_threads());
#else
    std::printf("OpenMP: disabled\n");
#endif
    std::printf("%-24s %6s %8s %11s %11s %8s %11s %11s %8s\n", "basis", "modes",
                "nodes", "syn fast", "syn ref", "speedup", "ana fast", "ana ref",
                "speedup");
    std::printf("(times in ms per transform)\n");

    bench_basis("rect pi*pi mu=16", ManifoldSpec::rectangle(kPi, kPi, Boundary::Dirichlet),
                16.0, 50, 5);
    bench_basis("rect pi*pi mu=32", ManifoldSpec::rectangle(kPi, kPi, Boundary::Dirichlet),
                32.0, 50, 3);
    bench_basis("rect pi*pi mu=64", ManifoldSpec::rectangle(kPi, kPi, Boundary::Dirichlet),
                64.0, 20, 1);
    bench_basis("disk mu=16", ManifoldSpec::unit_disk(Boundary::Dirichlet), 16.0, 20, 3);
    bench_basis("disk mu=32", ManifoldSpec::unit_disk(Boundary::Dirichlet), 32.0, 10, 1);
    return 0;
}
