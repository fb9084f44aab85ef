// Compares the OpenMP sweep against the serial reference on a dense grid and
// checks that both produce identical reports.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <vector>

#include "ipt/tract.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace {

using clock_type = std::chrono::steady_clock;

double seconds_since(clock_type::time_point t0) {
    return std::chrono::duration<double>(clock_type::now() - t0).count();
}

}  // namespace

int main() {
    ipt::ProblemFamily fam;
    fam.name = "mixed_integration";
    fam.spectrum_of_d = [](int d) { return ipt::Spectrum::mixed_integration(d); };
    fam.smoothness = ipt::IndexFunction::power(0.5);

    std::vector<double> deltas;
    for (int i = 0; i < 12; ++i) deltas.push_back(1e-10 * std::pow(10.0, -3.0 * i / 11.0));
    const std::vector<int> ds = {1, 2, 3, 4};

#ifdef _OPENMP
    std::printf("threads: %d\n", omp_get_max_threads());
#else
    std::printf("threads: 1 (OpenMP disabled)\n");
#endif

    auto t0 = clock_type::now();
    const auto serial = ipt::sweep_serial(fam, deltas, ds, 1000000000LL);
    const double t_serial = seconds_since(t0);

    t0 = clock_type::now();
    const auto parallel = ipt::sweep(fam, deltas, ds, 1000000000LL);
    const double t_parallel = seconds_since(t0);

    bool identical = serial.records.size() == parallel.records.size() &&
                     serial.verdict == parallel.verdict;
    for (std::size_t i = 0; identical && i < serial.records.size(); ++i) {
        const auto& a = serial.records[i];
        const auto& b = parallel.records[i];
        identical = a.d == b.d && a.delta == b.delta &&
                    a.k_star.exact == b.k_star.exact && a.k_star.count == b.k_star.count &&
                    a.q == b.q;
    }

    std::printf("grid points: %zu\n", serial.records.size());
    std::printf("serial:   %.3f s\n", t_serial);
    std::printf("parallel: %.3f s  (speedup %.2fx)\n", t_parallel,
                t_parallel > 0 ? t_serial / t_parallel : 0.0);
    std::printf("reports identical: %s\n", identical ? "yes" : "NO");
    return identical ? 0 : 1;
}
