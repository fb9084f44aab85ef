#include "ipt/discretize.hpp"

#include <lapacke.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "ipt/spectrum.hpp"

namespace ipt {

namespace {
constexpr long long kDenseEntryGuard = 100000000;  // 1e8 doubles
}

OperatorMatrix build_volterra(int n_grid) {
    if (n_grid < 2) throw std::invalid_argument("build_volterra needs n_grid >= 2");
    const long long n = n_grid;
    if (n * n > kDenseEntryGuard)
        throw capacity_error("volterra matrix too large for dense storage");
    OperatorMatrix m;
    m.n_grid = n_grid;
    m.d = 1;
    m.dim = n;
    m.entries.assign(static_cast<std::size_t>(n * n), 0.0);
    const double h = 1.0 / n_grid;
    // kernel is the indicator {t <= s}; the diagonal midpoint sits on the
    // boundary and gets half weight
    for (long long i = 0; i < n; ++i) {
        for (long long j = 0; j < i; ++j) m.entries[i * n + j] = h;
        m.entries[i * n + i] = 0.5 * h;
    }
    return m;
}

OperatorMatrix tensor_volterra(int n_grid) {
    const OperatorMatrix a = build_volterra(n_grid);
    const long long n = a.dim;
    const long long dim = n * n;
    if (dim * dim > kDenseEntryGuard)
        throw capacity_error("tensor volterra matrix too large for dense storage");
    OperatorMatrix m;
    m.n_grid = n_grid;
    m.d = 2;
    m.dim = dim;
    m.entries.assign(static_cast<std::size_t>(dim * dim), 0.0);
    for (long long i1 = 0; i1 < n; ++i1)
        for (long long j1 = 0; j1 < n; ++j1) {
            const double aij = a.entries[i1 * n + j1];
            if (aij == 0.0) continue;
            for (long long i2 = 0; i2 < n; ++i2)
                for (long long j2 = 0; j2 < n; ++j2) {
                    const double b = a.entries[i2 * n + j2];
                    if (b == 0.0) continue;
                    m.entries[(i1 * n + i2) * dim + (j1 * n + j2)] = aij * b;
                }
        }
    return m;
}

std::vector<double> numeric_singular_values(const OperatorMatrix& m, long long count) {
    if (count < 1 || count > m.dim)
        throw std::invalid_argument("singular value count out of range");
    std::vector<double> a = m.entries;  // dgesdd destroys its input
    std::vector<double> sv(static_cast<std::size_t>(m.dim));
    const auto n = static_cast<lapack_int>(m.dim);
    // row-major LAPACKE validates ldu/ldvt against n even for jobz = 'N'
    const lapack_int info = LAPACKE_dgesdd(LAPACK_ROW_MAJOR, 'N', n, n, a.data(), n,
                                           sv.data(), nullptr, n, nullptr, n);
    if (info != 0)
        throw std::runtime_error("dgesdd failed with info=" + std::to_string(info) +
                                 " (dim=" + std::to_string(m.dim) + ")");
    sv.resize(static_cast<std::size_t>(count));
    return sv;
}

std::vector<AsymptoticRow> validate_asymptotics(int d, int n_grid, long long j_max) {
    if (d != 1 && d != 2)
        throw capacity_error(
            "dense validation covers d in {1,2}; higher d rests on the Kronecker "
            "identity");
    if (j_max > n_grid / 10 * (d == 1 ? 1 : n_grid))
        throw std::invalid_argument("j_max beyond reliably resolved numeric rank");

    const OperatorMatrix m = d == 1 ? build_volterra(n_grid) : tensor_volterra(n_grid);
    const std::vector<double> numeric = numeric_singular_values(m, j_max);
    const Spectrum model = Spectrum::mixed_integration(d);

    const double cd =
        1.0 / (std::tgamma(static_cast<double>(d)) * std::pow(std::numbers::pi, d));
    std::vector<AsymptoticRow> rows;
    rows.reserve(static_cast<std::size_t>(j_max));
    for (long long j = 1; j <= j_max; ++j) {
        AsymptoticRow row;
        row.j = j;
        row.numeric = numeric[j - 1];
        row.model = model.value(j);
        const double lj = std::log(static_cast<double>(j));
        row.asymptotic = cd * std::pow(lj, d - 1) / j;
        row.ratio_model = row.numeric / row.model;
        row.ratio_asymptotic = row.asymptotic > 0.0 ? row.numeric / row.asymptotic : 0.0;
        rows.push_back(row);
    }
    return rows;
}

}  // namespace ipt
