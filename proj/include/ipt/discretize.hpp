#pragma once

#include <cstdint>
#include <vector>

namespace ipt {

/// Dense midpoint-rule discretization of the d-variate integration operator
/// on the unit cube (d = 1 or 2). Row-major, dimension n_grid^d.
struct OperatorMatrix {
    int n_grid = 0;
    int d = 1;
    long long dim = 0;
    std::vector<double> entries;

    double at(long long i, long long j) const { return entries[i * dim + j]; }
};

/// Univariate Volterra matrix: entry (i,j) = 1/n for t_j < s_i, 1/(2n) on the
/// diagonal cell (the midpoint falls half inside the integration range).
OperatorMatrix build_volterra(int n_grid);

/// Kronecker square of build_volterra(n_grid); the bivariate mixed operator.
OperatorMatrix tensor_volterra(int n_grid);

/// Top `count` singular values, non-increasing. Dense LAPACK SVD.
std::vector<double> numeric_singular_values(const OperatorMatrix& m, long long count);

struct AsymptoticRow {
    long long j = 0;
    double numeric = 0.0;     // singular value of the discretized operator
    double model = 0.0;       // mixed-integration spectrum value
    double asymptotic = 0.0;  // C(d) log^{d-1}(j)/j with C(d) = 1/((d-1)! pi^d)
    double ratio_model = 0.0;
    double ratio_asymptotic = 0.0;  // 0 where the asymptotic model vanishes
};

/// Per-j comparison of numeric singular values against the closed-form model
/// and the asymptotic law. j = 1 is excluded from the asymptotic ratio for
/// d = 2 (log(1) = 0).
std::vector<AsymptoticRow> validate_asymptotics(int d, int n_grid, long long j_max);

}  // namespace ipt
