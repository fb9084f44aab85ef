#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "ipt/index_fn.hpp"
#include "ipt/spectrum.hpp"
#include "ipt/tract.hpp"

namespace ipt {

/// One noisy instance in SVD coordinates: data y_j = s_j x_j + delta xi_j
/// with x_j = phi(s_j^2) v_j, ||v|| <= 1, ||xi|| <= 1.
struct ReconstructionProblem {
    std::vector<double> s;   // spectrum prefix, length n_max
    std::vector<double> v;   // source coefficients
    std::vector<double> x;   // solution coefficients, x_j = phi(s_j^2) v_j
    std::vector<double> xi;  // noise coefficients
    double delta = 0.0;
    IndexFunction phi = IndexFunction::power(0.5);

    long long n_max() const { return static_cast<long long>(s.size()); }
    double data(long long j) const;  // y_j, 1-based
};

ReconstructionProblem make_problem(const Spectrum& spec, const IndexFunction& phi,
                                   std::vector<double> v, std::vector<double> xi,
                                   double delta);

struct ReconResult {
    long long n = 0;
    double error = 0.0;  // ||x - x_n^delta||, tail included
    double bound = 0.0;  // phi(s_{n+1}^2) + delta/s_n
    double ratio = 0.0;  // error / bound
};

/// Truncated-SVD reconstruction keeping the first n coordinates.
ReconResult spectral_cutoff(const ReconstructionProblem& problem, long long n);

/// The instance attaining both terms of the error bound at level n:
/// v = e_{n+1}, xi = e_n, so error^2 = phi(s_{n+1}^2)^2 + (delta/s_n)^2.
/// n_max = 0 picks max(4n, 64).
ReconstructionProblem adversarial_instance(const Spectrum& spec,
                                           const IndexFunction& phi, double delta,
                                           long long n, long long n_max = 0);

struct OptimalityCheck {
    long long k_star = 0;
    double error_at_kstar = 0.0;
    double two_phi_bound = 0.0;  // 2 phi(s_{k*}^2)
    double rate_bound = 0.0;     // 2 phi(Theta^{-1}(delta))
    bool error_within_bound = false;
    bool tail_below_rate = false;  // phi(s_{k*+1}^2) <= phi(Theta^{-1}(delta))
};

/// Run the adversarial construction at n = k*(delta, d) and certify the
/// factor-two optimality inequalities. capacity_error when k* is log-scale.
OptimalityCheck optimality_check(const ProblemFamily& family, double delta, int d);

/// Theoretical floor phi(s_{j+1}^2) for the minimal error at cardinality j.
double lower_bound_reference(const Spectrum& spec, const IndexFunction& phi,
                             long long j);

/// Random instance with v, xi uniform on spheres of radius uniform(0,1].
ReconstructionProblem random_problem(const Spectrum& spec, const IndexFunction& phi,
                                     double delta, long long n_max,
                                     std::mt19937_64& rng);

}  // namespace ipt
