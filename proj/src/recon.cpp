#include "ipt/recon.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace ipt {

double ReconstructionProblem::data(long long j) const {
    const auto i = static_cast<std::size_t>(j - 1);
    return s[i] * x[i] + delta * xi[i];
}

namespace {

double norm2(const std::vector<double>& v) {
    double s = 0;
    for (double a : v) s += a * a;
    return std::sqrt(s);
}

}  // namespace

ReconstructionProblem make_problem(const Spectrum& spec, const IndexFunction& phi,
                                   std::vector<double> v, std::vector<double> xi,
                                   double delta) {
    if (v.size() != xi.size())
        throw std::invalid_argument("source and noise prefixes must have equal length");
    if (v.empty()) throw std::invalid_argument("empty problem prefix");
    if (delta < 0.0) throw std::invalid_argument("noise level must be >= 0");
    if (norm2(v) > 1.0 + 1e-12)
        throw std::invalid_argument("source coefficients must have l2 norm <= 1");
    if (norm2(xi) > 1.0 + 1e-12)
        throw std::invalid_argument("noise coefficients must have l2 norm <= 1");

    ReconstructionProblem p;
    p.delta = delta;
    p.phi = phi;
    p.v = std::move(v);
    p.xi = std::move(xi);
    const auto n = static_cast<long long>(p.v.size());
    p.s.resize(p.v.size());
    p.x.resize(p.v.size());
    for (long long j = 1; j <= n; ++j) {
        const double sj = spec.value(j);
        if (sj <= 0.0) throw std::invalid_argument("spectrum prefix must be positive");
        p.s[j - 1] = sj;
        p.x[j - 1] = phi.phi(sj * sj) * p.v[j - 1];
    }
    return p;
}

ReconResult spectral_cutoff(const ReconstructionProblem& problem, long long n) {
    const long long n_max = problem.n_max();
    if (n < 1 || n >= n_max)
        throw std::invalid_argument(
            "cutoff level must satisfy 1 <= n < stored prefix length");
    double err2 = 0.0;
    for (long long j = 1; j <= n; ++j) {
        const double noise = problem.delta * problem.xi[j - 1] / problem.s[j - 1];
        err2 += noise * noise;
    }
    for (long long j = n + 1; j <= n_max; ++j)
        err2 += problem.x[j - 1] * problem.x[j - 1];

    ReconResult r;
    r.n = n;
    r.error = std::sqrt(err2);
    const double s_next = problem.s[static_cast<std::size_t>(n)];
    r.bound = problem.phi.phi(s_next * s_next) + problem.delta / problem.s[n - 1];
    r.ratio = r.bound > 0.0 ? r.error / r.bound : 0.0;
    return r;
}

ReconstructionProblem adversarial_instance(const Spectrum& spec,
                                           const IndexFunction& phi, double delta,
                                           long long n, long long n_max) {
    if (n < 1) throw std::invalid_argument("adversarial instance needs n >= 1");
    if (n_max <= 0) n_max = std::max<long long>(4 * n, 64);
    if (n_max < n + 1) throw std::invalid_argument("prefix must cover n + 1");
    std::vector<double> v(static_cast<std::size_t>(n_max), 0.0);
    std::vector<double> xi(static_cast<std::size_t>(n_max), 0.0);
    v[static_cast<std::size_t>(n)] = 1.0;   // e_{n+1}
    xi[static_cast<std::size_t>(n - 1)] = 1.0;  // e_n
    return make_problem(spec, phi, std::move(v), std::move(xi), delta);
}

OptimalityCheck optimality_check(const ProblemFamily& family, double delta, int d) {
    const CountResult ks = k_star(family, delta, d);
    if (!ks.exact)
        throw capacity_error("optimality check only runs for enumerable k*");
    const Spectrum spec = family.spectrum_of_d(d);
    const IndexFunction& phi = family.smoothness;
    const long long k = std::max<long long>(ks.count, 1);

    const ReconstructionProblem problem = adversarial_instance(spec, phi, delta, k);
    const ReconResult res = spectral_cutoff(problem, k);

    OptimalityCheck chk;
    chk.k_star = k;
    chk.error_at_kstar = res.error;
    const double sk = spec.value(k);
    chk.two_phi_bound = 2.0 * phi.phi(sk * sk);
    double theta_inv;
    try {
        theta_inv = phi.invert_theta(delta);
    } catch (const std::range_error&) {
        theta_inv = phi.domain_max();  // k* = 1 regime; delta past Theta range
    }
    chk.rate_bound = 2.0 * phi.phi(theta_inv);
    const double s_next = spec.value(k + 1);
    chk.error_within_bound = chk.error_at_kstar <= chk.two_phi_bound * (1.0 + 1e-12);
    chk.tail_below_rate =
        phi.phi(s_next * s_next) <= phi.phi(theta_inv) * (1.0 + 1e-12);
    return chk;
}

double lower_bound_reference(const Spectrum& spec, const IndexFunction& phi,
                             long long j) {
    if (j < 1) throw std::invalid_argument("cardinality must be >= 1");
    const double s = spec.value(j + 1);
    return phi.phi(s * s);
}

ReconstructionProblem random_problem(const Spectrum& spec, const IndexFunction& phi,
                                     double delta, long long n_max,
                                     std::mt19937_64& rng) {
    if (n_max < 2) throw std::invalid_argument("random problem needs n_max >= 2");
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    auto sphere = [&](std::size_t n) {
        std::vector<double> w(n);
        double s = 0;
        do {
            for (auto& a : w) a = gauss(rng);
            s = norm2(w);
        } while (s == 0.0);
        const double radius = 1.0 - unif(rng);  // uniform in (0, 1]
        for (auto& a : w) a *= radius / s;
        return w;
    };
    auto v = sphere(static_cast<std::size_t>(n_max));
    auto xi = sphere(static_cast<std::size_t>(n_max));
    return make_problem(spec, phi, std::move(v), std::move(xi), delta);
}

}  // namespace ipt
