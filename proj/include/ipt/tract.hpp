#pragma once

#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

#include "ipt/index_fn.hpp"
#include "ipt/spectrum.hpp"

namespace ipt {

/// A family of operator equations d -> A_d together with one smoothness
/// profile shared across dimensions.
struct ProblemFamily {
    std::string name;
    std::function<Spectrum(int)> spectrum_of_d;
    IndexFunction smoothness = IndexFunction::power(0.5);
    /// Which exponent convention the smoothness uses ("direct": phi(t) = t^p,
    /// "sobolev": phi(t) = t^{p/(2a)}); reports carry the label.
    std::string convention = "direct";
};

struct GridRecord {
    double delta = 0.0;
    int d = 0;
    CountResult k_star;
    double log_k_star = 0.0;  // natural log, exact or carried
    double q = 0.0;           // log k* / (d + 1/delta)
    bool cap_hit = false;
};

enum class Verdict {
    TractableEvidence,
    IntractableInDelta,
    IntractableInD,
    IntractableJoint,
    Inconclusive,
};

std::string verdict_name(Verdict v);

/// Maximum of Q over one dyadic shell T0*2^s <= d + 1/delta < T0*2^{s+1}.
struct ShellMax {
    int shell = 0;
    double t_lo = 0.0;
    double max_q = 0.0;
    bool has_log_scale = false;  // some record in the shell carries a log-only count
};

struct TractabilityReport {
    std::vector<GridRecord> records;  // ordered by (d, delta)
    std::vector<ShellMax> frontier_max_q;
    Verdict verdict = Verdict::Inconclusive;
    std::vector<GridRecord> witness;
    double q_tol = 0.05;
    int min_shells = 3;
};

/// Minimal discretization level: 1 if Theta(s_1^2) <= delta, else the largest
/// k with Theta(s_k^2) > delta, computed as a count above sqrt(Theta^{-1}(delta)).
CountResult k_star(const ProblemFamily& family, double delta, int d,
                   long long cap = 1000000000LL);

/// log(k*) / (d + 1/delta)
double q_quotient(const CountResult& k_star, double delta, int d);

/// log(a*k* + b) / (d + 1/delta); domain error when a*k* + b <= 0.
/// Only defined for exact counts (log-scale counts are left to q_quotient,
/// where the affine shift is asymptotically irrelevant anyway).
double affine_q(const CountResult& k_star, double delta, int d, double a, double b);

/// Information complexity of the companion problem whose singular values are
/// Theta(s_k^2): largest k with Theta(s_k^2) > eps, 0 when the set is empty.
CountResult info_complexity(const ProblemFamily& family, double eps, int d,
                            long long cap = 1000000000LL);

/// Count for the raw spectrum of A_d: #{ k : s_k > eps }.
CountResult direct_info_complexity(const Spectrum& spec, double eps,
                                   long long cap = 1000000000LL);

/// Classify a finished record set; fills `witness` with the justifying
/// subsequence when a verdict other than tractable-evidence/inconclusive is
/// reached.
Verdict classify(const std::vector<GridRecord>& records,
                 const std::vector<ShellMax>& frontier, double q_tol,
                 int min_shells, std::vector<GridRecord>* witness = nullptr);

std::vector<ShellMax> frontier_shells(const std::vector<GridRecord>& records);

/// Evaluate every (delta, d) grid point and classify. Grid points are
/// independent; the parallel variant runs them under OpenMP and produces the
/// identical report (records are written by index and reduced in (d, delta)
/// order).
TractabilityReport sweep(const ProblemFamily& family,
                         const std::vector<double>& delta_grid,
                         const std::vector<int>& d_grid,
                         long long cap = 1000000000LL, double q_tol = 0.05,
                         int min_shells = 3);

/// Serial reference implementation of sweep; kept for testing and benchmarks.
TractabilityReport sweep_serial(const ProblemFamily& family,
                                const std::vector<double>& delta_grid,
                                const std::vector<int>& d_grid,
                                long long cap = 1000000000LL, double q_tol = 0.05,
                                int min_shells = 3);

/// Sweep over explicit (delta, d) pairs, e.g. the diagonal probe delta = 1/d.
TractabilityReport sweep_points(const ProblemFamily& family,
                                const std::vector<std::pair<double, int>>& points,
                                long long cap = 1000000000LL, double q_tol = 0.05,
                                int min_shells = 3);

TractabilityReport sweep_points_serial(const ProblemFamily& family,
                                       const std::vector<std::pair<double, int>>& points,
                                       long long cap = 1000000000LL,
                                       double q_tol = 0.05, int min_shells = 3);

void write_report_csv(const TractabilityReport& report, std::ostream& os);
void write_report_json(const TractabilityReport& report, std::ostream& os);

/// Least-squares slope of y against x.
double regression_slope(const std::vector<double>& x, const std::vector<double>& y);

}  // namespace ipt
