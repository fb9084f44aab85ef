#include "ipt/tract.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <map>
#include <ostream>
#include <stdexcept>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace ipt {

namespace {

std::string fmt17(double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

GridRecord evaluate_point(const ProblemFamily& family, double delta, int d,
                          long long cap) {
    GridRecord rec;
    rec.delta = delta;
    rec.d = d;
    try {
        rec.k_star = k_star(family, delta, d, cap);
        rec.cap_hit = rec.k_star.cap_hit;
    } catch (const capacity_error&) {
        // tensor kinds cannot certify counts past the cap; record the cap as a
        // lower bound and flag the point
        rec.k_star = CountResult::make_exact(cap, true);
        rec.cap_hit = true;
    }
    rec.log_k_star = std::max(0.0, rec.k_star.log_value());
    rec.q = q_quotient(rec.k_star, delta, d);
    return rec;
}

// Trailing run of at least `min_run` points with Q >= q_tol and Q
// non-decreasing (up to a tiny slack for float noise).
bool trailing_run_bad(const std::vector<GridRecord>& seq, double q_tol, int min_run,
                      std::vector<GridRecord>* witness) {
    const int n = static_cast<int>(seq.size());
    if (n < min_run) return false;
    for (int i = n - min_run; i < n; ++i) {
        if (seq[i].q < q_tol) return false;
        if (i > n - min_run && seq[i].q < seq[i - 1].q * (1.0 - 1e-9)) return false;
    }
    if (witness) witness->assign(seq.end() - min_run, seq.end());
    return true;
}

}  // namespace

std::string verdict_name(Verdict v) {
    switch (v) {
        case Verdict::TractableEvidence: return "tractable-evidence";
        case Verdict::IntractableInDelta: return "intractable-in-delta";
        case Verdict::IntractableInD: return "intractable-in-d";
        case Verdict::IntractableJoint: return "intractable-joint";
        case Verdict::Inconclusive: return "inconclusive";
    }
    return "?";
}

CountResult k_star(const ProblemFamily& family, double delta, int d, long long cap) {
    if (delta <= 0.0) throw std::domain_error("k_star needs delta > 0");
    const Spectrum spec = family.spectrum_of_d(d);
    if (spec.finite_rank())
        throw std::invalid_argument("tractability requires infinite-rank spectra");
    const IndexFunction& phi = family.smoothness;
    const double s1 = spec.value(1);
    if (phi.theta(s1 * s1) <= delta) return CountResult::make_exact(1);
    // delta < Theta(s_1^2) <= Theta(domain_max) here, so the inversion is in range
    const double tau = std::sqrt(phi.invert_theta(delta));
    CountResult n = spec.count_above(tau, cap);
    if (n.exact && n.count < 1) n = CountResult::make_exact(1);
    return n;
}

double q_quotient(const CountResult& k_star, double delta, int d) {
    const double log_k = std::max(0.0, k_star.log_value());
    return log_k / (d + 1.0 / delta);
}

double affine_q(const CountResult& k_star, double delta, int d, double a, double b) {
    if (!k_star.exact)
        throw std::domain_error("affine_q needs an exact count");
    const double shifted = a * static_cast<double>(k_star.count) + b;
    if (shifted <= 0.0) throw std::domain_error("affine_q needs a*k + b > 0");
    return std::log(shifted) / (d + 1.0 / delta);
}

CountResult info_complexity(const ProblemFamily& family, double eps, int d,
                            long long cap) {
    if (eps <= 0.0) throw std::domain_error("info_complexity needs eps > 0");
    const Spectrum spec = family.spectrum_of_d(d);
    const IndexFunction& phi = family.smoothness;
    auto companion = [&](long long k) {
        const double s = spec.value(k);
        return phi.theta(s * s);
    };
    if (!(companion(1) > eps)) return CountResult::make_exact(0);
    long long lo = 1, hi = 2;
    while (companion(hi) > eps) {
        lo = hi;
        if (hi > cap) throw capacity_error("info complexity exceeds cap");
        hi *= 2;
    }
    while (hi - lo > 1) {
        const long long mid = lo + (hi - lo) / 2;
        if (companion(mid) > eps)
            lo = mid;
        else
            hi = mid;
    }
    if (lo > cap) throw capacity_error("info complexity exceeds cap");
    return CountResult::make_exact(lo);
}

CountResult direct_info_complexity(const Spectrum& spec, double eps, long long cap) {
    if (eps <= 0.0) throw std::domain_error("direct_info_complexity needs eps > 0");
    return spec.count_above(eps, cap);
}

std::vector<ShellMax> frontier_shells(const std::vector<GridRecord>& records) {
    if (records.empty()) return {};
    double t_min = std::numeric_limits<double>::infinity();
    for (const auto& r : records) t_min = std::min(t_min, r.d + 1.0 / r.delta);
    std::map<int, ShellMax> shells;
    for (const auto& r : records) {
        const double t = r.d + 1.0 / r.delta;
        const int s = static_cast<int>(std::floor(std::log2(t / t_min)));
        auto [it, inserted] = shells.try_emplace(s);
        ShellMax& sm = it->second;
        if (inserted) {
            sm.shell = s;
            sm.t_lo = t_min * std::pow(2.0, s);
            sm.max_q = r.q;
            sm.has_log_scale = !r.k_star.exact || r.cap_hit;
        } else {
            sm.max_q = std::max(sm.max_q, r.q);
            sm.has_log_scale = sm.has_log_scale || !r.k_star.exact || r.cap_hit;
        }
    }
    std::vector<ShellMax> out;
    out.reserve(shells.size());
    for (auto& [s, sm] : shells) out.push_back(sm);
    return out;
}

Verdict classify(const std::vector<GridRecord>& records,
                 const std::vector<ShellMax>& frontier, double q_tol, int min_shells,
                 std::vector<GridRecord>* witness) {
    if (witness) witness->clear();
    if (records.size() < 2) return Verdict::Inconclusive;

    // fixed delta, d increasing
    std::map<double, std::vector<GridRecord>> by_delta;
    for (const auto& r : records) by_delta[r.delta].push_back(r);
    for (auto& [delta, col] : by_delta) {
        std::sort(col.begin(), col.end(),
                  [](const GridRecord& a, const GridRecord& b) { return a.d < b.d; });
        if (trailing_run_bad(col, q_tol, min_shells, witness))
            return Verdict::IntractableInD;
    }

    // fixed d, 1/delta increasing
    std::map<int, std::vector<GridRecord>> by_d;
    for (const auto& r : records) by_d[r.d].push_back(r);
    for (auto& [d, row] : by_d) {
        std::sort(row.begin(), row.end(), [](const GridRecord& a, const GridRecord& b) {
            return a.delta > b.delta;
        });
        if (trailing_run_bad(row, q_tol, min_shells, witness))
            return Verdict::IntractableInDelta;
    }

    // diagonal witness: both factors grow together (delta * d of order one)
    std::vector<GridRecord> diag;
    for (const auto& r : records) {
        const double p = r.delta * r.d;
        if (p >= 1.0 / 1.5 && p <= 1.5) diag.push_back(r);
    }
    std::sort(diag.begin(), diag.end(),
              [](const GridRecord& a, const GridRecord& b) { return a.d < b.d; });
    if (trailing_run_bad(diag, q_tol, min_shells, witness))
        return Verdict::IntractableJoint;

    // decreasing frontier maxima ending below tolerance; log-scale or capped
    // counts cannot support the tractable verdict
    const int ns = static_cast<int>(frontier.size());
    if (ns >= min_shells) {
        bool ok = true;
        for (int i = ns - min_shells; i < ns && ok; ++i) {
            if (frontier[i].has_log_scale) ok = false;
            if (i > ns - min_shells && !(frontier[i].max_q < frontier[i - 1].max_q))
                ok = false;
        }
        if (ok && frontier.back().max_q < q_tol) return Verdict::TractableEvidence;
    }
    return Verdict::Inconclusive;
}

namespace {

TractabilityReport assemble(const ProblemFamily& family,
                            std::vector<GridRecord> records, long long /*cap*/,
                            double q_tol, int min_shells) {
    TractabilityReport report;
    std::sort(records.begin(), records.end(),
              [](const GridRecord& a, const GridRecord& b) {
                  if (a.d != b.d) return a.d < b.d;
                  return a.delta > b.delta;
              });
    report.records = std::move(records);
    report.frontier_max_q = frontier_shells(report.records);
    report.q_tol = q_tol;
    report.min_shells = min_shells;
    report.verdict = classify(report.records, report.frontier_max_q, q_tol,
                              min_shells, &report.witness);
    (void)family;
    return report;
}

}  // namespace

namespace {

std::vector<std::pair<double, int>> cross_grid(const std::vector<double>& delta_grid,
                                               const std::vector<int>& d_grid) {
    if (delta_grid.empty() || d_grid.empty())
        throw std::invalid_argument("sweep grids must be non-empty");
    std::vector<std::pair<double, int>> points;
    points.reserve(delta_grid.size() * d_grid.size());
    for (int d : d_grid)
        for (double delta : delta_grid) points.emplace_back(delta, d);
    return points;
}

}  // namespace

TractabilityReport sweep_points(const ProblemFamily& family,
                                const std::vector<std::pair<double, int>>& points,
                                long long cap, double q_tol, int min_shells) {
    if (points.empty()) throw std::invalid_argument("sweep grids must be non-empty");
    const auto total = static_cast<long long>(points.size());
    std::vector<GridRecord> records(static_cast<std::size_t>(total));
#pragma omp parallel for schedule(dynamic)
    for (long long i = 0; i < total; ++i)
        records[i] = evaluate_point(family, points[i].first, points[i].second, cap);
    return assemble(family, std::move(records), cap, q_tol, min_shells);
}

TractabilityReport sweep_points_serial(const ProblemFamily& family,
                                       const std::vector<std::pair<double, int>>& points,
                                       long long cap, double q_tol, int min_shells) {
    if (points.empty()) throw std::invalid_argument("sweep grids must be non-empty");
    std::vector<GridRecord> records;
    records.reserve(points.size());
    for (const auto& [delta, d] : points)
        records.push_back(evaluate_point(family, delta, d, cap));
    return assemble(family, std::move(records), cap, q_tol, min_shells);
}

TractabilityReport sweep(const ProblemFamily& family,
                         const std::vector<double>& delta_grid,
                         const std::vector<int>& d_grid, long long cap, double q_tol,
                         int min_shells) {
    return sweep_points(family, cross_grid(delta_grid, d_grid), cap, q_tol, min_shells);
}

TractabilityReport sweep_serial(const ProblemFamily& family,
                                const std::vector<double>& delta_grid,
                                const std::vector<int>& d_grid, long long cap,
                                double q_tol, int min_shells) {
    return sweep_points_serial(family, cross_grid(delta_grid, d_grid), cap, q_tol,
                               min_shells);
}

void write_report_csv(const TractabilityReport& report, std::ostream& os) {
    os << "d,delta,k_star,log_k_star,Q,cap_hit\n";
    for (const auto& r : report.records) {
        os << r.d << ',' << fmt17(r.delta) << ',';
        if (r.k_star.exact)
            os << r.k_star.count;
        else
            os << "NA";
        os << ',' << fmt17(r.log_k_star) << ',' << fmt17(r.q) << ','
           << (r.cap_hit ? 1 : 0) << '\n';
    }
}

namespace {
void write_record_json(const GridRecord& r, std::ostream& os) {
    os << "{\"d\":" << r.d << ",\"delta\":" << fmt17(r.delta) << ",\"k_star\":";
    if (r.k_star.exact)
        os << r.k_star.count;
    else
        os << "null";
    os << ",\"log_k_star\":" << fmt17(r.log_k_star) << ",\"Q\":" << fmt17(r.q)
       << ",\"cap_hit\":" << (r.cap_hit ? "true" : "false") << "}";
}
}  // namespace

void write_report_json(const TractabilityReport& report, std::ostream& os) {
    os << "{\n  \"verdict\": \"" << verdict_name(report.verdict) << "\",\n"
       << "  \"q_tol\": " << fmt17(report.q_tol) << ",\n"
       << "  \"min_shells\": " << report.min_shells << ",\n  \"records\": [";
    for (std::size_t i = 0; i < report.records.size(); ++i) {
        os << (i ? "," : "") << "\n    ";
        write_record_json(report.records[i], os);
    }
    os << "\n  ],\n  \"frontier_max_q\": [";
    for (std::size_t i = 0; i < report.frontier_max_q.size(); ++i) {
        const auto& s = report.frontier_max_q[i];
        os << (i ? "," : "") << "\n    {\"shell\":" << s.shell
           << ",\"t_lo\":" << fmt17(s.t_lo) << ",\"max_q\":" << fmt17(s.max_q)
           << ",\"has_log_scale\":" << (s.has_log_scale ? "true" : "false") << "}";
    }
    os << "\n  ],\n  \"witness\": [";
    for (std::size_t i = 0; i < report.witness.size(); ++i) {
        os << (i ? "," : "") << "\n    ";
        write_record_json(report.witness[i], os);
    }
    os << "\n  ]\n}\n";
}

double regression_slope(const std::vector<double>& x, const std::vector<double>& y) {
    if (x.size() != y.size() || x.size() < 2)
        throw std::invalid_argument("regression needs >= 2 paired points");
    const double n = static_cast<double>(x.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sx += x[i];
        sy += y[i];
        sxx += x[i] * x[i];
        sxy += x[i] * y[i];
    }
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

}  // namespace ipt
