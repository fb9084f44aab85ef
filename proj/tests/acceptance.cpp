// End-to-end acceptance checks for the tractability calculator. Each criterion
// prints exactly one PASS/FAIL line; the process exits nonzero if any fail.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "ipt/config.hpp"
#include "ipt/discretize.hpp"
#include "ipt/recon.hpp"
#include "ipt/spectrum.hpp"
#include "ipt/tract.hpp"

using namespace ipt;

namespace {

int g_failures = 0;

class Criterion {
public:
    Criterion(int id, std::string label) : id_(id), label_(std::move(label)) {}

    void require(bool ok, const std::string& what) {
        if (!ok) {
            ok_ = false;
            if (!why_.empty()) why_ += "; ";
            why_ += what;
        }
    }

    void note(const std::string& text) {
        if (!notes_.empty()) notes_ += ", ";
        notes_ += text;
    }

    void fail_exception(const std::string& what) {
        ok_ = false;
        why_ = "exception: " + what;
    }

    ~Criterion() {
        std::printf("criterion %2d (%s): %s%s%s\n", id_, label_.c_str(),
                    ok_ ? "PASS" : "FAIL",
                    ok_ ? (notes_.empty() ? "" : " — ") : " — ",
                    ok_ ? notes_.c_str() : why_.c_str());
        if (!ok_) ++g_failures;
    }

private:
    int id_;
    std::string label_;
    std::string notes_;
    std::string why_;
    bool ok_ = true;
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string fmt(double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.4g", x);
    return buf;
}

ProblemFamily moderate_family(double a = 1.0, double p = 0.5) {
    return ProblemFamily{"moderate",
                         [a](int d) {
                             return Spectrum::power_decay(a, d,
                                                          LeadingConstant::constant(1.0));
                         },
                         IndexFunction::power(p), "direct"};
}

std::vector<double> log_grid(double lo, double hi, int n) {
    std::vector<double> g;
    const double a = std::log(lo), b = std::log(hi);
    for (int i = 0; i < n; ++i) g.push_back(std::exp(a + (b - a) * i / (n - 1)));
    return g;
}

void criterion1() {
    Criterion c(1, "moderate decay: level scales like (1/delta)^{1/2}");
    try {
        const auto t0 = std::chrono::steady_clock::now();
        const auto fam = moderate_family();
        std::vector<double> x, y;
        for (double delta : {1e-2, 1e-3, 1e-4, 1e-5, 1e-6}) {
            const auto k = k_star(fam, delta, 1);
            c.require(k.exact, "count must stay enumerable");
            x.push_back(std::log(1.0 / delta));
            y.push_back(k.log_value());
        }
        const double slope = regression_slope(x, y);
        c.require(std::abs(slope - 0.5) <= 0.05 * 0.5,
                  "slope " + fmt(slope) + " not within 5% of 0.5");
        const double el = seconds_since(t0);
        c.require(el < 1.0, "runtime " + fmt(el) + "s exceeds 1s");
        c.note("slope=" + fmt(slope) + ", " + fmt(el) + "s");
    } catch (const std::exception& e) {
        c.fail_exception(e.what());
    }
}

void criterion2() {
    Criterion c(2, "mild decay: level explodes super-polynomially in 1/delta");
    try {
        const auto t0 = std::chrono::steady_clock::now();
        ProblemFamily fam{"mild", [](int) { return Spectrum::log_decay(); },
                          IndexFunction::power(0.5), "direct"};
        const auto k4 = k_star(fam, 1e-4, 1);
        c.require(!k4.exact, "expected a log-scale count at delta=1e-4");
        c.require(std::abs(k4.log_value() - 100.0) <= 1.0,
                  "log k* = " + fmt(k4.log_value()) + " not 100 +- 1");
        double prev = 0.0;
        bool increasing = true;
        for (double delta : {1e-1, 1e-2, 1e-3, 1e-4}) {
            const auto k = k_star(fam, delta, 1);
            const double r = k.log_value() / std::log(1.0 / delta);
            increasing = increasing && r > prev;
            prev = r;
        }
        c.require(increasing, "log k* / log(1/delta) must strictly increase");
        const double el = seconds_since(t0);
        c.require(el < 1.0, "runtime " + fmt(el) + "s exceeds 1s");
        c.note("log k*(1e-4)=" + fmt(k4.log_value()) + ", " + fmt(el) + "s");
    } catch (const std::exception& e) {
        c.fail_exception(e.what());
    }
}

void criterion3() {
    Criterion c(3, "sobolev scale: level multiplies ~100x per dimension");
    try {
        const auto t0 = std::chrono::steady_clock::now();
        // a = p = 1/2, sobolev exponent p/(2a) = 1/2
        ProblemFamily fam{"sobolev",
                          [](int d) {
                              return Spectrum::power_decay(
                                  0.5, d, LeadingConstant::constant(1.0));
                          },
                          IndexFunction::power(0.5), "sobolev"};
        const long long cap = 10000000000000LL;
        std::vector<double> ks;
        for (int d = 1; d <= 6; ++d) {
            const auto k = k_star(fam, 1e-2, d, cap);
            c.require(k.exact, "count must stay enumerable at d=" + std::to_string(d));
            ks.push_back(double(k.count));
        }
        for (size_t i = 1; i < ks.size(); ++i) {
            const double ratio = ks[i] / ks[i - 1];
            c.require(ratio >= 80.0 && ratio <= 125.0,
                      "step ratio " + fmt(ratio) + " outside [80,125]");
        }
        const auto rep = sweep(fam, {1e-2}, {1, 2, 3, 4, 5, 6}, cap);
        c.require(rep.verdict == Verdict::IntractableInD,
                  "verdict " + verdict_name(rep.verdict) + " != intractable-in-d");
        const double el = seconds_since(t0);
        c.require(el < 5.0, "runtime " + fmt(el) + "s exceeds 5s");
        c.note("k*(d=6)=" + fmt(ks.back()) + ", " + fmt(el) + "s");
    } catch (const std::exception& e) {
        c.fail_exception(e.what());
    }
}

void criterion4() {
    Criterion c(4, "level equals companion information complexity");
    try {
        std::mt19937_64 rng(2024);
        std::uniform_real_distribution<double> unif(0.0, 1.0);
        auto rand_delta = [&] { return std::pow(10.0, -3.5 * unif(rng)) * 0.5; };
        auto rand_phi = [&] {
            switch (rng() % 3) {
                case 0: return IndexFunction::power(0.25 + 1.75 * unif(rng));
                case 1: return IndexFunction::log_power(0.5 + unif(rng));
                default: return IndexFunction::sublinear_benchmark(0.3 + 0.5 * unif(rng));
            }
        };
        std::vector<std::function<Spectrum(std::mt19937_64&)>> makers = {
            [&](std::mt19937_64& r) {
                const int d = 1 + int(r() % 4);
                return Spectrum::power_decay(0.5 + 1.5 * unif(r), d,
                                             LeadingConstant::constant(0.5 + unif(r)));
            },
            [&](std::mt19937_64& r) {
                const int d = 1 + int(r() % 4);
                return Spectrum::power_decay(0.5 + 1.5 * unif(r), d,
                                             LeadingConstant::linear(1.0 + unif(r)));
            },
            [&](std::mt19937_64& r) {
                const int d = 1 + int(r() % 4);
                return Spectrum::power_decay(
                    1.0 + unif(r), d,
                    LeadingConstant::sublinear_power(0.3 + 0.4 * unif(r), 1.0 + unif(r)));
            },
            [](std::mt19937_64&) { return Spectrum::log_decay(); },
            [&](std::mt19937_64& r) {
                return Spectrum::mixed_integration(1 + int(r() % 2), 300000);
            },
            [&](std::mt19937_64& r) {
                return Spectrum::lower_bound_speed(0.5 + unif(r), 2 + int(r() % 4));
            },
            [&](std::mt19937_64& r) {
                const double ratio = 0.3 + 0.5 * unif(r);
                return Spectrum::tensor_product(
                    UnivariateSeq([ratio](long long j) { return std::pow(ratio, j - 1); }),
                    1 + int(r() % 3), 300000);
            },
            [&](std::mt19937_64& r) {
                std::vector<double> vals;
                double v = 0.5 + unif(r);
                for (int i = 0; i < 40; ++i) {
                    vals.push_back(v);
                    v *= 0.5 + 0.5 * unif(r);
                }
                // truncated view of an infinite operator: counts that the
                // prefix cannot resolve raise capacity_error and are skipped
                return Spectrum::explicit_values(vals, false);
            },
        };
        long long probes = 0, mismatches = 0;
        while (probes < 600) {
            const auto& make = makers[probes % makers.size()];
            Spectrum spec = make(rng);
            ProblemFamily fam{"probe", [spec](int) { return spec; }, rand_phi(), "direct"};
            const double delta = rand_delta();
            CountResult k, n;
            try {
                k = k_star(fam, delta, spec.dimension(), 100000);
                n = info_complexity(fam, delta, spec.dimension(), 100000);
            } catch (const capacity_error&) {
                continue;
            } catch (const std::range_error&) {
                continue;
            }
            ++probes;
            if (n.exact && n.count < 1) continue;  // identity only claimed for n >= 1
            if (k.exact != n.exact)
                ++mismatches;
            else if (k.exact && k.count != n.count)
                ++mismatches;
            else if (!k.exact && std::abs(k.log_value() - n.log_value()) > 1e-9)
                ++mismatches;
        }
        c.require(mismatches == 0, std::to_string(mismatches) + " mismatching probes");
        c.note(std::to_string(probes) + " probes, 0 mismatches");
    } catch (const std::exception& e) {
        c.fail_exception(e.what());
    }
}

void criterion5() {
    Criterion c(5, "power-decay trichotomy: constant / linear / sublinear leading term");
    try {
        const auto t0 = std::chrono::steady_clock::now();

        // (a) constant: curse in d at fixed delta
        const auto fam_a = moderate_family();
        const auto rep_a = sweep(fam_a, {1e-2}, {1, 2, 3, 4, 5, 6, 7, 8, 9, 10},
                                 100000000000LL);
        double prev = -1.0;
        for (const auto& r : rep_a.records) {
            c.require(r.q >= prev - 1e-12, "Q must be non-decreasing in d");
            if (r.d >= 5) c.require(r.q >= 0.05, "Q < 0.05 at d=" + std::to_string(r.d));
            prev = r.q;
        }
        c.require(rep_a.verdict == Verdict::IntractableInD,
                  "constant verdict " + verdict_name(rep_a.verdict));

        // (b) linear c(t) = t: quotient dies out along the frontier
        ProblemFamily fam_b{"linear",
                            [](int d) {
                                return Spectrum::power_decay(
                                    1.0, d, LeadingConstant::linear(1.0));
                            },
                            IndexFunction::power(0.5), "direct"};
        const auto rep_b = sweep(fam_b, log_grid(1e-4, 1e-1, 13), {1, 2, 4, 8, 16},
                                 10000000000000LL);
        const auto& sh = rep_b.frontier_max_q;
        c.require(sh.size() >= 3, "need >= 3 frontier shells");
        if (sh.size() >= 3) {
            const auto n = sh.size();
            c.require(sh[n - 3].max_q > sh[n - 2].max_q &&
                          sh[n - 2].max_q > sh[n - 1].max_q,
                      "last three shell maxima must strictly decrease");
            c.require(sh[n - 1].max_q < 0.05,
                      "final shell max " + fmt(sh[n - 1].max_q) + " >= 0.05");
        }
        c.require(rep_b.verdict == Verdict::TractableEvidence,
                  "linear verdict " + verdict_name(rep_b.verdict));

        // (c) sublinear power with the matched benchmark smoothness, probed
        // along delta = 1/d
        ProblemFamily fam_c{"sublinear",
                            [](int d) {
                                return Spectrum::power_decay(
                                    1.0, d, LeadingConstant::sublinear_power(0.5, 2.0));
                            },
                            IndexFunction::sublinear_benchmark(0.5), "direct"};
        std::vector<std::pair<double, int>> diag;
        for (int d = 4; d <= 12; ++d) diag.emplace_back(1.0 / d, d);
        const auto rep_c = sweep_points(fam_c, diag);
        double min_q = 1e300;
        for (const auto& r : rep_c.records) min_q = std::min(min_q, r.q);
        c.require(min_q >= 0.1, "diagonal Q dips to " + fmt(min_q));
        c.require(rep_c.verdict == Verdict::IntractableJoint,
                  "sublinear verdict " + verdict_name(rep_c.verdict));

        const double el = seconds_since(t0);
        c.require(el < 10.0, "runtime " + fmt(el) + "s exceeds 10s");
        c.note("min diagonal Q=" + fmt(min_q) + ", " + fmt(el) + "s");
    } catch (const std::exception& e) {
        c.fail_exception(e.what());
    }
}

void criterion6() {
    Criterion c(6, "mixed integration: weak tractability across dimensions");
    try {
        const auto t0 = std::chrono::steady_clock::now();
        ProblemFamily fam{"mixed",
                          [](int d) { return Spectrum::mixed_integration(d, 10000000); },
                          IndexFunction::power(0.5), "direct"};
        const auto deltas = log_grid(1e-3, 1e-1, 9);
        const std::vector<int> ds{1, 2, 3, 4, 5, 6, 7, 8};
        const auto rep = sweep(fam, deltas, ds, 10000000);
        double max_q = 0.0;
        for (const auto& r : rep.records) {
            c.require(r.k_star.exact && !r.cap_hit, "lattice count left the cap");
            c.require(r.q <= 0.2, "Q=" + fmt(r.q) + " above 0.2");
            max_q = std::max(max_q, r.q);
        }
        // records ordered by (d, delta): compare along d at fixed delta
        for (const auto& rec : rep.records) {
            if (rec.d < 3) continue;
            for (const auto& other : rep.records) {
                if (other.delta == rec.delta && other.d == rec.d + 1)
                    c.require(other.q <= rec.q + 1e-12,
                              "Q must not increase from d=" + std::to_string(rec.d));
            }
        }
        c.require(rep.verdict == Verdict::TractableEvidence,
                  "verdict " + verdict_name(rep.verdict));
        const double el = seconds_since(t0);
        c.require(el < 30.0, "runtime " + fmt(el) + "s exceeds 30s");
        c.note("max Q=" + fmt(max_q) + ", " + fmt(el) + "s");
    } catch (const std::exception& e) {
        c.fail_exception(e.what());
    }
}

void criterion7() {
    Criterion c(7, "slow-decay floor: level at least e^{d-1}");
    try {
        // delta0 = 0.1 gives 4 * Theta^{-1}(delta0) = 0.4 < cbar^2 = 1
        const double delta0 = 0.1;
        ProblemFamily fam{"slow",
                          [](int d) { return Spectrum::lower_bound_speed(1.0, d); },
                          IndexFunction::power(0.5), "direct"};
        for (int d = 3; d <= 10; ++d) {
            const auto k = k_star(fam, delta0, d);
            c.require(k.exact, "count must stay enumerable");
            const double floor = std::exp(double(d - 1));
            c.require(double(k.count) >= floor,
                      "k*=" + fmt(double(k.count)) + " < e^" + std::to_string(d - 1));
            if (d >= 10) {  // d >= 1/delta0
                const double q = q_quotient(k, delta0, d);
                c.require(q >= 0.25, "Q=" + fmt(q) + " < 1/4 at d=" + std::to_string(d));
            }
        }
        c.note("floor holds for d=3..10");
    } catch (const std::exception& e) {
        c.fail_exception(e.what());
    }
}

void criterion8() {
    Criterion c(8, "numeric SVD and tensor rearrangement agree with closed forms");
    try {
        const auto t0 = std::chrono::steady_clock::now();
        const auto sv = numeric_singular_values(build_volterra(2000), 10);
        for (long long j = 1; j <= 10; ++j) {
            const double model = 2.0 / ((2.0 * j - 1.0) * std::numbers::pi);
            c.require(std::abs(sv[j - 1] - model) <= 0.01 * model,
                      "singular value " + std::to_string(j) + " off by >1%");
        }

        const int n = 24;
        const auto uni = numeric_singular_values(build_volterra(n), n);
        std::vector<double> prods;
        for (double a : uni)
            for (double b : uni) prods.push_back(a * b);
        std::sort(prods.begin(), prods.end(), std::greater<>());
        const auto biv = numeric_singular_values(tensor_volterra(n), 30);
        for (int i = 0; i < 30; ++i)
            c.require(std::abs(biv[i] - prods[i]) <= 1e-10 * prods[0],
                      "kronecker value " + std::to_string(i + 1) + " inconsistent");

        std::mt19937_64 rng(99);
        std::uniform_real_distribution<double> unif(0.0, 1.0);
        long long bad = 0;
        for (int rep = 0; rep < 100; ++rep) {
            const int d = 2 + (rep % 2);
            // keep len^d >= K so the brute-force enumeration covers the prefix
            const int len = d == 2 ? 32 + int(rng() % 8) : 10 + int(rng() % 15);
            std::vector<double> vals(len);
            double v = 0.5 + unif(rng);
            for (int i = 0; i < len; ++i) {
                vals[i] = v;
                v *= 0.3 + 0.7 * unif(rng);
            }
            const auto seq = UnivariateSeq::from_values(vals);
            std::vector<double> all{1.0};
            for (int r = 0; r < d; ++r) {
                std::vector<double> next;
                next.reserve(all.size() * len);
                for (double p : all)
                    for (double s : vals) next.push_back(p * s);
                all = std::move(next);
            }
            std::sort(all.begin(), all.end(), std::greater<>());
            const auto got = tensor_rearrange(seq, d, 1000);
            for (int i = 0; i < 1000; ++i)
                if (std::abs(got[i] - all[i]) > 1e-12 * all[0]) ++bad;
        }
        c.require(bad == 0, std::to_string(bad) + " rearranged values off");
        const double el = seconds_since(t0);
        c.require(el < 60.0, "runtime " + fmt(el) + "s exceeds 60s");
        c.note(fmt(el) + "s");
    } catch (const std::exception& e) {
        c.fail_exception(e.what());
    }
}

void criterion9() {
    Criterion c(9, "cut-off errors respect the bound and the factor-two rule");
    try {
        const auto fam = moderate_family();
        const auto spec = fam.spectrum_of_d(1);
        const auto& phi = fam.smoothness;
        std::mt19937_64 rng(7);
        long long violations = 0;
        for (int i = 0; i < 1000; ++i) {
            const double delta = std::pow(10.0, -1.0 - 3.0 * (i % 10) / 9.0);
            const auto p = random_problem(spec, phi, delta, 50, rng);
            const auto r = spectral_cutoff(p, 1 + (i % 49));
            if (r.error > r.bound * (1 + 1e-12)) ++violations;
        }
        c.require(violations == 0,
                  std::to_string(violations) + " random bound violations");

        long long adv_bad = 0, opt_bad = 0;
        for (double delta : log_grid(1e-4, 0.3, 12)) {
            for (long long n : {1LL, 2LL, 5LL, 20LL}) {
                const auto p = adversarial_instance(spec, phi, delta, n);
                const auto r = spectral_cutoff(p, n);
                if (r.ratio < 1.0 / std::sqrt(2.0) - 1e-12 || r.ratio > 1.0 + 1e-12)
                    ++adv_bad;
            }
            const auto chk = optimality_check(fam, delta, 1);
            if (!chk.error_within_bound) ++opt_bad;
        }
        c.require(adv_bad == 0, std::to_string(adv_bad) + " adversarial ratios off");
        c.require(opt_bad == 0, std::to_string(opt_bad) + " factor-two violations");
        c.note("1000 random + adversarial instances clean");
    } catch (const std::exception& e) {
        c.fail_exception(e.what());
    }
}

void criterion10() {
    Criterion c(10, "empirical leading constant of the bivariate operator");
    try {
        // convergence is logarithmic; a factor-two agreement with 1/pi^2 is
        // all one can see at this scale
        const double est = estimate_leading_constant(2, 100000, 1000000);
        const double target = 1.0 / (std::numbers::pi * std::numbers::pi);
        c.require(est >= target / 2.0 && est <= target * 2.0,
                  "estimate " + fmt(est) + " outside factor 2 of " + fmt(target));
        c.note("estimate=" + fmt(est) + ", target=" + fmt(target));
    } catch (const std::exception& e) {
        c.fail_exception(e.what());
    }
}

}  // namespace

int main() {
    criterion1();
    criterion2();
    criterion3();
    criterion4();
    criterion5();
    criterion6();
    criterion7();
    criterion8();
    criterion9();
    criterion10();
    if (g_failures > 0) {
        std::printf("%d criteria FAILED\n", g_failures);
        return 1;
    }
    std::printf("all criteria passed\n");
    return 0;
}
