#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <sstream>
#include <vector>

#include "ipt/tract.hpp"

using namespace ipt;

namespace {

ProblemFamily moderate_family() {
    // s_j = 1/j, phi(t) = sqrt(t): Theta(t) = t, so k*(delta) counts j with
    // 1/j^2 > delta
    return ProblemFamily{
        "moderate",
        [](int d) { return Spectrum::power_decay(1.0, d, LeadingConstant::constant(1.0)); },
        IndexFunction::power(0.5),
        "direct",
    };
}

ProblemFamily mild_family() {
    return ProblemFamily{
        "mild",
        [](int) { return Spectrum::log_decay(); },
        IndexFunction::power(0.5),
        "direct",
    };
}

GridRecord synth(double delta, int d, double q) {
    GridRecord r;
    r.delta = delta;
    r.d = d;
    r.k_star = CountResult::make_exact(
        std::llround(std::exp(q * (d + 1.0 / delta))));
    r.log_k_star = q * (d + 1.0 / delta);
    r.q = q;
    return r;
}

std::vector<double> log_grid(double lo, double hi, int n) {
    std::vector<double> g;
    const double a = std::log(lo), b = std::log(hi);
    for (int i = 0; i < n; ++i) g.push_back(std::exp(a + (b - a) * i / (n - 1)));
    return g;
}

}  // namespace

TEST_CASE("minimal level for the worked families") {
    const auto mod = moderate_family();
    auto k = k_star(mod, 0.01, 1);
    REQUIRE(k.exact);
    CHECK(k.count == 9);

    // Theta(s_1^2) <= delta collapses to level one even when Theta^{-1}(delta)
    // would leave the domain
    k = k_star(mod, 1.5, 1);
    REQUIRE(k.exact);
    CHECK(k.count == 1);

    const auto mild = mild_family();
    k = k_star(mild, 1e-4, 1, 1000000);
    REQUIRE(!k.exact);
    CHECK(k.log_value() == doctest::Approx(100.0).epsilon(1e-9));
}

TEST_CASE("minimality of the level") {
    const auto fams = {moderate_family(), mild_family()};
    for (const auto& fam : fams) {
        for (double delta : log_grid(2e-3, 0.5, 12)) {
            const auto k = k_star(fam, delta, 1, 2000000);
            if (!k.exact) continue;
            const auto spec = fam.spectrum_of_d(1);
            const auto theta = [&](long long j) {
                const double s = spec.value(j);
                return fam.smoothness.theta(s * s);
            };
            if (k.count > 1) CHECK(theta(k.count) > delta);
            CHECK(!(theta(k.count + 1) > delta));
        }
    }
}

TEST_CASE("tractability quotient") {
    CHECK(q_quotient(CountResult::make_exact(9), 0.01, 1) ==
          doctest::Approx(std::log(9.0) / 101.0).epsilon(1e-12));
    CHECK(q_quotient(CountResult::make_exact(1), 0.01, 5) == 0.0);
    CHECK(q_quotient(CountResult::log_scale(100.0), 1e-4, 1) ==
          doctest::Approx(100.0 / 10001.0).epsilon(1e-12));
}

TEST_CASE("quotient is invariant under affine rescaling of the level") {
    const auto k = CountResult::make_exact(100000);
    const double base = q_quotient(k, 1e-3, 2);
    for (auto [a, b] : std::vector<std::pair<double, double>>{{2, 0}, {1, 50}, {3, -7}}) {
        const double shifted = affine_q(k, 1e-3, 2, a, b);
        // |log(a k + b) - log k| <= log a + |b|/k exactly
        const double slack = (std::log(std::max(a, 1.0)) + std::abs(b) / 1e5 + 1e-12) /
                             (2 + 1000.0);
        CHECK(std::abs(shifted - base) <= slack);
    }
    CHECK_THROWS_AS(affine_q(CountResult::make_exact(1), 0.1, 1, 1.0, -1.0),
                    std::domain_error);
}

TEST_CASE("level equals the information complexity of the companion problem") {
    for (const auto& fam : {moderate_family(), mild_family()}) {
        for (double delta : log_grid(5e-3, 0.5, 8)) {
            const auto k = k_star(fam, delta, 1, 2000000);
            const auto n = info_complexity(fam, delta, 1, 2000000);
            REQUIRE(k.exact == n.exact);
            if (k.exact)
                CHECK(std::max(k.count, 1LL) == std::max(n.count, 1LL));
            else
                CHECK(k.log_value() == doctest::Approx(n.log_value()).epsilon(1e-9));
        }
    }
}

TEST_CASE("companion counts reduce to direct counts when phi is the square root") {
    // phi(t) = sqrt(t) gives Theta(s^2) = s^2, so the companion threshold eps
    // matches the direct threshold sqrt(eps)
    const auto fam = moderate_family();
    const auto spec = fam.spectrum_of_d(1);
    for (double eps : log_grid(1e-4, 0.5, 10)) {
        const auto companion = info_complexity(fam, eps, 1);
        const auto direct = direct_info_complexity(spec, std::sqrt(eps));
        REQUIRE(companion.exact);
        CHECK(companion.count == direct.count);
    }
}

TEST_CASE("level scaling exponent in the noise") {
    // log k* vs log(1/delta): slope 1/(2p+1) per convention
    const auto deltas = log_grid(1e-6, 1e-2, 9);
    std::vector<double> x, y;
    const auto fam = moderate_family();
    for (double delta : deltas) {
        const auto k = k_star(fam, delta, 1);
        REQUIRE(k.exact);
        x.push_back(std::log(1.0 / delta));
        y.push_back(k.log_value());
    }
    CHECK(regression_slope(x, y) == doctest::Approx(0.5).epsilon(0.02));

    // sobolev convention: phi(t) = t^{p/(2a)} with p = 1/2, a = 1 gives
    // exponent 1/4, Theta^{-1}(delta) = delta^{4/3}, count ~ delta^{-2/3}
    ProblemFamily sob = fam;
    sob.smoothness = IndexFunction::power(0.25);
    sob.convention = "sobolev";
    x.clear();
    y.clear();
    for (double delta : deltas) {
        const auto k = k_star(sob, delta, 1);
        REQUIRE(k.exact);
        x.push_back(std::log(1.0 / delta));
        y.push_back(k.log_value());
    }
    CHECK(regression_slope(x, y) == doctest::Approx(2.0 / 3.0).epsilon(0.02));
}

TEST_CASE("classify on synthesized record patterns") {
    std::vector<GridRecord> recs;

    SUBCASE("growth along d at fixed delta") {
        for (int d = 1; d <= 8; ++d) recs.push_back(synth(0.01, d, 0.1 + 0.01 * d));
        std::vector<GridRecord> wit;
        CHECK(classify(recs, frontier_shells(recs), 0.05, 3, &wit) ==
              Verdict::IntractableInD);
        CHECK(wit.size() >= 3);
        for (const auto& w : wit) CHECK(w.delta == 0.01);
    }

    SUBCASE("growth along delta at fixed d") {
        for (double delta : {0.1, 0.05, 0.02, 0.01, 0.005}) {
            recs.push_back(synth(delta, 2, 0.2));  // flat but above tolerance
        }
        CHECK(classify(recs, frontier_shells(recs), 0.05, 3, nullptr) ==
              Verdict::IntractableInDelta);
    }

    SUBCASE("growth only along the diagonal") {
        for (int d = 2; d <= 10; ++d)
            recs.push_back(synth(1.0 / d, d, 0.3 + 0.005 * d));
        CHECK(classify(recs, frontier_shells(recs), 0.05, 3, nullptr) ==
              Verdict::IntractableJoint);
    }

    SUBCASE("quotient decaying toward zero") {
        for (double delta : log_grid(1e-4, 0.5, 16))
            for (int d = 1; d <= 4; ++d)
                recs.push_back(synth(delta, d, 1.0 / (d + 1.0 / delta)));
        CHECK(classify(recs, frontier_shells(recs), 0.05, 3, nullptr) ==
              Verdict::TractableEvidence);
    }

    SUBCASE("log-scale counts block a tractable verdict") {
        for (double delta : log_grid(1e-4, 0.5, 16))
            for (int d = 1; d <= 4; ++d) {
                auto r = synth(delta, d, 1.0 / (d + 1.0 / delta));
                r.k_star = CountResult::log_scale(r.log_k_star);
                r.cap_hit = true;
                recs.push_back(r);
            }
        CHECK(classify(recs, frontier_shells(recs), 0.05, 3, nullptr) ==
              Verdict::Inconclusive);
    }

    SUBCASE("too few records") {
        recs.push_back(synth(0.1, 1, 0.01));
        CHECK(classify(recs, frontier_shells(recs), 0.05, 3, nullptr) ==
              Verdict::Inconclusive);
    }
}

TEST_CASE("frontier shells are dyadic maxima") {
    std::vector<GridRecord> recs;
    for (double delta : {0.5, 0.1, 0.01})
        for (int d : {1, 4, 16}) recs.push_back(synth(delta, d, 0.1));
    const auto shells = frontier_shells(recs);
    REQUIRE(!shells.empty());
    double prev_lo = 0.0;
    for (const auto& sh : shells) {
        CHECK(sh.t_lo > prev_lo);
        CHECK(sh.max_q == doctest::Approx(0.1));
        prev_lo = sh.t_lo;
    }
}

TEST_CASE("parallel sweep reproduces the serial reference exactly") {
    const auto fam = moderate_family();
    const auto deltas = log_grid(1e-4, 0.3, 14);
    const std::vector<int> ds{1, 2, 3, 4, 5, 6};
    const auto par = sweep(fam, deltas, ds);
    const auto ser = sweep_serial(fam, deltas, ds);
    REQUIRE(par.records.size() == ser.records.size());
    for (size_t i = 0; i < par.records.size(); ++i) {
        const auto& a = par.records[i];
        const auto& b = ser.records[i];
        CHECK(a.delta == b.delta);
        CHECK(a.d == b.d);
        CHECK(a.k_star.exact == b.k_star.exact);
        CHECK(a.k_star.count == b.k_star.count);
        CHECK(a.log_k_star == b.log_k_star);
        CHECK(a.q == b.q);
    }
    CHECK(par.verdict == ser.verdict);

    std::ostringstream ja, jb;
    write_report_json(par, ja);
    write_report_json(ser, jb);
    CHECK(ja.str() == jb.str());
}

TEST_CASE("dimension-independent family shows tractable evidence") {
    // the spectrum ignores d entirely, so only the 1/delta direction matters
    ProblemFamily fam{
        "flat",
        [](int) { return Spectrum::power_decay(1.0, 1, LeadingConstant::constant(1.0)); },
        IndexFunction::power(0.5),
        "direct",
    };
    const auto rep = sweep(fam, log_grid(1e-4, 0.3, 14), {1, 2, 3, 4, 5, 6, 7, 8});
    CHECK(rep.verdict == Verdict::TractableEvidence);
}

TEST_CASE("csv report shape") {
    const auto fam = moderate_family();
    const auto rep = sweep_serial(fam, {0.01}, {1});
    std::ostringstream os;
    write_report_csv(rep, os);
    std::istringstream in(os.str());
    std::string line;
    std::getline(in, line);
    CHECK(line == "d,delta,k_star,log_k_star,Q,cap_hit");
    std::getline(in, line);
    CHECK(line.rfind("1,0.01", 0) == 0);
}

TEST_CASE("regression slope") {
    CHECK(regression_slope({0, 1, 2, 3}, {1, 3, 5, 7}) == doctest::Approx(2.0));
}
