#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>

#include "ipt/config.hpp"
#include "ipt/discretize.hpp"
#include "ipt/recon.hpp"
#include "ipt/tract.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitCapacity = 3;

std::string fmt17(double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

// Writes to output.csv / output.json when configured, stdout otherwise.
void emit(const ipt::RunConfig& cfg, const std::string& key, const std::string& text) {
    if (cfg.has(key)) {
        std::ofstream out(cfg.get_string(key), std::ios::binary);
        if (!out) throw ipt::config_error("cannot open output file " + cfg.get_string(key));
        out << text;
    } else {
        std::cout << text;
    }
}

int cmd_kstar(const ipt::RunConfig& cfg) {
    const ipt::ProblemFamily fam = ipt::family_from_config(cfg);
    const double delta = cfg.get_double("kstar.delta");
    const int d = static_cast<int>(cfg.get_int("kstar.d", 1));
    const long long cap = cfg.get_int("grid.cap", 1000000000LL);
    const ipt::CountResult ks = ipt::k_star(fam, delta, d, cap);
    const double q = ipt::q_quotient(ks, delta, d);
    std::cout << "family=" << fam.name << " d=" << d << " delta=" << fmt17(delta);
    if (ks.exact)
        std::cout << " k_star=" << ks.count;
    else
        std::cout << " log_k_star=" << fmt17(ks.log_count)
                  << " log10_k_star=" << fmt17(ks.log_count / std::log(10.0));
    std::cout << " Q=" << fmt17(q) << "\n";
    return kExitOk;
}

int run_sweep(const ipt::RunConfig& cfg, bool verdict_only) {
    const ipt::ProblemFamily fam = ipt::family_from_config(cfg);
    const auto ds = ipt::d_grid_from_config(cfg);
    const long long cap = cfg.get_int("grid.cap", 1000000000LL);
    const double q_tol = cfg.get_double("classify.q_tol", 0.05);
    const int min_shells = static_cast<int>(cfg.get_int("classify.min_shells", 3));

    ipt::TractabilityReport report;
    if (cfg.get_bool("grid.diagonal", false)) {
        std::vector<std::pair<double, int>> points;
        for (int d : ds) points.emplace_back(1.0 / d, d);
        report = ipt::sweep_points(fam, points, cap, q_tol, min_shells);
    } else {
        const auto deltas = ipt::delta_grid_from_config(cfg);
        report = ipt::sweep(fam, deltas, ds, cap, q_tol, min_shells);
    }

    if (!verdict_only) {
        std::ostringstream csv;
        ipt::write_report_csv(report, csv);
        emit(cfg, "output.csv", csv.str());
    }
    if (cfg.has("output.json")) {
        std::ostringstream json;
        ipt::write_report_json(report, json);
        emit(cfg, "output.json", json.str());
    }
    std::cout << "verdict=" << ipt::verdict_name(report.verdict)
              << " records=" << report.records.size()
              << " shells=" << report.frontier_max_q.size() << "\n";
    return kExitOk;
}

int cmd_recon(const ipt::RunConfig& cfg) {
    const ipt::ProblemFamily fam = ipt::family_from_config(cfg);
    const double delta = cfg.get_double("recon.delta");
    const int d = static_cast<int>(cfg.get_int("recon.d", 1));
    const std::string mode = cfg.get_string("recon.mode", "adversarial");
    const auto seed = static_cast<std::uint64_t>(cfg.get_int("recon.seed", 1));

    const ipt::Spectrum spec = fam.spectrum_of_d(d);
    const ipt::CountResult ks = ipt::k_star(fam, delta, d);
    if (!ks.exact) throw ipt::capacity_error("k* too large for reconstruction runs");
    const long long k = std::max<long long>(ks.count, 1);
    const long long n_max = cfg.get_int("recon.n_max", std::max<long long>(4 * k, 64));

    std::ostringstream csv;
    csv << "n,error,bound,ratio\n";
    if (mode == "adversarial") {
        const long long n_hi = std::min<long long>(n_max - 1, 2 * k);
        for (long long n = 1; n <= n_hi; ++n) {
            const auto problem =
                ipt::adversarial_instance(spec, fam.smoothness, delta, n, n_max);
            const auto res = ipt::spectral_cutoff(problem, n);
            csv << res.n << ',' << fmt17(res.error) << ',' << fmt17(res.bound) << ','
                << fmt17(res.ratio) << '\n';
        }
        const auto chk = ipt::optimality_check(fam, delta, d);
        std::cout << "k_star=" << chk.k_star
                  << " error_at_kstar=" << fmt17(chk.error_at_kstar)
                  << " two_phi_bound=" << fmt17(chk.two_phi_bound)
                  << " rate_bound=" << fmt17(chk.rate_bound) << " seed=" << seed << "\n";
    } else if (mode == "random") {
        std::mt19937_64 rng(seed);
        const long long instances = cfg.get_int("recon.instances", 100);
        const long long n = cfg.get_int("recon.n", k);
        for (long long i = 0; i < instances; ++i) {
            const auto problem =
                ipt::random_problem(spec, fam.smoothness, delta, n_max, rng);
            const auto res = ipt::spectral_cutoff(problem, n);
            csv << res.n << ',' << fmt17(res.error) << ',' << fmt17(res.bound) << ','
                << fmt17(res.ratio) << '\n';
        }
        std::cout << "instances=" << instances << " n=" << n << " seed=" << seed << "\n";
    } else {
        throw ipt::config_error("unknown recon mode: " + mode);
    }
    emit(cfg, "output.csv", csv.str());
    return kExitOk;
}

int cmd_validate_svd(const ipt::RunConfig& cfg) {
    const int d = static_cast<int>(cfg.get_int("svd.d", 1));
    const int n_grid = static_cast<int>(cfg.get_int("svd.n_grid", 500));
    const long long j_max = cfg.get_int("svd.j_max", n_grid / 10);
    const auto rows = ipt::validate_asymptotics(d, n_grid, j_max);
    std::ostringstream csv;
    csv << "j,numeric,model,asymptotic,ratio_model,ratio_asymptotic\n";
    for (const auto& r : rows)
        csv << r.j << ',' << fmt17(r.numeric) << ',' << fmt17(r.model) << ','
            << fmt17(r.asymptotic) << ',' << fmt17(r.ratio_model) << ','
            << fmt17(r.ratio_asymptotic) << '\n';
    emit(cfg, "output.csv", csv.str());
    std::cout << "d=" << d << " n_grid=" << n_grid << " rows=" << rows.size() << "\n";
    return kExitOk;
}

int cmd_spectrum(const ipt::RunConfig& cfg) {
    const ipt::ProblemFamily fam = ipt::family_from_config(cfg);
    const int d = static_cast<int>(cfg.get_int("spectrum.d", 1));
    const long long count = cfg.get_int("spectrum.count", 20);
    const ipt::Spectrum spec = fam.spectrum_of_d(d);
    std::ostringstream csv;
    csv << "j,s_j\n";
    for (long long j = 1; j <= count; ++j)
        csv << j << ',' << fmt17(spec.value(j)) << '\n';
    emit(cfg, "output.csv", csv.str());
    std::cout << "spectrum=" << spec.describe() << " values=" << count << "\n";
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"tractability calculator for families of ill-posed operator equations"};
    app.require_subcommand(1);

    std::string config_path;
    std::vector<std::string> overrides;
    std::string subcommand;
    for (const auto& [name, desc] :
         {std::pair<const char*, const char*>{"kstar", "minimal discretization level at one (delta, d)"},
          {"sweep", "evaluate a (delta, d) grid and classify"},
          {"classify", "run the sweep and report the verdict only"},
          {"recon", "spectral cut-off reconstruction errors"},
          {"validate-svd", "numeric SVD check of the integration operator"},
          {"spectrum", "dump leading singular values"}}) {
        auto* sub = app.add_subcommand(name, desc);
        sub->add_option("config", config_path, "path to config file")->required();
        sub->add_option("--set", overrides, "override config entries (section.key=value)");
        sub->callback([&subcommand, name = std::string(name)] { subcommand = name; });
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitConfig;
    }

    try {
        const ipt::RunConfig cfg = ipt::RunConfig::parse_file(config_path, overrides);
        if (subcommand == "kstar") return cmd_kstar(cfg);
        if (subcommand == "sweep") return run_sweep(cfg, false);
        if (subcommand == "classify") return run_sweep(cfg, true);
        if (subcommand == "recon") return cmd_recon(cfg);
        if (subcommand == "validate-svd") return cmd_validate_svd(cfg);
        if (subcommand == "spectrum") return cmd_spectrum(cfg);
        return kExitConfig;
    } catch (const ipt::config_error& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const std::invalid_argument& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const ipt::capacity_error& e) {
        std::cerr << "capacity error: " << e.what() << "\n";
        return kExitCapacity;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
