#include "ipt/config.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

namespace ipt {

namespace {

const std::set<std::string>& known_keys() {
    static const std::set<std::string> keys = {
        // family
        "family.spectrum", "family.a", "family.c_kind", "family.c_bar", "family.c_q",
        "family.ratio", "family.values_csv", "family.zero_tail", "family.limit",
        "family.smoothness", "family.p", "family.nu", "family.q",
        "family.convention", "family.domain_max",
        // grid
        "grid.delta_start", "grid.delta_stop", "grid.delta_points", "grid.delta_list",
        "grid.d_list", "grid.cap", "grid.diagonal",
        // classify
        "classify.q_tol", "classify.min_shells",
        // kstar
        "kstar.delta", "kstar.d",
        // recon
        "recon.delta", "recon.d", "recon.n", "recon.n_max", "recon.instances",
        "recon.seed", "recon.mode",
        // svd
        "svd.d", "svd.n_grid", "svd.j_max",
        // spectrum dump
        "spectrum.d", "spectrum.count",
        // output
        "output.csv", "output.json",
    };
    return keys;
}

std::string trim(const std::string& s) {
    auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

}  // namespace

RunConfig RunConfig::parse(std::istream& in, const std::vector<std::string>& overrides) {
    RunConfig cfg;
    std::string line, section;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']')
                throw config_error("malformed section header at line " +
                                   std::to_string(lineno));
            section = trim(line.substr(1, line.size() - 2));
            continue;
        }
        auto eq = line.find('=');
        if (eq == std::string::npos)
            throw config_error("expected key=value at line " + std::to_string(lineno));
        const std::string key =
            (section.empty() ? "" : section + ".") + trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (!known_keys().count(key))
            throw config_error("unknown config key: " + key);
        cfg.kv_[key] = value;
    }
    for (const auto& ov : overrides) {
        auto eq = ov.find('=');
        if (eq == std::string::npos)
            throw config_error("override must be key=value: " + ov);
        const std::string key = trim(ov.substr(0, eq));
        if (!known_keys().count(key))
            throw config_error("unknown config key: " + key);
        cfg.kv_[key] = trim(ov.substr(eq + 1));
    }
    return cfg;
}

RunConfig RunConfig::parse_file(const std::string& path,
                                const std::vector<std::string>& overrides) {
    std::ifstream in(path);
    if (!in) throw config_error("cannot open config file: " + path);
    return parse(in, overrides);
}

bool RunConfig::has(const std::string& key) const { return kv_.count(key) > 0; }

std::string RunConfig::get_string(const std::string& key) const {
    auto it = kv_.find(key);
    if (it == kv_.end()) throw config_error("missing required config key: " + key);
    return it->second;
}

std::string RunConfig::get_string(const std::string& key,
                                  const std::string& fallback) const {
    auto it = kv_.find(key);
    return it == kv_.end() ? fallback : it->second;
}

double RunConfig::get_double(const std::string& key) const {
    const std::string v = get_string(key);
    try {
        std::size_t pos = 0;
        const double x = std::stod(v, &pos);
        if (pos != v.size()) throw config_error("");
        return x;
    } catch (...) {
        throw config_error("config key " + key + " is not a number: " + v);
    }
}

double RunConfig::get_double(const std::string& key, double fallback) const {
    return has(key) ? get_double(key) : fallback;
}

long long RunConfig::get_int(const std::string& key) const {
    const double x = get_double(key);
    const auto n = static_cast<long long>(std::llround(x));
    if (static_cast<double>(n) != x)
        throw config_error("config key " + key + " must be an integer");
    return n;
}

long long RunConfig::get_int(const std::string& key, long long fallback) const {
    return has(key) ? get_int(key) : fallback;
}

bool RunConfig::get_bool(const std::string& key, bool fallback) const {
    if (!has(key)) return fallback;
    const std::string v = get_string(key);
    if (v == "true" || v == "1" || v == "yes") return true;
    if (v == "false" || v == "0" || v == "no") return false;
    throw config_error("config key " + key + " is not a boolean: " + v);
}

std::vector<double> RunConfig::get_double_list(const std::string& key) const {
    std::vector<double> out;
    std::stringstream ss(get_string(key));
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        tok = trim(tok);
        if (tok.empty()) continue;
        out.push_back(std::stod(tok));
    }
    if (out.empty()) throw config_error("empty list for config key " + key);
    return out;
}

std::vector<int> RunConfig::get_int_list(const std::string& key) const {
    std::vector<int> out;
    for (double x : get_double_list(key)) out.push_back(static_cast<int>(x));
    return out;
}

std::string RunConfig::normalized() const {
    std::string out;
    for (const auto& [k, v] : kv_) out += k + " = " + v + "\n";
    return out;
}

IndexFunction smoothness_from_config(const RunConfig& cfg) {
    const std::string kind = cfg.get_string("family.smoothness", "power");
    const double domain_max = cfg.get_double("family.domain_max", 1e6);
    if (kind == "power") {
        double p = cfg.get_double("family.p");
        if (cfg.get_string("family.convention", "direct") == "sobolev")
            p = p / (2.0 * cfg.get_double("family.a"));
        return IndexFunction::power(p, domain_max);
    }
    if (kind == "log_power")
        return IndexFunction::log_power(cfg.get_double("family.nu"), domain_max);
    if (kind == "sublinear_benchmark")
        return IndexFunction::sublinear_benchmark(cfg.get_double("family.q"), domain_max);
    throw config_error("unknown smoothness kind: " + kind);
}

namespace {

std::vector<double> load_values_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw config_error("cannot open singular value csv: " + path);
    std::vector<double> vals;
    std::string line;
    while (std::getline(in, line)) {
        line = trim(line);
        if (line.empty() || line[0] == '#') continue;
        vals.push_back(std::stod(line));
    }
    if (vals.empty()) throw config_error("no singular values in " + path);
    return vals;
}

}  // namespace

ProblemFamily family_from_config(const RunConfig& cfg) {
    const std::string kind = cfg.get_string("family.spectrum");
    ProblemFamily fam;
    fam.name = kind;
    fam.smoothness = smoothness_from_config(cfg);
    fam.convention = cfg.get_string("family.convention", "direct");
    const long long limit = cfg.get_int("family.limit", 1000000);

    if (kind == "power_decay") {
        const double a = cfg.get_double("family.a");
        const std::string c_kind = cfg.get_string("family.c_kind", "constant");
        const double c_bar = cfg.get_double("family.c_bar", 1.0);
        LeadingConstant c = LeadingConstant::constant(c_bar);
        if (c_kind == "linear")
            c = LeadingConstant::linear(c_bar);
        else if (c_kind == "sublinear")
            c = LeadingConstant::sublinear_power(cfg.get_double("family.c_q"), c_bar);
        else if (c_kind != "constant")
            throw config_error("unknown leading constant kind: " + c_kind);
        fam.spectrum_of_d = [a, c](int d) { return Spectrum::power_decay(a, d, c); };
    } else if (kind == "log_decay") {
        fam.spectrum_of_d = [](int) { return Spectrum::log_decay(); };
    } else if (kind == "mixed_integration") {
        fam.spectrum_of_d = [limit](int d) {
            return Spectrum::mixed_integration(d, limit);
        };
    } else if (kind == "lower_bound_speed") {
        const double c_bar = cfg.get_double("family.c_bar", 1.0);
        fam.spectrum_of_d = [c_bar](int d) {
            return Spectrum::lower_bound_speed(c_bar, std::max(d, 2));
        };
    } else if (kind == "tensor_geometric") {
        const double ratio = cfg.get_double("family.ratio");
        if (ratio <= 0.0 || ratio >= 1.0)
            throw config_error("tensor_geometric ratio must lie in (0,1)");
        fam.spectrum_of_d = [ratio, limit](int d) {
            return Spectrum::tensor_product(
                UnivariateSeq([ratio](long long j) { return std::pow(ratio, j - 1); }),
                d, limit);
        };
    } else if (kind == "explicit") {
        auto vals = load_values_csv(cfg.get_string("family.values_csv"));
        const bool zero_tail = cfg.get_bool("family.zero_tail", false);
        fam.spectrum_of_d = [vals, zero_tail](int) {
            return Spectrum::explicit_values(vals, zero_tail);
        };
    } else {
        throw config_error("unknown spectrum kind: " + kind);
    }
    return fam;
}

std::vector<double> delta_grid_from_config(const RunConfig& cfg) {
    if (cfg.has("grid.delta_list")) return cfg.get_double_list("grid.delta_list");
    const double start = cfg.get_double("grid.delta_start");
    const double stop = cfg.get_double("grid.delta_stop");
    const long long points = cfg.get_int("grid.delta_points");
    if (start <= 0.0 || stop <= 0.0 || points < 1)
        throw config_error("delta grid needs positive endpoints and >= 1 point");
    std::vector<double> grid;
    if (points == 1) {
        grid.push_back(start);
        return grid;
    }
    const double l0 = std::log(start), l1 = std::log(stop);
    for (long long i = 0; i < points; ++i)
        grid.push_back(std::exp(l0 + (l1 - l0) * i / (points - 1)));
    grid.front() = start;  // exp/log round trips can slip an ulp at the endpoints
    grid.back() = stop;
    return grid;
}

std::vector<int> d_grid_from_config(const RunConfig& cfg) {
    auto ds = cfg.get_int_list("grid.d_list");
    for (int d : ds)
        if (d < 1) throw config_error("dimensions must be >= 1");
    return ds;
}

}  // namespace ipt
