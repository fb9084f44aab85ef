#pragma once

#include <iosfwd>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "ipt/tract.hpp"

namespace ipt {

struct config_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Parsed key=value config with [section] headers, normalized to
/// "section.key" entries. Unknown keys are rejected at parse time.
class RunConfig {
public:
    static RunConfig parse(std::istream& in,
                           const std::vector<std::string>& overrides = {});
    static RunConfig parse_file(const std::string& path,
                                const std::vector<std::string>& overrides = {});

    bool has(const std::string& key) const;
    std::string get_string(const std::string& key) const;
    std::string get_string(const std::string& key, const std::string& fallback) const;
    double get_double(const std::string& key) const;
    double get_double(const std::string& key, double fallback) const;
    long long get_int(const std::string& key) const;
    long long get_int(const std::string& key, long long fallback) const;
    bool get_bool(const std::string& key, bool fallback) const;
    std::vector<double> get_double_list(const std::string& key) const;
    std::vector<int> get_int_list(const std::string& key) const;

    /// Normalized "section.key = value" lines, sorted; parsing this text again
    /// yields an identical config.
    std::string normalized() const;

private:
    std::map<std::string, std::string> kv_;
};

/// Build the problem family described by the [family] section.
ProblemFamily family_from_config(const RunConfig& cfg);

/// The smoothness function alone (shared by recon configs).
IndexFunction smoothness_from_config(const RunConfig& cfg);

/// Log-spaced delta grid from delta_start/delta_stop/delta_points, or the
/// explicit delta_list.
std::vector<double> delta_grid_from_config(const RunConfig& cfg);
std::vector<int> d_grid_from_config(const RunConfig& cfg);

}  // namespace ipt
