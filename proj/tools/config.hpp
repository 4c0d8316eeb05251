// Run configuration for the command-line tool.
#ifndef DUNKL_TOOLS_CONFIG_HPP
#define DUNKL_TOOLS_CONFIG_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace dunkl::cli {

/// Bad flags, malformed numbers, contradictory values, unknown keys.
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct GridSpec {
    double min = -3.0;
    double max = 3.0;
    int count = 61;
};

struct OutputSpec {
    std::string format = "csv";  // csv | json
    std::string path;            // empty writes to standard output
    int precision = 17;
};

struct RunConfig {
    double k = 0.0;
    int N = 64;
    int quad_order = 0;  // 0 selects adaptive analysis; otherwise the Gauss rule order
    std::map<std::string, double> tolerances;
    GridSpec grid;
    std::uint64_t seed = 1;
    OutputSpec output;

    // Command parameters.
    int n = 0;
    double t = 0.5;
    double r = 0.5;
    std::string fn = "gaussian";
    std::string kernel = "heat";
    int sign = 1;
    double bump_center = 0.0;
    double bump_width = 1.0;
    std::vector<int> checks;

    double tolerance(const std::string& name) const { return tolerances.at(name); }
};

/// Tolerance names with their defaults.
const std::map<std::string, double>& default_tolerances();

/// Defaults, then the JSON file (if any), then flags. `file` falls back to
/// the DUNKL_CONFIG environment variable when absent; an explicit --config
/// flag in `args` wins over both.
RunConfig parse_config(const std::vector<std::string>& args, std::optional<std::string> file = std::nullopt);

/// One-line JSON echo of the configuration for artifact headers.
std::string config_echo(const RunConfig& cfg);

}  // namespace dunkl::cli

#endif
