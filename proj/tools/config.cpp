#include "config.hpp"

#include <charconv>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <set>

#include <CLI11.hpp>
#include <json.hpp>

#include "dunkl/io.hpp"

namespace dunkl::cli {

namespace {

using nlohmann::json;

const std::vector<std::string> kScalarFlags = {"k",   "N",      "quad-order", "grid-min",    "grid-max",
                                               "grid-count",    "seed",       "format",      "output",
                                               "precision",     "config",     "n",           "t",
                                               "r",   "fn",     "kernel",     "sign",        "bump-center",
                                               "bump-width",    "checks"};

double to_real(const std::string& flag, const std::string& s) {
    try {
        return parse_number(s);
    } catch (const std::invalid_argument&) {
        throw UsageError("malformed number '" + s + "' for " + flag);
    }
}

long long to_integer(const std::string& flag, const std::string& s) {
    const double v = to_real(flag, s);
    if (v != std::floor(v) || std::abs(v) > 9.0e15) throw UsageError(flag + " expects an integer, got '" + s + "'");
    return static_cast<long long>(v);
}

std::uint64_t to_seed(const std::string& flag, const std::string& s) {
    std::uint64_t v = 0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size() || s.empty())
        throw UsageError("malformed seed '" + s + "' for " + flag);
    return v;
}

std::vector<int> to_checks(const std::string& s) {
    std::vector<int> out;
    std::size_t pos = 0;
    while (pos <= s.size()) {
        const std::size_t next = std::min(s.find(',', pos), s.size());
        const std::string item = s.substr(pos, next - pos);
        if (!item.empty()) out.push_back(static_cast<int>(to_integer("--checks", item)));
        pos = next + 1;
    }
    return out;
}

void apply_value(RunConfig& c, const std::string& name, const std::string& v) {
    const std::string flag = "--" + name;
    if (name == "k") c.k = to_real(flag, v);
    else if (name == "N") c.N = static_cast<int>(to_integer(flag, v));
    else if (name == "quad-order") c.quad_order = static_cast<int>(to_integer(flag, v));
    else if (name == "grid-min") c.grid.min = to_real(flag, v);
    else if (name == "grid-max") c.grid.max = to_real(flag, v);
    else if (name == "grid-count") c.grid.count = static_cast<int>(to_integer(flag, v));
    else if (name == "seed") c.seed = to_seed(flag, v);
    else if (name == "format") c.output.format = v;
    else if (name == "output") c.output.path = v;
    else if (name == "precision") c.output.precision = static_cast<int>(to_integer(flag, v));
    else if (name == "n") c.n = static_cast<int>(to_integer(flag, v));
    else if (name == "t") c.t = to_real(flag, v);
    else if (name == "r") c.r = to_real(flag, v);
    else if (name == "fn") c.fn = v;
    else if (name == "kernel") c.kernel = v;
    else if (name == "sign") c.sign = static_cast<int>(to_integer(flag, v));
    else if (name == "bump-center") c.bump_center = to_real(flag, v);
    else if (name == "bump-width") c.bump_width = to_real(flag, v);
    else if (name == "checks") c.checks = to_checks(v);
}

double json_real(const json& j, const std::string& key) {
    if (!j.is_number()) throw UsageError("configuration key '" + key + "' must be a number");
    return j.get<double>();
}

long long json_integer(const json& j, const std::string& key) {
    const double v = json_real(j, key);
    if (v != std::floor(v)) throw UsageError("configuration key '" + key + "' must be an integer");
    return static_cast<long long>(v);
}

std::string json_text(const json& j, const std::string& key) {
    if (!j.is_string()) throw UsageError("configuration key '" + key + "' must be a string");
    return j.get<std::string>();
}

void require_object(const json& j, const std::string& key) {
    if (!j.is_object()) throw UsageError("configuration key '" + key + "' must be an object");
}

void apply_file(RunConfig& c, const std::string& path) {
    std::ifstream in(path);
    if (!in) throw UsageError("cannot open configuration file '" + path + "'");
    json j;
    try {
        j = json::parse(in);
    } catch (const json::parse_error& e) {
        throw UsageError("configuration file '" + path + "' is not valid JSON: " + e.what());
    }
    require_object(j, "<root>");
    for (const auto& [key, v] : j.items()) {
        if (key == "k") c.k = json_real(v, key);
        else if (key == "N") c.N = static_cast<int>(json_integer(v, key));
        else if (key == "quad_order") c.quad_order = static_cast<int>(json_integer(v, key));
        else if (key == "seed") {
            if (!v.is_number_unsigned()) throw UsageError("configuration key 'seed' must be a nonnegative integer");
            c.seed = v.get<std::uint64_t>();
        } else if (key == "tolerances") {
            require_object(v, key);
            for (const auto& [name, tv] : v.items()) {
                if (!default_tolerances().count(name)) throw UsageError("unknown tolerance '" + name + "'");
                c.tolerances[name] = json_real(tv, "tolerances." + name);
            }
        } else if (key == "grid") {
            require_object(v, key);
            for (const auto& [gk, gv] : v.items()) {
                if (gk == "min") c.grid.min = json_real(gv, "grid.min");
                else if (gk == "max") c.grid.max = json_real(gv, "grid.max");
                else if (gk == "count") c.grid.count = static_cast<int>(json_integer(gv, "grid.count"));
                else throw UsageError("unknown configuration key 'grid." + gk + "'");
            }
        } else if (key == "output") {
            require_object(v, key);
            for (const auto& [ok, ov] : v.items()) {
                if (ok == "format") c.output.format = json_text(ov, "output.format");
                else if (ok == "path") c.output.path = json_text(ov, "output.path");
                else if (ok == "precision") c.output.precision = static_cast<int>(json_integer(ov, "output.precision"));
                else throw UsageError("unknown configuration key 'output." + ok + "'");
            }
        } else if (key == "n") c.n = static_cast<int>(json_integer(v, key));
        else if (key == "t") c.t = json_real(v, key);
        else if (key == "r") c.r = json_real(v, key);
        else if (key == "fn") c.fn = json_text(v, key);
        else if (key == "kernel") c.kernel = json_text(v, key);
        else if (key == "sign") c.sign = static_cast<int>(json_integer(v, key));
        else if (key == "bump") {
            require_object(v, key);
            for (const auto& [bk, bv] : v.items()) {
                if (bk == "center") c.bump_center = json_real(bv, "bump.center");
                else if (bk == "width") c.bump_width = json_real(bv, "bump.width");
                else throw UsageError("unknown configuration key 'bump." + bk + "'");
            }
        } else if (key == "checks") {
            if (!v.is_array()) throw UsageError("configuration key 'checks' must be an array");
            c.checks.clear();
            for (const auto& e : v) c.checks.push_back(static_cast<int>(json_integer(e, "checks")));
        } else {
            throw UsageError("unknown configuration key '" + key + "'");
        }
    }
}

void validate(const RunConfig& c) {
    if (!(c.k >= 0.0)) throw UsageError("k must be nonnegative");
    if (c.N < 0) throw UsageError("N must be nonnegative");
    if (c.quad_order < 0) throw UsageError("quad_order must be nonnegative");
    if (c.grid.count < 2) throw UsageError("grid count must be at least 2");
    if (!(c.grid.min < c.grid.max)) throw UsageError("grid min must be below grid max");
    if (c.output.precision < 6 || c.output.precision > 17) throw UsageError("precision must lie in [6, 17]");
    if (c.output.format != "csv" && c.output.format != "json") throw UsageError("format must be csv or json");
    for (const auto& [name, v] : c.tolerances)
        if (!(v > 0.0)) throw UsageError("tolerance '" + name + "' must be positive");
    if (c.sign != 1 && c.sign != -1) throw UsageError("sign must be +1 or -1");
    if (c.n < 0) throw UsageError("n must be nonnegative");
    if (!(c.bump_width > 0.0)) throw UsageError("bump width must be positive");
}

}  // namespace

const std::map<std::string, double>& default_tolerances() {
    static const std::map<std::string, double> t = {
        {"analysis", 1e-13},      // relative tolerance of coefficient quadrature
        {"integration", 1e-12},   // relative tolerance of kernel-path quadrature
        {"kernel", 1e-12},        // relative tolerance of kernel parameter integrals
        {"disagreement", 1e-5},   // largest accepted spectral/kernel difference
    };
    return t;
}

RunConfig parse_config(const std::vector<std::string>& args, std::optional<std::string> file) {
    CLI::App app{"dunkl"};
    app.allow_extras(false);
    app.set_help_flag();
    std::map<std::string, std::vector<std::string>> raw;
    for (const auto& name : kScalarFlags)
        app.add_option("--" + name, raw[name])->expected(1)->multi_option_policy(CLI::MultiOptionPolicy::TakeAll);
    std::vector<std::string> tols;
    app.add_option("--tol", tols)->expected(1)->multi_option_policy(CLI::MultiOptionPolicy::TakeAll);
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        throw UsageError(e.what());
    }

    for (const auto& [name, values] : raw)
        for (const auto& v : values)
            if (v != values.front())
                throw UsageError("contradictory values for --" + name + ": '" + values.front() + "' and '" + v + "'");

    RunConfig cfg;
    cfg.tolerances = default_tolerances();
    if (!raw["config"].empty()) file = raw["config"].front();
    if (!file) {
        if (const char* env = std::getenv("DUNKL_CONFIG"); env && *env) file = env;
    }
    if (file) apply_file(cfg, *file);

    for (const auto& name : kScalarFlags)
        if (name != "config" && !raw[name].empty()) apply_value(cfg, name, raw[name].front());
    std::map<std::string, std::string> seen;
    for (const auto& item : tols) {
        const auto eq = item.find('=');
        if (eq == std::string::npos) throw UsageError("--tol expects name=value, got '" + item + "'");
        const std::string name = item.substr(0, eq), value = item.substr(eq + 1);
        if (!default_tolerances().count(name)) throw UsageError("unknown tolerance '" + name + "'");
        if (auto it = seen.find(name); it != seen.end() && it->second != value)
            throw UsageError("contradictory values for --tol " + name + ": '" + it->second + "' and '" + value + "'");
        seen[name] = value;
        cfg.tolerances[name] = to_real("--tol " + name, value);
    }
    validate(cfg);
    return cfg;
}

std::string config_echo(const RunConfig& c) {
    json j;
    j["k"] = c.k;
    j["N"] = c.N;
    j["quad_order"] = c.quad_order;
    j["tolerances"] = c.tolerances;
    j["grid"] = {{"min", c.grid.min}, {"max", c.grid.max}, {"count", c.grid.count}};
    j["seed"] = c.seed;
    j["output"] = {{"format", c.output.format}, {"path", c.output.path}, {"precision", c.output.precision}};
    j["n"] = c.n;
    j["t"] = c.t;
    j["r"] = c.r;
    j["fn"] = c.fn;
    j["kernel"] = c.kernel;
    j["sign"] = c.sign;
    j["bump"] = {{"center", c.bump_center}, {"width", c.bump_width}};
    j["checks"] = c.checks;
    return j.dump();
}

}  // namespace dunkl::cli
