// dunkl: command-line front end for the Dunkl-Hermite library.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "config.hpp"
#include "dunkl/core.hpp"
#include "dunkl/functions.hpp"
#include "dunkl/io.hpp"
#include "dunkl/kernels.hpp"
#include "dunkl/quadrature.hpp"
#include "dunkl/special_functions.hpp"
#include "dunkl/spectral.hpp"
#include "dunkl/transforms.hpp"
#include "dunkl/verification.hpp"

namespace fs = std::filesystem;
using namespace dunkl;
using dunkl::cli::RunConfig;
using dunkl::cli::UsageError;

namespace {

constexpr const char* kUsage = R"(usage: dunkl <command> [options]

commands:
  basis      h_n^k on the grid                       (--n)
  kernel     a kernel on the (x, y) grid             (--kernel mehler|heat|poisson|hilbert|R1|R2|Q|M|ks, --t, --r)
  heat       heat transform, spectral and kernel     (--fn, --t)
  poisson    Poisson transform                       (--fn, --t)
  hilbert    Hilbert transform, spectral and PV      (--fn, --sign)
  conjugate  conjugate Poisson integral              (--fn, --t, --sign)
  expand     expansion coefficients and tail energy  (--fn)
  verify     acceptance checks, JSON report and CSV  (--checks 1,2,...)
  bench      accuracy and time of kernel strategies

options:
  --k K  --N N  --quad-order Q  --seed S  --tol name=value
  --grid-min A  --grid-max B  --grid-count C
  --format csv|json  --output PATH  --precision P  --config FILE
  --fn gaussian|bump|h<N>|band<j>  --bump-center C  --bump-width W

Flags override the config file, which overrides defaults.  The config file
defaults to $DUNKL_CONFIG.  Exit status: 0 success, 1 failed check or
numerical error, 2 usage error.
)";

std::vector<double> grid_points(const RunConfig& c) {
    std::vector<double> g(c.grid.count);
    for (int i = 0; i < c.grid.count; ++i)
        g[i] = c.grid.min + (c.grid.max - c.grid.min) * i / (c.grid.count - 1);
    return g;
}

// Column-oriented table rendered as CSV (with a config header) or JSON.
struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;
    std::vector<std::string> notes;  // extra header lines

    std::string render(const std::string& command, const RunConfig& c) const {
        const int prec = c.output.precision;
        std::ostringstream out;
        if (c.output.format == "csv") {
            out << "# dunkl " << command << " config " << cli::config_echo(c) << "\n";
            for (const auto& n : notes) out << "# " << n << "\n";
            for (std::size_t i = 0; i < columns.size(); ++i) out << (i ? "," : "") << columns[i];
            out << "\n";
            for (const auto& r : rows) {
                for (std::size_t i = 0; i < r.size(); ++i) out << (i ? "," : "") << format_number(r[i], prec);
                out << "\n";
            }
        } else {
            out << "{\"command\": " << nlohmann::json(command).dump() << ", \"config\": " << cli::config_echo(c);
            out << ", \"notes\": " << nlohmann::json(notes).dump() << ", \"columns\": " << nlohmann::json(columns).dump()
                << ", \"rows\": [";
            for (std::size_t j = 0; j < rows.size(); ++j) {
                out << (j ? ", " : "") << "[";
                for (std::size_t i = 0; i < rows[j].size(); ++i) {
                    const double v = rows[j][i];
                    out << (i ? ", " : "")
                        << (std::isfinite(v) ? format_number(v, prec) : nlohmann::json(format_number(v)).dump());
                }
                out << "]";
            }
            out << "]}\n";
        }
        return out.str();
    }
};

// Writes through a temporary file so a failed run leaves nothing behind.
void emit(const std::string& text, const std::string& path) {
    if (path.empty()) {
        std::cout << text;
        return;
    }
    const fs::path target(path), tmp(path + ".partial");
    try {
        std::ofstream out(tmp, std::ios::binary);
        if (!out) throw std::runtime_error("cannot write '" + path + "'");
        out << text;
        out.close();
        if (!out) throw std::runtime_error("cannot write '" + path + "'");
        fs::rename(tmp, target);
    } catch (...) {
        std::error_code ec;
        fs::remove(tmp, ec);
        throw;
    }
}

Function input_function(const RunConfig& c, const DunklParameter& p) {
    try {
        return builtin_function(c.fn, p, c.seed, c.bump_center, c.bump_width);
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    }
}

TransformOptions transform_options(const RunConfig& c) {
    TransformOptions o;
    o.N = c.N;
    o.analysis.integration.rel_tol = c.tolerance("analysis");
    if (c.quad_order > 0) {
        o.analysis.scheme = MeasureScheme::gauss;
        o.analysis.gauss_order = c.quad_order;
    }
    o.integration.rel_tol = c.tolerance("integration");
    o.kernel.rel_tol = c.tolerance("kernel");
    o.disagreement_limit = c.tolerance("disagreement");
    return o;
}

void check_disagreement(const std::string& what, double x, double s, double k, double limit) {
    if (std::abs(s - k) > limit) {
        std::ostringstream m;
        m << what << ": spectral and kernel paths disagree by " << std::abs(s - k) << " at x = " << x << " (limit "
          << limit << ")";
        throw NumericalError(m.str());
    }
}

Table run_basis(const RunConfig& c) {
    const DunklParameter p(c.k);
    Table t{{"x", "h_" + std::to_string(c.n)}, {}, {}};
    for (double x : grid_points(c)) t.rows.push_back({x, dunkl_hermite_fn(p, c.n, x)});
    return t;
}

Table run_kernel(const RunConfig& c) {
    const DunklParameter p(c.k);
    KernelOptions ko;
    ko.rel_tol = c.tolerance("kernel");
    PoissonOptions po;
    po.rel_tol = c.tolerance("kernel");
    std::function<double(double, double)> K;
    const std::string& name = c.kernel;
    if (name == "mehler") K = [&](double x, double y) { return mehler_kernel(p, c.r, x, y); };
    else if (name == "heat") K = [&](double x, double y) { return heat_kernel(p, c.t, x, y); };
    else if (name == "poisson") K = [&](double x, double y) { return poisson_kernel(p, c.t, x, y, po); };
    else if (name == "hilbert") K = [&](double x, double y) { return hilbert_kernel(p, c.sign, x, y, ko); };
    else if (name == "R1") K = [&](double x, double y) { return hilbert_kernel_parts(p, x, y, ko).R1; };
    else if (name == "R2") K = [&](double x, double y) { return hilbert_kernel_parts(p, x, y, ko).R2; };
    else if (name == "Q") K = [&](double x, double y) { return conjugate_kernel_Q(p, c.t, x, y, ko); };
    else if (name == "M") K = [&](double x, double y) { return conjugate_kernel_M(p, c.t, x, y, ko); };
    else if (name == "ks") K = [&](double x, double y) { return k_s_kernel(p, c.r, x, y); };
    else throw UsageError("unknown kernel '" + name + "'");
    const bool singular = name == "hilbert" || name == "R1" || name == "R2";
    Table t{{"x", "y", name}, {}, {}};
    if (singular) t.notes.push_back("nan marks the diagonal exclusion and points where the kernel diverges");
    const auto g = grid_points(c);
    for (double x : g)
        for (double y : g) {
            double v;
            if (singular) {
                try {
                    v = std::abs(x - y) < kDiagonalExclusion ? std::nan("") : K(x, y);
                } catch (const NumericalError&) {
                    v = std::nan("");
                }
            } else {
                v = K(x, y);
            }
            t.rows.push_back({x, y, v});
        }
    return t;
}

enum class Transform { heat, poisson, hilbert, conjugate };

Table run_transform(const RunConfig& c, Transform which) {
    const DunklParameter p(c.k);
    const Function f = input_function(c, p);
    const TransformOptions o = transform_options(c);
    const Analysis a = analyze(f, p, o.N, o.analysis);
    SpectralCoefficients m = a.coeffs;
    std::string label;
    switch (which) {
        case Transform::heat: m = heat_multiplier(a.coeffs, c.t); label = "heat"; break;
        case Transform::poisson: m = poisson_multiplier(a.coeffs, c.t); label = "poisson"; break;
        case Transform::hilbert: m = c.sign > 0 ? hilbert_plus(a.coeffs) : hilbert_minus(a.coeffs); label = "hilbert"; break;
        case Transform::conjugate: m = conjugate_multiplier(a.coeffs, c.t, c.sign); label = "conjugate"; break;
    }
    Table t{{"x", "spectral", which == Transform::hilbert ? "pv" : "kernel", "disagreement"}, {}, {}};
    t.notes.push_back("tail_energy " + format_number(a.tail_energy, c.output.precision));
    for (double x : grid_points(c)) {
        const double s = synthesize(m, x);
        double k = 0.0;
        switch (which) {
            case Transform::heat: k = heat_apply(f, p, c.t, x, EvalPath::kernel, o); break;
            case Transform::poisson: k = poisson_apply(f, p, c.t, x, EvalPath::kernel, o); break;
            case Transform::hilbert: {
                const auto pr = hilbert_pv_pair(f, p, x, o);
                k = c.sign > 0 ? pr.first.value : pr.second.value;
                break;
            }
            case Transform::conjugate: k = conjugate_apply(f, p, c.t, c.sign, x, EvalPath::kernel, o); break;
        }
        check_disagreement(label, x, s, k, o.disagreement_limit);
        t.rows.push_back({x, s, k, std::abs(s - k)});
    }
    return t;
}

std::string run_expand(const RunConfig& c) {
    const DunklParameter p(c.k);
    const Function f = input_function(c, p);
    const Analysis a = analyze(f, p, c.N, transform_options(c).analysis);
    if (c.output.format == "json") {
        std::ostringstream out;
        out << "{\"command\": \"expand\", \"config\": " << cli::config_echo(c) << ", \"coefficients\": "
            << coefficients_json(a.coeffs, c.output.precision) << ", \"tail_energy\": "
            << format_number(a.tail_energy, c.output.precision) << ", \"error\": "
            << format_number(a.error, c.output.precision) << "}\n";
        return out.str();
    }
    std::ostringstream head;
    head << "dunkl expand config " << cli::config_echo(c) << "\n# tail_energy "
         << format_number(a.tail_energy, c.output.precision);
    return coefficients_csv(a.coeffs, head.str(), c.output.precision);
}

int run_verify(const RunConfig& c) {
    VerificationConfig vc;
    vc.k = c.k;
    vc.N = c.N;
    vc.seed = c.seed;
    for (int id : c.checks)
        if (id < 1 || id > static_cast<int>(acceptance_criteria().size()))
            throw UsageError("no acceptance check " + std::to_string(id));
    VerificationReport report;
    run_acceptance(vc, report, c.checks, &std::cerr);
    const std::string base = c.output.path.empty() ? "verification" : c.output.path;
    const fs::path json_path = fs::path(base).extension() == ".json" ? fs::path(base) : fs::path(base + ".json");
    fs::path csv_path = json_path;
    csv_path.replace_extension(".csv");
    emit(report.to_json(c.output.precision), json_path.string());
    try {
        emit(report.to_csv(c.output.precision, "# dunkl verify config " + cli::config_echo(c) + "\n"),
             csv_path.string());
    } catch (...) {
        std::error_code ec;
        fs::remove(json_path, ec);
        throw;
    }
    std::cout << (report.all_passed() ? "all checks passed" : "some checks failed") << "; report in "
              << json_path.string() << " and " << csv_path.string() << "\n";
    return report.all_passed() ? 0 : 1;
}

template <class F>
double time_us(F&& f, int reps) {
    const auto a = std::chrono::steady_clock::now();
    for (int i = 0; i < reps; ++i) f();
    return std::chrono::duration<double, std::micro>(std::chrono::steady_clock::now() - a).count() / reps;
}

Table run_bench(const RunConfig& c) {
    const DunklParameter p(c.k);
    Table t{{"strategy", "parameter", "terms", "error", "time_us"}, {}, {}};
    t.notes.push_back("strategy 0: Mehler series truncated after `terms`, error vs closed form, parameter r");
    t.notes.push_back("strategy 1: Mehler closed form, parameter r");
    t.notes.push_back("strategy 2: Poisson radius form, parameter t; error is the difference to strategy 3");
    t.notes.push_back("strategy 3: Poisson semigroup form, parameter t");
    t.notes.push_back("strategy 4: principal value with `terms` cut-offs at x = 0.8, error vs spectral, Gaussian input");
    t.notes.push_back("time_us is wall-clock and varies between runs");
    const double y = 0.7, z = -1.1;
    for (double r : {0.5, 0.9}) {
        const double exact = mehler_kernel(p, r, y, z);
        t.rows.push_back({1, r, 0, 0.0, time_us([&] { (void)mehler_kernel(p, r, y, z); }, 2000)});
        for (int N : {20, 40, 80, 120, 240}) {
            double v = 0.0;
            const double us = time_us([&] { v = mehler_series(p, r, y, z, N); }, 200);
            t.rows.push_back({0, r, static_cast<double>(N), std::abs(v - exact), us});
        }
    }
    for (double tt : {0.1, 0.5, 2.0}) {
        PoissonOptions a, b;
        b.path = PoissonPath::semigroup;
        double va = 0.0, vb = 0.0;
        const double ua = time_us([&] { va = poisson_kernel(p, tt, y, z, a); }, 20);
        const double ub = time_us([&] { vb = poisson_kernel(p, tt, y, z, b); }, 20);
        t.rows.push_back({2, tt, 0, std::abs(va - vb), ua});
        t.rows.push_back({3, tt, 0, std::abs(va - vb), ub});
    }
    const Function g = gaussian_function();
    const double x = 0.8;
    TransformOptions o = transform_options(c);
    const double exact = synthesize(hilbert_plus(analyze(g, p, o.N, o.analysis).coeffs), x);
    for (int levels : {4, 7, 10}) {
        o.pv.eps_schedule.clear();
        for (int j = 0; j < levels; ++j) o.pv.eps_schedule.push_back(0.2 * std::ldexp(1.0, -j));
        double v = 0.0;
        const double us = time_us([&] { v = hilbert_pv_pair(g, p, x, o).first.value; }, 1);
        t.rows.push_back({4, x, static_cast<double>(levels), std::abs(v - exact), us});
    }
    return t;
}

int dispatch(const std::string& command, const RunConfig& c) {
    if (command == "verify") return run_verify(c);
    std::string text;
    if (command == "basis") text = run_basis(c).render(command, c);
    else if (command == "kernel") text = run_kernel(c).render(command, c);
    else if (command == "heat") text = run_transform(c, Transform::heat).render(command, c);
    else if (command == "poisson") text = run_transform(c, Transform::poisson).render(command, c);
    else if (command == "hilbert") text = run_transform(c, Transform::hilbert).render(command, c);
    else if (command == "conjugate") text = run_transform(c, Transform::conjugate).render(command, c);
    else if (command == "expand") text = run_expand(c);
    else if (command == "bench") text = run_bench(c).render(command, c);
    else throw UsageError("unknown command '" + command + "'");
    emit(text, c.output.path);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    if (args.empty() || args[0] == "-h" || args[0] == "--help" || args[0] == "help") {
        std::cout << kUsage;
        return args.empty() ? 2 : 0;
    }
    const std::string command = args[0];
    args.erase(args.begin());
    try {
        const RunConfig cfg = cli::parse_config(args);
        return dispatch(command, cfg);
    } catch (const UsageError& e) {
        std::cerr << "dunkl " << command << ": " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "dunkl " << command << ": " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "dunkl " << command << ": " << e.what() << "\n";
        return 1;
    }
}
