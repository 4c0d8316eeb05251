#include "dunkl/verification.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <iomanip>
#include <limits>
#include <numbers>
#include <random>
#include <sstream>

#include <json.hpp>

#include "dunkl/functions.hpp"
#include "dunkl/io.hpp"
#include "dunkl/kernels.hpp"
#include "dunkl/quadrature.hpp"
#include "dunkl/special_functions.hpp"
#include "dunkl/spectral.hpp"
#include "dunkl/transforms.hpp"

namespace dunkl {

void VerificationReport::append(CheckRecord r) {
    std::lock_guard lock(mutex_);
    records_.push_back(std::move(r));
}

std::vector<CheckRecord> VerificationReport::records() const {
    std::lock_guard lock(mutex_);
    return records_;
}

bool VerificationReport::all_passed() const {
    std::lock_guard lock(mutex_);
    return std::all_of(records_.begin(), records_.end(), [](const CheckRecord& r) { return r.passed; });
}

std::size_t VerificationReport::size() const {
    std::lock_guard lock(mutex_);
    return records_.size();
}

namespace {

std::string json_number(double v, int precision) {
    if (std::isfinite(v)) return format_number(v, precision);
    return nlohmann::json(format_number(v, precision)).dump();
}

std::string json_string(const std::string& s) { return nlohmann::json(s).dump(); }

}  // namespace

std::string VerificationReport::to_json(int precision) const {
    const auto recs = records();
    std::ostringstream out;
    out << "{\n  \"all_passed\": " << (all_passed() ? "true" : "false") << ",\n  \"checks\": [";
    for (std::size_t i = 0; i < recs.size(); ++i) {
        const auto& r = recs[i];
        out << (i ? ",\n" : "\n") << "    {\"name\": " << json_string(r.name) << ", \"anchor\": " << json_string(r.anchor)
            << ", \"residual\": " << json_number(r.residual, precision)
            << ", \"tolerance\": " << json_number(r.tolerance, precision)
            << ", \"passed\": " << (r.passed ? "true" : "false")
            << ", \"runtime_ms\": " << json_number(std::round(r.runtime_ms * 1000.0) / 1000.0, precision)
            << ", \"detail\": " << json_string(r.detail) << "}";
    }
    out << "\n  ]\n}\n";
    return out.str();
}

std::string VerificationReport::to_csv(int precision, const std::string& header_comment) const {
    std::ostringstream out;
    if (!header_comment.empty()) out << header_comment;
    out << "check,residual,tolerance,passed\n";
    for (const auto& r : records())
        out << r.name << ',' << format_number(r.residual, precision) << ',' << format_number(r.tolerance, precision)
            << ',' << (r.passed ? "true" : "false") << '\n';
    return out.str();
}

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

class Uniform {
public:
    explicit Uniform(std::uint64_t seed) : gen_(seed) {}
    double operator()(double lo, double hi) {
        return lo + (hi - lo) * static_cast<double>(gen_() >> 11) * 0x1.0p-53;
    }

private:
    std::mt19937_64 gen_;
};

std::string sci(double v) {
    std::ostringstream s;
    s << std::setprecision(3) << std::scientific << v;
    return s.str();
}

// Several sub-checks with their own tolerances collapse to the worst ratio
// residual/tolerance against a tolerance of 1.
struct Compound {
    double worst = 0.0;
    std::ostringstream detail;
    void add(const std::string& what, double residual, double tol) {
        worst = std::max(worst, std::isnan(residual) ? kInf : residual / tol);
        detail << (detail.tellp() > 0 ? "; " : "") << what << " " << sci(residual) << " (tol " << sci(tol) << ")";
    }
};

CheckRecord make(std::string name, std::string anchor, double residual, double tol, std::string detail) {
    CheckRecord r;
    r.name = std::move(name);
    r.anchor = std::move(anchor);
    r.residual = residual;
    r.tolerance = tol;
    r.passed = residual <= tol;
    r.detail = std::move(detail);
    return r;
}

CheckRecord orthonormality(const VerificationConfig&) {
    const int N = 20;
    double worst = 0.0;
    std::ostringstream d;
    for (double k : {0.0, 0.25, 0.5, 1.0, 2.5}) {
        const DunklParameter p(k);
        const double Y = truncation_radius(p, N);
        std::vector<double> pts;
        for (double x = -Y; x < Y; x += 0.5) pts.push_back(x);
        pts.push_back(Y);
        const std::size_t dim = (N + 1) * (N + 2) / 2;
        std::vector<double> h(N + 1);
        IntegrationOptions o;
        o.rel_tol = 1e-13;
        const auto G = integrate_vector(
            [&](double x, std::span<double> out) {
                dunkl_hermite_fn_all(p, x, h);
                const double w = k == 0.0 ? 1.0 : std::pow(std::abs(x), 2.0 * k);
                std::size_t idx = 0;
                for (int m = 0; m <= N; ++m)
                    for (int n = m; n <= N; ++n) out[idx++] = h[m] * h[n] * w;
            },
            dim, pts, o);
        double e = 0.0;
        std::size_t idx = 0;
        for (int m = 0; m <= N; ++m)
            for (int n = m; n <= N; ++n) e = std::max(e, std::abs(G.value[idx++] - (m == n ? 1.0 : 0.0)));
        worst = std::max(worst, e);
        d << (k == 0.0 ? "" : "; ") << "k=" << k << " max|G-I| " << sci(e);
    }
    return make("orthonormality", "Gram matrix of h_0..h_20 in L2(|x|^{2k}dx) is the identity", worst, 1e-10, d.str());
}

CheckRecord mehler(const VerificationConfig&) {
    double worst = 0.0;
    std::ostringstream d;
    for (double k : {0.0, 0.5, 1.5}) {
        const DunklParameter p(k);
        for (double r : {0.1, 0.5, 0.9}) {
            double e = 0.0;
            for (int i = 0; i <= 12; ++i)
                for (int j = 0; j <= 12; ++j) {
                    const double y = -3.0 + 0.5 * i, z = -3.0 + 0.5 * j;
                    e = std::max(e, std::abs(mehler_kernel(p, r, y, z) - mehler_series(p, r, y, z, 120)));
                }
            worst = std::max(worst, e);
            d << (d.tellp() > 0 ? "; " : "") << "k=" << k << " r=" << r << " " << sci(e);
        }
    }
    return make("mehler_formula", "closed-form Mehler kernel equals its 120-term series on [-3,3]^2", worst, 1e-8,
                d.str());
}

CheckRecord mass_identities(const VerificationConfig& cfg) {
    Uniform u(cfg.seed);
    IntegrationOptions o;
    o.rel_tol = 1e-13;
    double em = 0.0, eh = 0.0;
    for (int i = 0; i < 50; ++i) {
        const DunklParameter p(u(0.0, 2.0));
        const double r = u(0.05, 0.95), y = u(-3.0, 3.0);
        const double c = 2.0 * r * std::abs(y) / (1.0 + r * r);
        const double w = std::sqrt((1.0 - r * r) / (1.0 + r * r));
        const double Y = 14.0;
        std::vector<double> pts{-Y, 0.0, Y};
        for (double s : {-1.0, 1.0})
            for (double m : {0.0, 1.0, 3.0, 6.0}) {
                pts.push_back(s * (c + m * w));
                pts.push_back(s * (c - m * w));
            }
        std::sort(pts.begin(), pts.end());
        pts.erase(std::remove_if(pts.begin(), pts.end(), [&](double v) { return v < -Y || v > Y; }), pts.end());
        pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
        const double lhs = integrate(
                               [&](double z) {
                                   return mehler_kernel(p, r, y, z) * std::pow(std::abs(z), 2.0 * p.k());
                               },
                               pts, o)
                               .value;
        const double rhs = std::pow(2.0 / (1.0 + r * r), p.k() + 0.5) *
                           std::exp(-0.5 * (1.0 - r * r) / (1.0 + r * r) * y * y);
        em = std::max(em, std::abs(lhs / rhs - 1.0));
    }
    for (int i = 0; i < 50; ++i) {
        const DunklParameter p(u(0.0, 2.0));
        const double t = u(0.05, 3.0), x = u(-3.0, 3.0);
        const double c = std::abs(x) / std::cosh(2.0 * t);
        const double w = std::sqrt(std::tanh(2.0 * t));
        const double Y = 14.0;
        std::vector<double> pts{-Y, 0.0, Y};
        for (double s : {-1.0, 1.0})
            for (double m : {0.0, 1.0, 3.0, 6.0}) {
                pts.push_back(s * (c + m * w));
                pts.push_back(s * (c - m * w));
            }
        std::sort(pts.begin(), pts.end());
        pts.erase(std::remove_if(pts.begin(), pts.end(), [&](double v) { return v < -Y || v > Y; }), pts.end());
        pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
        const double lhs =
            integrate([&](double y) { return heat_kernel(p, t, x, y) * std::pow(std::abs(y), 2.0 * p.k()); }, pts, o)
                .value;
        const double rhs =
            std::pow(std::cosh(2.0 * t), -(p.k() + 0.5)) * std::exp(-0.5 * std::tanh(2.0 * t) * x * x);
        eh = std::max(eh, std::abs(lhs / rhs - 1.0));
    }
    return make("mass_identities",
                "integrals of the Mehler and heat kernels against |y|^{2k}dy match their closed forms",
                std::max(em, eh), 1e-10, "Mehler mass " + sci(em) + "; heat mass " + sci(eh) + " (50 points each)");
}

CheckRecord subordination(const VerificationConfig&) {
    double worst = 0.0;
    std::ostringstream d;
    for (double beta : {0.5, 1.0, 2.0, 5.0}) {
        HalflineOptions o;
        o.integration.rel_tol = 1e-13;
        const auto r = halfline_integrate(
            [&](double s) { return std::exp(-s - beta * beta / (4.0 * s)) * std::pow(s, -1.5); }, o);
        const double v = beta / std::sqrt(4.0 * std::numbers::pi) * r.value;
        const double e = std::abs(v / std::exp(-beta) - 1.0);
        worst = std::max(worst, e);
        d << (d.tellp() > 0 ? "; " : "") << "beta=" << beta << " " << sci(e);
    }
    return make("subordination", "Gaussian subordination integral reproduces exp(-beta)", worst, 1e-10, d.str());
}

CheckRecord poisson_dual_path(const VerificationConfig& cfg) {
    Uniform u(cfg.seed + 1);
    double worst = 0.0;
    for (int i = 0; i < 20; ++i) {
        const DunklParameter p(u(0.0, 2.0));
        const double t = u(0.1, 2.0), x = u(-3.0, 3.0), y = u(-3.0, 3.0);
        PoissonOptions a, b;
        a.path = PoissonPath::radius;
        b.path = PoissonPath::semigroup;
        worst = std::max(worst, std::abs(poisson_kernel(p, t, x, y, a) - poisson_kernel(p, t, x, y, b)));
    }
    return make("poisson_dual_path", "radius-form and subordinated heat-kernel Poisson kernels agree", worst, 1e-9,
                "max |difference| over 20 random (k,t,x,y)");
}

CheckRecord semigroup_bounds(const VerificationConfig& cfg) {
    double worst = 0.0;
    int tested = 0;
    for (double k : {0.0, 0.5, 1.5}) {
        const DunklParameter p(k);
        for (const auto& c : bandlimited_family(p, cfg.seed, cfg.family_size)) {
            const Function f = as_function(c);
            for (double e : {1.0, 2.0, 3.0, 4.0}) {
                const double nf = lp_norm(f, p, e);
                for (double t : {0.1, 0.5, 2.0}) {
                    const double g = lp_norm(as_function(heat_multiplier(c, t)), p, e);
                    const double F = lp_norm(as_function(poisson_multiplier(c, t)), p, e);
                    const double gb = std::pow(std::cosh(2.0 * t), -(k + 0.5)) * nf;
                    const double fb = std::pow(2.0, k + 0.5) * std::exp(-t * std::sqrt(2.0 * k + 1.0)) * nf;
                    worst = std::max({worst, g - gb, F - fb});
                    tested += 2;
                }
            }
        }
    }
    return make("semigroup_norm_bounds", "heat and Poisson L^p bounds hold on the band-limited family",
                std::max(0.0, worst), 1e-9,
                std::to_string(tested) + " inequalities; largest excess " + sci(worst));
}

constexpr double kHilbertPoints[] = {-2.5, -1.7, -1.1, -0.6, -0.2, 0.3, 0.7, 1.2, 1.9, 2.6};

CheckRecord hilbert_equivalence(const VerificationConfig& cfg) {
    const DunklParameter p(cfg.k);
    TransformOptions o;
    o.N = cfg.N;
    Compound c;
    double pv = 0.0;
    for (const Function& f : schwartz_family(p)) {
        const auto a = analyze(f, p, o.N, o.analysis).coeffs;
        const auto hp = hilbert_plus(a), hm = hilbert_minus(a);
        for (double x : kHilbertPoints) {
            const auto pair = hilbert_pv_pair(f, p, x, o);
            pv = std::max({pv, std::abs(pair.first.value - synthesize(hp, x)),
                           std::abs(pair.second.value - synthesize(hm, x))});
        }
    }
    c.add("spectral vs PV", pv, 1e-4);
    double coef = 0.0;
    const double k = p.k();
    for (int n = 0; n <= 40; ++n) {
        const auto u = SpectralCoefficients::unit(p, n, n + 1);
        const auto hp = hilbert_plus(u), hm = hilbert_minus(u);
        auto th = [&](int m) { return m % 2 == 0 ? std::sqrt(2.0 * m) : std::sqrt(2.0 * m + 4.0 * k); };
        const double lam = std::sqrt(2.0 * n + 2.0 * k + 1.0);
        for (int m = 0; m < static_cast<int>(hp.a.size()); ++m)
            coef = std::max(coef, std::abs(hp.a[m] - (n >= 1 && m == n - 1 ? th(n) / lam : 0.0)));
        for (int m = 0; m < static_cast<int>(hm.a.size()); ++m)
            coef = std::max(coef, std::abs(hm.a[m] - (m == n + 1 ? -th(n + 1) / lam : 0.0)));
    }
    c.add("coefficient weights", coef, 1e-15);
    return make("hilbert_equivalence",
                "spectral and principal-value Hilbert transforms agree; shift weights theta/sqrt(2n+2k+1)", c.worst,
                1.0, c.detail.str() + "; k=" + format_number(k));
}

struct CzSummary {
    double size1 = 0.0, size2 = 0.0, smooth_x = 0.0, smooth_y = 0.0;
};

struct CzGrid {
    CzSummary full;        // divergent points count as infinite
    CzSummary off_anti;    // divergent points skipped
    int divergent = 0;
};

CzGrid cz_grid(const DunklParameter& p, double h) {
    const int n = static_cast<int>(std::lround(3.0 / h));
    const int M = 2 * n + 1;
    auto coord = [&](int i) { return (i - n) * h; };
    std::vector<double> R1(M * M, std::nan("")), R2(M * M, std::nan(""));
    std::vector<char> bad(M * M, 0);
    CzGrid g;
    KernelOptions ko;
    ko.rel_tol = 1e-10;
    for (int i = 0; i < M; ++i)
        for (int j = 0; j < M; ++j) {
            const double d = std::abs(coord(i) - coord(j));
            if (d < 0.5 * h || d > 4.0 + 1.5 * h) continue;
            try {
                const auto parts = hilbert_kernel_parts(p, coord(i), coord(j), ko);
                R1[i * M + j] = parts.R1;
                R2[i * M + j] = parts.R2;
            } catch (const NumericalError&) {
                bad[i * M + j] = 1;
                ++g.divergent;
            }
        }
    auto in_size = [](double d) { return d >= 0.05 - 1e-12 && d <= 4.0 + 1e-12; };
    auto bump = [](double& acc, double v) { acc = std::isnan(v) ? acc : std::max(acc, v); };
    for (bool skip : {false, true}) {
        CzSummary& s = skip ? g.off_anti : g.full;
        auto value = [&](const std::vector<double>& R, int idx) { return bad[idx] ? (skip ? std::nan("") : kInf) : R[idx]; };
        for (int i = 0; i < M; ++i)
            for (int j = 0; j < M; ++j) {
                const double d = std::abs(coord(i) - coord(j));
                if (!in_size(d)) continue;
                const int idx = i * M + j;
                bump(s.size1, d * std::abs(value(R1, idx)));
                bump(s.size2, d * std::abs(value(R2, idx)));
                if (d < 2.0 * h - 1e-12) continue;
                for (const auto* R : {&R1, &R2}) {
                    const double a = value(*R, idx);
                    if (i + 1 < M) {
                        const double b = value(*R, idx + M);
                        bump(s.smooth_x, std::isinf(a) || std::isinf(b) ? kInf : std::abs(a - b) * d * d / h);
                    }
                    if (j + 1 < M) {
                        const double b = value(*R, idx + 1);
                        bump(s.smooth_y, std::isinf(a) || std::isinf(b) ? kInf : std::abs(a - b) * d * d / h);
                    }
                }
            }
    }
    return g;
}

double cz_change(const CzSummary& a, const CzSummary& b) {
    auto change = [](double c, double f) {
        if (!std::isfinite(c) || !std::isfinite(f)) return kInf;
        return std::abs(f - c) / std::abs(c);
    };
    return std::max({change(a.size1, b.size1), change(a.size2, b.size2), change(a.smooth_x, b.smooth_x),
                     change(a.smooth_y, b.smooth_y)});
}

std::string cz_text(const CzSummary& a, const CzSummary& b) {
    return "|x-y||R1| " + sci(a.size1) + "->" + sci(b.size1) + ", |x-y||R2| " + sci(a.size2) + "->" + sci(b.size2) +
           ", x-smoothness " + sci(a.smooth_x) + "->" + sci(b.smooth_x) + ", y-smoothness " + sci(a.smooth_y) + "->" +
           sci(b.smooth_y);
}

CheckRecord cz_bounds(const VerificationConfig&) {
    double worst = 0.0;
    std::ostringstream d;
    for (double k : {0.0, 0.5, 1.5}) {
        const DunklParameter p(k);
        const CzGrid a = cz_grid(p, 0.1), b = cz_grid(p, 0.05);
        worst = std::max(worst, cz_change(a.full, b.full));
        d << (k == 0.0 ? "" : "; ") << "k=" << k << ": " << cz_text(a.full, b.full);
        if (a.divergent + b.divergent > 0)
            d << " [R1 diverges at the " << a.divergent + b.divergent << " grid points on y=-x; without them: "
              << cz_text(a.off_anti, b.off_anti) << ", change " << sci(cz_change(a.off_anti, b.off_anti)) << "]";
    }
    return make("cz_kernel_bounds",
                "size and smoothness constants of R1, R2 are finite and stable under grid refinement", worst, 0.05,
                d.str());
}

CheckRecord duality(const VerificationConfig&) {
    const Function f = bump_function(-2.0, 0.5), g = bump_function(2.0, 0.5);
    double worst = 0.0;
    std::ostringstream d;
    for (double k : {0.0, 0.5, 1.5}) {
        const auto r = duality_check(f, g, DunklParameter(k));
        worst = std::max({worst, r.first.residual, r.second.residual});
        d << (k == 0.0 ? "" : "; ") << "k=" << k << " +: " << sci(r.first.residual) << " -: " << sci(r.second.residual)
          << " (N=" << r.first.degree << ")";
    }
    return make("duality_identity", "<H f, g> equals the double integral of the Hilbert kernel for disjoint bumps",
                worst, 1e-6, d.str());
}

CheckRecord pde_residuals(const VerificationConfig& cfg) {
    const double ts[] = {0.1, 0.5, 1.0};
    const double xs[] = {-2.0, -1.2, -0.5, 0.0, 0.3, 0.8, 1.7};
    double heat = 0.0, poisson = 0.0, r36 = 0.0, r37 = 0.0;
    for (double k : {0.0, 0.5, 1.5}) {
        const DunklParameter p(k);
        auto family = bandlimited_family(p, cfg.seed, 3);
        family.push_back(SpectralCoefficients::unit(p, 1, 2));
        family.push_back(SpectralCoefficients::unit(p, 2, 3));
        for (const auto& c : family)
            for (double t : ts)
                for (double x : xs) {
                    heat = std::max(heat, heat_pde_residual(c, t, x));
                    poisson = std::max(poisson, poisson_pde_residual(c, t, x));
                    for (int sign : {1, -1}) {
                        const auto s = conjugate_system_residual(c, t, x, sign);
                        r36 = std::max(r36, s.r36);
                        r37 = std::max(r37, s.r37);
                    }
                }
    }
    Compound c;
    c.add("heat", heat, 1e-4);
    c.add("poisson", poisson, 1e-4);
    c.add("conjugate second-order", r36, 1e-4);
    c.add("Cauchy-Riemann", r37, 1e-4);
    return make("pde_residuals", "heat, Poisson and conjugate-system differential-difference equations",
                std::max({heat, poisson, r36, r37}), 1e-4, c.detail.str());
}

CheckRecord conjugate_eigen_actions(const VerificationConfig& cfg) {
    const DunklParameter p(cfg.k);
    TransformOptions o;
    const double t = 0.5;
    double worst = 0.0;
    std::ostringstream d;
    for (int sign : {1, -1}) {
        double e = 0.0;
        for (int n = 0; n <= 8; ++n) {
            const Function h = basis_function(p, n);
            const double lam = std::sqrt(p.lambda(n));
            const double damp = std::exp(-t * lam) / lam;
            for (double x : {-1.3, 0.4, 1.7}) {
                const double got = conjugate_apply(h, p, t, sign, x, EvalPath::kernel, o);
                const double want = sign > 0 ? (n == 0 ? 0.0 : damp * theta(n, p) * dunkl_hermite_fn(p, n - 1, x))
                                             : damp * theta(n + 1, p) * dunkl_hermite_fn(p, n + 1, x);
                const double scale = damp * std::max(1.0, theta(sign > 0 ? n : n + 1, p));
                e = std::max(e, std::abs(got - want) / scale);
            }
        }
        worst = std::max(worst, e);
        d << (sign > 0 ? "Q: " : "; M: ") << sci(e);
    }
    d << "; errors relative to the multiplier e^{-t sqrt(2n+2k+1)} theta/sqrt(2n+2k+1); M acts with a plus sign";
    return make("conjugate_eigen_actions", "Q and M kernels shift h_n down and up with the conjugate multipliers",
                worst, 1e-7, d.str());
}

CheckRecord growth_exponents(const VerificationConfig&) {
    const std::pair<double, double> cases[] = {{0.5, 1.0}, {1.5, 3.0}, {0.5, kInf}};
    double worst = 0.0;
    std::ostringstream d;
    for (auto [k, e] : cases) {
        const DunklParameter p(k);
        const double want = expected_growth_exponent(p, e);
        const double got = norm_growth_fit(p, e, 16, 120).slope;
        worst = std::max(worst, std::abs(got - want));
        d << (d.tellp() > 0 ? "; " : "") << "(k=" << k << ", p=" << (std::isinf(e) ? "inf" : format_number(e))
          << ") slope " << format_number(got, 4) << " vs " << format_number(want, 4);
    }
    return make("norm_growth_exponents", "log-log slopes of ||h_n||_{k,p} against n match the asymptotic exponents",
                worst, 0.05, d.str());
}

CheckRecord decay_order(const VerificationConfig&) {
    double worst = 0.0;
    std::ostringstream d;
    const Function f = bump_function(0.0, 6.0);
    for (double k : {0.0, 0.5, 1.5}) {
        const DunklParameter p(k);
        const auto a = analyze(f, p, 48).coeffs;
        const double order = coefficient_decay_fit(a, 8, 40).slope;
        worst = std::max(worst, 3.0 / order);
        d << (k == 0.0 ? "" : "; ") << "k=" << k << " order " << format_number(order, 4);
    }
    d << "; residual is 3/order";
    return make("coefficient_decay", "expansion coefficients of a smooth bump decay faster than n^{-3}", worst, 1.0,
                d.str());
}

}  // namespace

const std::vector<Criterion>& acceptance_criteria() {
    static const std::vector<Criterion> list = {
        {1, "orthonormality", orthonormality},
        {2, "mehler_formula", mehler},
        {3, "mass_identities", mass_identities},
        {4, "subordination", subordination},
        {5, "poisson_dual_path", poisson_dual_path},
        {6, "semigroup_norm_bounds", semigroup_bounds},
        {7, "hilbert_equivalence", hilbert_equivalence},
        {8, "cz_kernel_bounds", cz_bounds},
        {9, "duality_identity", duality},
        {10, "pde_residuals", pde_residuals},
        {11, "conjugate_eigen_actions", conjugate_eigen_actions},
        {12, "norm_growth_exponents", growth_exponents},
        {13, "coefficient_decay", decay_order},
    };
    return list;
}

void run_acceptance(const VerificationConfig& cfg, VerificationReport& report, const std::vector<int>& ids,
                    std::ostream* log) {
    for (const auto& c : acceptance_criteria()) {
        if (!ids.empty() && std::find(ids.begin(), ids.end(), c.id) == ids.end()) continue;
        const auto start = std::chrono::steady_clock::now();
        CheckRecord r;
        try {
            r = c.run(cfg);
        } catch (const std::exception& e) {
            r = make(c.name, "", kInf, 0.0, std::string("error: ") + e.what());
            r.passed = false;
        }
        r.runtime_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
        if (log) {
            *log << (r.passed ? "PASS" : "FAIL") << " [" << std::setw(2) << c.id << "] " << r.name
                 << " residual=" << format_number(r.residual, 6) << " tolerance=" << format_number(r.tolerance, 6)
                 << " (" << std::fixed << std::setprecision(1) << r.runtime_ms / 1000.0 << " s)"
                 << std::defaultfloat << std::setprecision(6) << "\n    " << r.detail << std::endl;
        }
        report.append(std::move(r));
    }
}

}  // namespace dunkl
