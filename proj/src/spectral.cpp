#include "dunkl/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "dunkl/io.hpp"
#include "dunkl/special_functions.hpp"

namespace dunkl {

namespace {

void require_positive_time(double t, const char* what) {
    if (!(t > 0.0) || !std::isfinite(t)) throw std::domain_error(std::string(what) + ": t must be positive");
}

SpectralCoefficients scaled(const SpectralCoefficients& c, const std::function<double(int)>& factor) {
    SpectralCoefficients out = c;
    for (std::size_t n = 0; n < out.a.size(); ++n) out.a[n] *= factor(static_cast<int>(n));
    return out;
}

}  // namespace

SpectralCoefficients::SpectralCoefficients(DunklParameter param, std::vector<double> coeffs)
    : p(param), a(std::move(coeffs)) {
    if (a.empty()) throw std::invalid_argument("SpectralCoefficients: need at least one coefficient");
    for (double v : a)
        if (!std::isfinite(v)) throw std::invalid_argument("SpectralCoefficients: non-finite coefficient");
}

SpectralCoefficients SpectralCoefficients::unit(const DunklParameter& p, int n, int length) {
    if (n < 0 || n >= length) throw std::invalid_argument("SpectralCoefficients::unit: index out of range");
    std::vector<double> a(static_cast<std::size_t>(length), 0.0);
    a[static_cast<std::size_t>(n)] = 1.0;
    return {p, std::move(a)};
}

SampledFunction::SampledFunction(std::vector<double> g, std::vector<double> v, DecayClass decay,
                                 std::optional<Interval> supp)
    : grid(std::move(g)), values(std::move(v)), decay_class(decay), support(supp) {
    if (grid.size() != values.size()) throw std::invalid_argument("SampledFunction: grid and values differ in length");
    if (grid.size() < 2) throw std::invalid_argument("SampledFunction: need at least two samples");
    for (std::size_t i = 1; i < grid.size(); ++i)
        if (!(grid[i] > grid[i - 1])) throw std::invalid_argument("SampledFunction: grid must be strictly increasing");
    if (decay_class == DecayClass::compact && !support) support = Interval{grid.front(), grid.back()};
    // Natural cubic spline second derivatives (Thomas algorithm).
    const std::size_t n = grid.size();
    second_.assign(n, 0.0);
    std::vector<double> c(n, 0.0), d(n, 0.0);
    for (std::size_t i = 1; i + 1 < n; ++i) {
        const double h0 = grid[i] - grid[i - 1], h1 = grid[i + 1] - grid[i];
        const double diag = 2.0 * (h0 + h1);
        const double rhs = 6.0 * ((values[i + 1] - values[i]) / h1 - (values[i] - values[i - 1]) / h0);
        const double denom = diag - h0 * c[i - 1];
        c[i] = h1 / denom;
        d[i] = (rhs - h0 * d[i - 1]) / denom;
    }
    for (std::size_t i = n - 2; i >= 1; --i) {
        second_[i] = d[i] - c[i] * second_[i + 1];
        if (i == 1) break;
    }
}

Function SampledFunction::as_function() const {
    Function f;
    const auto g = grid;
    const auto v = values;
    const auto s = second_;
    f.value = [g, v, s](double x) {
        if (x < g.front() || x > g.back()) return 0.0;
        std::size_t i = static_cast<std::size_t>(std::upper_bound(g.begin(), g.end(), x) - g.begin());
        i = std::clamp<std::size_t>(i, 1, g.size() - 1);
        const double h = g[i] - g[i - 1];
        const double A = (g[i] - x) / h, B = (x - g[i - 1]) / h;
        return A * v[i - 1] + B * v[i] + ((A * A * A - A) * s[i - 1] + (B * B * B - B) * s[i]) * h * h / 6.0;
    };
    f.decay = decay_class == DecayClass::generic ? DecayClass::compact : decay_class;
    f.support = support ? support : std::optional<Interval>(Interval{grid.front(), grid.back()});
    f.name = "sampled";
    return f;
}

Analysis analyze(const Function& f, const DunklParameter& p, int N, const AnalysisOptions& opt) {
    if (N < 0) throw std::invalid_argument("analyze: N must be nonnegative");
    const std::size_t dim = static_cast<std::size_t>(N) + 1;
    const double k = p.k();
    std::vector<double> a(dim, 0.0);
    double err = 0.0;
    std::vector<double> h(dim);
    if (opt.scheme == MeasureScheme::gauss) {
        if (f.decay != DecayClass::gaussian)
            throw std::invalid_argument("analyze: Gauss scheme requires a function of Gaussian decay class");
        const int order = opt.gauss_order > 0 ? opt.gauss_order : default_gauss_order(std::max(N, f.degree_hint));
        const QuadratureRule rule = gauss_rule(p, order);
        for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
            const double x = rule.nodes[i];
            dunkl_hermite_fn_all(p, x, h);
            const double w = rule.weights[i] * f(x) * std::exp(x * x);
            for (std::size_t n = 0; n < dim; ++n) a[n] += w * h[n];
        }
    } else {
        const Interval dom = integration_domain(f, p);
        // Panels no wider than a fraction of the shortest oscillation of h_N.
        const double width = std::min(1.0, 2.0 / std::sqrt(p.lambda(N)));
        std::vector<double> pts;
        const int panels = std::max(2, static_cast<int>(std::ceil((dom.hi - dom.lo) / width)));
        for (int j = 0; j <= panels; ++j) pts.push_back(dom.lo + (dom.hi - dom.lo) * j / panels);
        if (dom.lo < 0.0 && dom.hi > 0.0) pts.push_back(0.0);
        std::sort(pts.begin(), pts.end());
        pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
        const auto r = integrate_vector(
            [&](double x, std::span<double> out) {
                const double fx = f(x) * (k == 0.0 ? 1.0 : std::pow(std::abs(x), 2.0 * k));
                if (fx == 0.0) {
                    std::fill(out.begin(), out.end(), 0.0);
                    return;
                }
                dunkl_hermite_fn_all(p, x, out);
                for (double& o : out) o *= fx;
            },
            dim, pts, opt.integration);
        a = r.value;
        err = *std::max_element(r.error.begin(), r.error.end());
    }
    Analysis out;
    out.coeffs = SpectralCoefficients(p, std::move(a));
    const auto& c = out.coeffs.a;
    const double total = std::inner_product(c.begin(), c.end(), c.begin(), 0.0);
    double tail = 0.0;
    for (int n = std::max(0, N - 7); n <= N; ++n) tail += c[n] * c[n];
    out.tail_energy = total > 0.0 ? tail / total : 0.0;
    out.error = err;
    return out;
}

Analysis analyze(const SampledFunction& f, const DunklParameter& p, int N, const AnalysisOptions& opt) {
    return analyze(f.as_function(), p, N, opt);
}

double synthesize(const SpectralCoefficients& c, double x) {
    std::vector<double> h(c.a.size());
    dunkl_hermite_fn_all(c.p, x, h);
    double s = 0.0;
    for (std::size_t n = 0; n < h.size(); ++n) s += c.a[n] * h[n];
    return s;
}

Function as_function(const SpectralCoefficients& c) {
    Function f;
    f.value = [c](double x) { return synthesize(c, x); };
    f.decay = DecayClass::gaussian;
    f.degree_hint = c.degree();
    f.name = "expansion";
    return f;
}

double inner_product(const SpectralCoefficients& a, const SpectralCoefficients& b) {
    const std::size_t n = std::min(a.a.size(), b.a.size());
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += a.a[i] * b.a[i];
    return s;
}

double l2_norm(const SpectralCoefficients& c) { return std::sqrt(inner_product(c, c)); }

SpectralCoefficients heat_multiplier(const SpectralCoefficients& c, double t) {
    require_positive_time(t, "heat_multiplier");
    return scaled(c, [&](int n) { return std::exp(-t * c.p.lambda(n)); });
}

SpectralCoefficients poisson_multiplier(const SpectralCoefficients& c, double t) {
    require_positive_time(t, "poisson_multiplier");
    return scaled(c, [&](int n) { return std::exp(-t * std::sqrt(c.p.lambda(n))); });
}

SpectralCoefficients heat_multiplier_derivative(const SpectralCoefficients& c, double t, int m) {
    require_positive_time(t, "heat_multiplier_derivative");
    return scaled(c, [&](int n) { return std::pow(-c.p.lambda(n), m) * std::exp(-t * c.p.lambda(n)); });
}

SpectralCoefficients poisson_multiplier_derivative(const SpectralCoefficients& c, double t, int m) {
    require_positive_time(t, "poisson_multiplier_derivative");
    return scaled(c, [&](int n) {
        const double s = std::sqrt(c.p.lambda(n));
        return std::pow(-s, m) * std::exp(-t * s);
    });
}

SpectralCoefficients hilbert_plus(const SpectralCoefficients& c) {
    const int N = c.degree();
    std::vector<double> b(static_cast<std::size_t>(std::max(N, 1)), 0.0);
    for (int n = 1; n <= N; ++n) b[n - 1] = c.a[n] * theta(n, c.p) / std::sqrt(c.p.lambda(n));
    return {c.p, std::move(b)};
}

SpectralCoefficients hilbert_minus(const SpectralCoefficients& c) {
    const int N = c.degree();
    std::vector<double> b(static_cast<std::size_t>(N) + 2, 0.0);
    for (int n = 0; n <= N; ++n) b[n + 1] = -c.a[n] * theta(n + 1, c.p) / std::sqrt(c.p.lambda(n));
    return {c.p, std::move(b)};
}

SpectralCoefficients conjugate_multiplier(const SpectralCoefficients& c, double t, int sign) {
    require_positive_time(t, "conjugate_multiplier");
    if (sign != 1 && sign != -1) throw std::invalid_argument("conjugate_multiplier: sign must be +1 or -1");
    const SpectralCoefficients f = poisson_multiplier(c, t);
    if (sign > 0) return hilbert_plus(f);
    std::vector<double> b(f.a.size() + 1, 0.0);
    for (std::size_t n = 0; n < f.a.size(); ++n) {
        const int m = static_cast<int>(n);
        b[n + 1] = f.a[n] * theta(m + 1, c.p) / std::sqrt(c.p.lambda(m));
    }
    return {c.p, std::move(b)};
}

SpectralCoefficients conjugate_multiplier_derivative(const SpectralCoefficients& c, double t, int sign, int m) {
    // The shifts do not depend on t, so differentiate the Poisson factor first.
    const SpectralCoefficients d = poisson_multiplier_derivative(c, t, m);
    if (sign > 0) return hilbert_plus(d);
    SpectralCoefficients out = hilbert_minus(d);
    for (double& v : out.a) v = -v;
    return out;
}

SpectralCoefficients number_multiplier(const SpectralCoefficients& c, double power) {
    return scaled(c, [&](int n) { return std::pow(c.p.lambda(n), power); });
}

SpectralCoefficients ladder_down(const SpectralCoefficients& c) {
    const int N = c.degree();
    std::vector<double> b(static_cast<std::size_t>(std::max(N, 1)), 0.0);
    for (int n = 1; n <= N; ++n) b[n - 1] = theta(n, c.p) * c.a[n];
    return {c.p, std::move(b)};
}

SpectralCoefficients ladder_up(const SpectralCoefficients& c) {
    const int N = c.degree();
    std::vector<double> b(static_cast<std::size_t>(N) + 2, 0.0);
    for (int n = 0; n <= N; ++n) b[n + 1] = -theta(n + 1, c.p) * c.a[n];
    return {c.p, std::move(b)};
}

SpectralCoefficients hilbert_plus_adjoint(const SpectralCoefficients& c) {
    const int N = c.degree();
    std::vector<double> b(static_cast<std::size_t>(N) + 2, 0.0);
    for (int n = 0; n <= N; ++n) b[n + 1] = c.a[n] * theta(n + 1, c.p) / std::sqrt(c.p.lambda(n + 1));
    return {c.p, std::move(b)};
}

SpectralCoefficients hilbert_minus_adjoint(const SpectralCoefficients& c) {
    const int N = c.degree();
    std::vector<double> b(static_cast<std::size_t>(std::max(N, 1)), 0.0);
    for (int n = 0; n + 1 <= N; ++n) b[n] = -c.a[n + 1] * theta(n + 1, c.p) / std::sqrt(c.p.lambda(n));
    return {c.p, std::move(b)};
}

double hilbert_minus_bound(const DunklParameter& p, int N) {
    double m = 0.0;
    for (int n = 0; n <= N; ++n) m = std::max(m, theta(n + 1, p) / std::sqrt(p.lambda(n)));
    return m;
}

SlopeFit loglog_fit(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size()) throw std::invalid_argument("loglog_fit: length mismatch");
    std::vector<double> lx, ly;
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (!(x[i] > 0.0) || !(y[i] > 0.0)) continue;
        lx.push_back(std::log(x[i]));
        ly.push_back(std::log(y[i]));
    }
    const std::size_t n = lx.size();
    if (n < 3) throw std::domain_error("loglog_fit: fewer than three positive points");
    const double mx = std::accumulate(lx.begin(), lx.end(), 0.0) / n;
    const double my = std::accumulate(ly.begin(), ly.end(), 0.0) / n;
    double sxx = 0.0, sxy = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        sxx += (lx[i] - mx) * (lx[i] - mx);
        sxy += (lx[i] - mx) * (ly[i] - my);
        syy += (ly[i] - my) * (ly[i] - my);
    }
    if (sxx <= 0.0) throw std::domain_error("loglog_fit: degenerate abscissae");
    SlopeFit f;
    f.slope = sxy / sxx;
    f.intercept = my - f.slope * mx;
    f.r_squared = syy > 0.0 ? sxy * sxy / (sxx * syy) : 1.0;
    f.points = static_cast<int>(n);
    return f;
}

SlopeFit coefficient_decay_fit(const SpectralCoefficients& c, int n_lo, int n_hi) {
    if (n_lo < 0 || n_hi <= n_lo || n_hi > c.degree())
        throw std::invalid_argument("coefficient_decay_fit: range must lie inside the coefficient vector");
    std::vector<double> env(c.a.size());
    double run = 0.0;
    for (int n = c.degree(); n >= 0; --n) {
        run = std::max(run, std::abs(c.a[n]));
        env[n] = run;
    }
    std::vector<double> x, y;
    for (int n = n_lo; n <= n_hi; ++n) {
        x.push_back(c.p.lambda(n));
        y.push_back(env[n]);
    }
    SlopeFit f = loglog_fit(x, y);
    f.slope = -f.slope;
    return f;
}

std::string coefficients_csv(const SpectralCoefficients& c, const std::string& header_comment, int precision) {
    std::ostringstream out;
    out << "# " << header_comment << "\n";
    out << "n,a_n\n";
    for (std::size_t n = 0; n < c.a.size(); ++n) out << n << "," << format_number(c.a[n], precision) << "\n";
    return out.str();
}

std::string coefficients_json(const SpectralCoefficients& c, int precision) {
    std::ostringstream out;
    out << "{\"k\": " << format_number(c.p.k(), precision) << ", \"N\": " << c.degree() << ", \"a\": [";
    for (std::size_t n = 0; n < c.a.size(); ++n) out << (n ? ", " : "") << format_number(c.a[n], precision);
    out << "]}";
    return out.str();
}

}  // namespace dunkl
