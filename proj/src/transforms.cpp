#include "dunkl/transforms.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace dunkl {

namespace {

void require_sign(int sign) {
    if (sign != 1 && sign != -1) throw std::invalid_argument("sign must be +1 or -1");
}

double measure_weight(const DunklParameter& p, double y) {
    return p.k() == 0.0 ? 1.0 : std::pow(std::abs(y), 2.0 * p.k());
}

// Breakpoints resolving a kernel concentrated near y = x (and its reflection)
// on the length scale `scale`.
std::vector<double> kernel_breakpoints(const Interval& dom, double x, double scale) {
    std::vector<double> pts{dom.lo, dom.hi};
    auto add = [&](double v) {
        if (v > dom.lo && v < dom.hi) pts.push_back(v);
    };
    add(0.0);
    for (double c : {x, -x}) {
        add(c);
        for (double m : {1.0, 4.0, 16.0, 64.0, 256.0}) {
            add(c - m * scale);
            add(c + m * scale);
        }
    }
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    return pts;
}

double kernel_integral(const Function& f, const DunklParameter& p, double x, double scale,
                       const std::function<double(double)>& kernel, const IntegrationOptions& opt) {
    const Interval dom = integration_domain(f, p);
    const auto pts = kernel_breakpoints(dom, x, scale);
    return integrate(
               [&](double y) {
                   const double fy = f(y);
                   if (fy == 0.0) return 0.0;
                   return kernel(y) * fy * measure_weight(p, y);
               },
               pts, opt)
        .value;
}

SpectralCoefficients coefficients(const Function& f, const DunklParameter& p, const TransformOptions& opt) {
    return analyze(f, p, opt.N, opt.analysis).coeffs;
}

PathComparison compare(double s, double k, double limit, const char* what) {
    PathComparison c{s, k, std::abs(s - k)};
    if (c.disagreement > limit) {
        std::ostringstream msg;
        msg << what << ": spectral and kernel paths disagree by " << c.disagreement << " (limit " << limit
            << "); check the truncation degree and tolerances";
        throw NumericalError(msg.str());
    }
    return c;
}

}  // namespace

double heat_apply(const Function& f, const DunklParameter& p, double t, double x, EvalPath path,
                  const TransformOptions& opt) {
    if (!(t > 0.0)) throw std::domain_error("heat_apply: t must be positive");
    if (path == EvalPath::spectral) return synthesize(heat_multiplier(coefficients(f, p, opt), t), x);
    return kernel_integral(f, p, x, 2.0 * std::sqrt(t), [&](double y) { return heat_kernel(p, t, x, y); },
                           opt.integration);
}

double poisson_apply(const Function& f, const DunklParameter& p, double t, double x, EvalPath path,
                     const TransformOptions& opt) {
    if (!(t > 0.0)) throw std::domain_error("poisson_apply: t must be positive");
    if (path == EvalPath::spectral) return synthesize(poisson_multiplier(coefficients(f, p, opt), t), x);
    PoissonOptions po;
    po.rel_tol = opt.kernel.rel_tol;
    return kernel_integral(f, p, x, t, [&](double y) { return poisson_kernel(p, t, x, y, po); }, opt.integration);
}

std::pair<PVResult, PVResult> hilbert_pv_pair(const Function& f, const DunklParameter& p, double x,
                                              const TransformOptions& opt) {
    auto parts = principal_value_integrate_vector(
        [&](double xx, double yy, std::span<double> out) {
            const HilbertParts h = hilbert_kernel_parts(p, xx, yy, opt.kernel);
            out[0] = h.R1;
            out[1] = h.R2;
        },
        2, f, p, x, opt.pv);
    const double c = std::sqrt(2.0 / std::numbers::pi);
    auto combine = [&](int sign) {
        PVResult r;
        r.value = c * (parts[0].value + sign * parts[1].value);
        r.error = c * (parts[0].error + parts[1].error);
        for (std::size_t j = 0; j < parts[0].truncated.size(); ++j)
            r.truncated.push_back(c * (parts[0].truncated[j] + sign * parts[1].truncated[j]));
        r.cauchy = parts[0].cauchy && parts[1].cauchy;
        return r;
    };
    return {combine(+1), combine(-1)};
}

double hilbert_apply(const Function& f, const DunklParameter& p, int sign, double x, HilbertMethod method,
                     const TransformOptions& opt) {
    require_sign(sign);
    if (method == HilbertMethod::spectral) {
        const SpectralCoefficients c = coefficients(f, p, opt);
        return synthesize(sign > 0 ? hilbert_plus(c) : hilbert_minus(c), x);
    }
    const auto pair = hilbert_pv_pair(f, p, x, opt);
    return sign > 0 ? pair.first.value : pair.second.value;
}

double conjugate_apply(const Function& f, const DunklParameter& p, double t, int sign, double x, EvalPath path,
                       const TransformOptions& opt) {
    require_sign(sign);
    if (!(t > 0.0)) throw std::domain_error("conjugate_apply: t must be positive");
    if (path == EvalPath::spectral) return synthesize(conjugate_multiplier(coefficients(f, p, opt), t, sign), x);
    return kernel_integral(
        f, p, x, t,
        [&](double y) {
            return sign > 0 ? conjugate_kernel_Q(p, t, x, y, opt.kernel) : conjugate_kernel_M(p, t, x, y, opt.kernel);
        },
        opt.integration);
}

PathComparison heat_compare(const Function& f, const DunklParameter& p, double t, double x,
                            const TransformOptions& opt) {
    return compare(heat_apply(f, p, t, x, EvalPath::spectral, opt), heat_apply(f, p, t, x, EvalPath::kernel, opt),
                   opt.disagreement_limit, "heat");
}

PathComparison poisson_compare(const Function& f, const DunklParameter& p, double t, double x,
                               const TransformOptions& opt) {
    return compare(poisson_apply(f, p, t, x, EvalPath::spectral, opt),
                   poisson_apply(f, p, t, x, EvalPath::kernel, opt), opt.disagreement_limit, "poisson");
}

PathComparison hilbert_compare(const Function& f, const DunklParameter& p, int sign, double x,
                               const TransformOptions& opt) {
    return compare(hilbert_apply(f, p, sign, x, HilbertMethod::spectral, opt),
                   hilbert_apply(f, p, sign, x, HilbertMethod::pv, opt), opt.disagreement_limit, "hilbert");
}

PathComparison conjugate_compare(const Function& f, const DunklParameter& p, double t, int sign, double x,
                                 const TransformOptions& opt) {
    return compare(conjugate_apply(f, p, t, sign, x, EvalPath::spectral, opt),
                   conjugate_apply(f, p, t, sign, x, EvalPath::kernel, opt), opt.disagreement_limit, "conjugate");
}

double heat_pde_residual(const SpectralCoefficients& c, double t, double x, const DifferentiationOptions& d) {
    const Function G = as_function(heat_multiplier(c, t));
    const double dt = synthesize(heat_multiplier_derivative(c, t, 1), x);
    return std::abs(dunkl_hermite_operator_apply(c.p, G, x, d) - dt);
}

double heat_pde_residual(const Function& f, const DunklParameter& p, double t, double x,
                         const TransformOptions& opt) {
    return heat_pde_residual(coefficients(f, p, opt), t, x, opt.differentiation);
}

double poisson_pde_residual(const SpectralCoefficients& c, double t, double x, const DifferentiationOptions& d) {
    const Function F = as_function(poisson_multiplier(c, t));
    const double dtt = synthesize(poisson_multiplier_derivative(c, t, 2), x);
    return std::abs(dunkl_hermite_operator_apply(c.p, F, x, d) + dtt);
}

double poisson_pde_residual(const Function& f, const DunklParameter& p, double t, double x,
                            const TransformOptions& opt) {
    return poisson_pde_residual(coefficients(f, p, opt), t, x, opt.differentiation);
}

SystemResidual conjugate_system_residual(const SpectralCoefficients& c, double t, double x, int sign,
                                         const DifferentiationOptions& d) {
    require_sign(sign);
    const Function fs = as_function(conjugate_multiplier(c, t, sign));
    const Function F = as_function(poisson_multiplier(c, t));
    const double ftt = synthesize(conjugate_multiplier_derivative(c, t, sign, 2), x);
    const double ft = synthesize(conjugate_multiplier_derivative(c, t, sign, 1), x);
    SystemResidual r;
    r.r36 = std::abs(dunkl_hermite_operator_apply(c.p, fs, x, d) + ftt - sign * 2.0 * fs(x));
    r.r37 = std::abs(dunkl_apply(c.p, F, x, d) + sign * x * F(x) + sign * ft);
    return r;
}

SystemResidual conjugate_system_residual(const Function& f, const DunklParameter& p, double t, double x, int sign,
                                         const TransformOptions& opt) {
    return conjugate_system_residual(coefficients(f, p, opt), t, x, sign, opt.differentiation);
}

namespace {

double sample_step(const Function& f, const DunklParameter& p, const NormOptions& opt) {
    if (opt.sample_step > 0.0) return opt.sample_step;
    return std::min(0.02, 0.2 * std::numbers::pi / std::sqrt(p.lambda(f.degree_hint)));
}

std::vector<double> sample_grid(const Interval& dom, double step) {
    const int n = std::max(2, static_cast<int>(std::ceil((dom.hi - dom.lo) / step)));
    std::vector<double> g(static_cast<std::size_t>(n) + 1);
    for (int i = 0; i <= n; ++i) g[i] = dom.lo + (dom.hi - dom.lo) * i / n;
    return g;
}

double bisect_root(const Function& f, double a, double b, double fa) {
    for (int it = 0; it < 200 && b - a > 4.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, std::abs(a));
         ++it) {
        const double m = 0.5 * (a + b);
        const double fm = f(m);
        if (fm == 0.0) return m;
        if ((fm > 0.0) == (fa > 0.0)) {
            a = m;
            fa = fm;
        } else {
            b = m;
        }
    }
    return 0.5 * (a + b);
}

}  // namespace

double sup_norm(const Function& f, const DunklParameter& p, const NormOptions& opt) {
    const Interval dom = integration_domain(f, p);
    const auto g = sample_grid(dom, sample_step(f, p, opt));
    std::vector<double> v(g.size());
    for (std::size_t i = 0; i < g.size(); ++i) v[i] = std::abs(f(g[i]));
    // Refine the three largest sampled local maxima by golden-section search.
    std::vector<std::size_t> peaks;
    for (std::size_t i = 0; i < g.size(); ++i) {
        const bool left = i == 0 || v[i] >= v[i - 1];
        const bool right = i + 1 == g.size() || v[i] >= v[i + 1];
        if (left && right) peaks.push_back(i);
    }
    std::sort(peaks.begin(), peaks.end(), [&](std::size_t a, std::size_t b) { return v[a] > v[b]; });
    if (peaks.size() > 3) peaks.resize(3);
    double best = 0.0;
    const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
    for (std::size_t i : peaks) {
        double a = g[i == 0 ? 0 : i - 1], b = g[std::min(i + 1, g.size() - 1)];
        double c = b - gr * (b - a), d = a + gr * (b - a);
        double fc = std::abs(f(c)), fd = std::abs(f(d));
        for (int it = 0; it < 80; ++it) {
            if (fc > fd) {
                b = d;
                d = c;
                fd = fc;
                c = b - gr * (b - a);
                fc = std::abs(f(c));
            } else {
                a = c;
                c = d;
                fc = fd;
                d = a + gr * (b - a);
                fd = std::abs(f(d));
            }
        }
        best = std::max({best, v[i], fc, fd});
    }
    return best;
}

double lp_norm(const Function& f, const DunklParameter& p, double exponent, const NormOptions& opt) {
    if (std::isinf(exponent) && exponent > 0) return sup_norm(f, p, opt);
    if (!(exponent >= 1.0)) throw std::domain_error("lp_norm: exponent must be >= 1");
    const Interval dom = integration_domain(f, p);
    std::vector<double> pts{dom.lo, dom.hi};
    if (dom.lo < 0.0 && dom.hi > 0.0) pts.push_back(0.0);
    const auto g = sample_grid(dom, sample_step(f, p, opt));
    // Split at sign changes so every panel integrates a smooth power.
    double prev = f(g[0]);
    for (std::size_t i = 1; i < g.size(); ++i) {
        const double cur = f(g[i]);
        if (cur == 0.0) {
            pts.push_back(g[i]);
        } else if (prev != 0.0 && (cur > 0.0) != (prev > 0.0)) {
            pts.push_back(bisect_root(f, g[i - 1], g[i], prev));
        }
        if (i % 8 == 0) pts.push_back(g[i]);
        prev = cur;
    }
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    const auto r = integrate(
        [&](double x) {
            const double v = std::abs(f(x));
            if (v == 0.0) return 0.0;
            return (exponent == 2.0 ? v * v : std::pow(v, exponent)) * measure_weight(p, x);
        },
        pts, opt.integration);
    return std::pow(r.value, 1.0 / exponent);
}

double expected_growth_exponent(const DunklParameter& p, double exponent) {
    const double k = p.k();
    if (std::isinf(exponent) && exponent > 0) return k / 2.0 - 1.0 / 12.0;
    if (!(exponent >= 1.0 && exponent <= 4.0))
        throw std::domain_error("expected_growth_exponent: exponent must lie in [1, 4] or be infinite");
    const double b = k * (exponent - 2.0);
    if (std::abs(b - 1.0) < 0.05)
        throw std::domain_error("expected_growth_exponent: k(p-2) is within 0.05 of the unresolved case 1");
    if (b < 1.0) return -0.25 + 1.0 / (2.0 * exponent) + k * (1.0 / exponent - 0.5);
    return -0.25 - 1.0 / (2.0 * exponent) + k * (0.5 - 1.0 / exponent);
}

SlopeFit norm_growth_fit(const DunklParameter& p, double exponent, int n_lo, int n_hi, const NormOptions& opt) {
    if (n_lo < 8 || n_hi > 120 || n_hi - n_lo < 2)
        throw std::domain_error("norm_growth_fit: range must lie inside [8, 120] with at least three points");
    (void)expected_growth_exponent(p, exponent);  // refuses the unresolved boundary
    std::vector<double> ns, norms;
    for (int n = n_lo; n <= n_hi; ++n) {
        ns.push_back(n);
        norms.push_back(lp_norm(basis_function(p, 2 * n), p, exponent, opt));
    }
    return loglog_fit(ns, norms);
}

namespace {

double support_gap(const Interval& a, const Interval& b) { return std::max(b.lo - a.hi, a.lo - b.hi); }

struct SpectralDuality {
    double plus = 0.0, minus = 0.0, plus_adj = 0.0, minus_adj = 0.0;
    int degree = 0;
};

SpectralDuality spectral_duality(const Function& f, const Function& g, const DunklParameter& p,
                                 const DualityOptions& opt) {
    AnalysisOptions ao;
    ao.integration.max_panels = 100000;
    for (int N = opt.min_degree;; N *= 2) {
        const auto a = analyze(f, p, N + 1, ao).coeffs;
        const auto b = analyze(g, p, N + 1, ao).coeffs;
        // Partial sums of <H^+ f, g> and <H^- f, g> as the truncation grows.
        std::vector<double> sp(N + 1, 0.0), sm(N + 1, 0.0);
        double accp = 0.0, accm = 0.0;
        for (int n = 0; n <= N; ++n) {
            if (n >= 1) accp += theta(n, p) / std::sqrt(p.lambda(n)) * a.a[n] * b.a[n - 1];
            accm += -theta(n + 1, p) / std::sqrt(p.lambda(n)) * a.a[n] * b.a[n + 1];
            sp[n] = accp;
            sm[n] = accm;
        }
        double var = 0.0;
        for (int n = N / 2; n <= N; ++n) var = std::max({var, std::abs(sp[n] - accp), std::abs(sm[n] - accm)});
        if (var <= opt.spectral_tol || 2 * N > opt.max_degree) {
            SpectralDuality d;
            d.plus = accp;
            d.minus = accm;
            SpectralCoefficients at(p, std::vector<double>(a.a.begin(), a.a.begin() + N + 1));
            SpectralCoefficients bt(p, std::vector<double>(b.a.begin(), b.a.begin() + N + 2));
            d.plus_adj = inner_product(at, hilbert_plus_adjoint(SpectralCoefficients(
                                               p, std::vector<double>(b.a.begin(), b.a.begin() + N))));
            d.minus_adj = inner_product(at, hilbert_minus_adjoint(bt));
            d.degree = N;
            return d;
        }
    }
}

}  // namespace

std::pair<DualityResult, DualityResult> duality_check(const Function& f, const Function& g, const DunklParameter& p,
                                                      const DualityOptions& opt) {
    if (f.decay != DecayClass::compact || g.decay != DecayClass::compact || !f.support || !g.support)
        throw std::invalid_argument("duality_check: f and g must be compactly supported");
    const Interval sf = *f.support, sg = *g.support;
    if (!(support_gap(sf, sg) > 0.0)) throw std::invalid_argument("duality_check: supports overlap");
    const SpectralDuality s = spectral_duality(f, g, p, opt);

    IntegrationOptions inner;
    inner.rel_tol = opt.inner_rel_tol;
    inner.max_panels = 20000;
    KernelOptions ko;
    ko.rel_tol = opt.kernel_rel_tol;
    IntegrationOptions outer;
    outer.rel_tol = opt.outer_rel_tol;
    // R_{k,1} has a logarithmic singularity on the anti-diagonal y = -x; the
    // substitution y = -x + u|u| removes it from the integrand.
    auto inner_integral = [&](double x, std::span<double> out) {
        auto kernel_row = [&](double y, double jac, std::span<double> o) {
            const double fy = f(y);
            if (fy == 0.0 || jac == 0.0) {
                o[0] = o[1] = 0.0;
                return;
            }
            const HilbertParts h = hilbert_kernel_parts(p, x, y, ko);
            const double w = fy * measure_weight(p, y) * jac;
            o[0] = h.R1 * w;
            o[1] = h.R2 * w;
        };
        VectorIntegrationResult r;
        if (p.k() > 0.0 && -x > sf.lo && -x < sf.hi) {
            const double pts[3] = {-std::sqrt(-x - sf.lo), 0.0, std::sqrt(sf.hi + x)};
            r = integrate_vector(
                [&](double u, std::span<double> o) { kernel_row(-x + u * std::abs(u), 2.0 * std::abs(u), o); }, 2,
                pts, inner);
        } else {
            const double pts[2] = {sf.lo, sf.hi};
            r = integrate_vector([&](double y, std::span<double> o) { kernel_row(y, 1.0, o); }, 2, pts, inner);
        }
        out[0] = r.value[0];
        out[1] = r.value[1];
    };
    const double opts_pts[2] = {sg.lo, sg.hi};
    const auto I = integrate_vector(
        [&](double x, std::span<double> out) {
            const double gx = g(x);
            if (gx == 0.0) {
                out[0] = out[1] = 0.0;
                return;
            }
            inner_integral(x, out);
            const double w = gx * measure_weight(p, x);
            out[0] *= w;
            out[1] *= w;
        },
        2, opts_pts, outer);
    const double c = std::sqrt(2.0 / std::numbers::pi);
    DualityResult plus{s.plus, c * (I.value[0] + I.value[1]), 0.0, s.plus_adj, s.degree};
    DualityResult minus{s.minus, c * (I.value[0] - I.value[1]), 0.0, s.minus_adj, s.degree};
    plus.residual = std::abs(plus.spectral - plus.kernel);
    minus.residual = std::abs(minus.spectral - minus.kernel);
    return {plus, minus};
}

}  // namespace dunkl
