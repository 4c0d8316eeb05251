#include "dunkl/quadrature.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <numeric>
#include <queue>
#include <sstream>
#include <stdexcept>

#include "dunkl/io.hpp"
#include "dunkl/special_functions.hpp"

namespace dunkl {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

constexpr double xgk[8] = {0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
                           0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
                           0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
                           0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr double wgk[8] = {0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
                           0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
                           0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
                           0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr double wg[4] = {0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
                          0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Panel {
    double a;
    double b;
    std::vector<double> value;
    std::vector<double> error;
    std::vector<double> absval;
    double worst;
    bool splittable;
};

class GaussKronrod {
public:
    GaussKronrod(const VectorIntegrand& f, std::size_t dim) : f_(f), dim_(dim), fx_(15 * dim) {}

    Panel apply(double a, double b) {
        Panel p{a, b, std::vector<double>(dim_), std::vector<double>(dim_), std::vector<double>(dim_), 0.0, true};
        const double c = 0.5 * (a + b);
        const double h = 0.5 * (b - a);
        // Node order: 7 left, centre, 7 right.
        for (int j = 0; j < 7; ++j) {
            f_(c - h * xgk[j], std::span<double>(fx_.data() + j * dim_, dim_));
            f_(c + h * xgk[j], std::span<double>(fx_.data() + (14 - j) * dim_, dim_));
        }
        f_(c, std::span<double>(fx_.data() + 7 * dim_, dim_));
        evaluations_ += 15;
        for (std::size_t i = 0; i < dim_; ++i) {
            auto at = [&](int node) { return fx_[node * dim_ + i]; };
            const double fc = at(7);
            double rk = wgk[7] * fc;
            double rg = wg[3] * fc;
            double ra = std::abs(rk);
            for (int j = 0; j < 7; ++j) {
                const double s = at(j) + at(14 - j);
                rk += wgk[j] * s;
                ra += wgk[j] * (std::abs(at(j)) + std::abs(at(14 - j)));
                if (j % 2 == 1) rg += wg[j / 2] * s;
            }
            const double mean = 0.5 * rk;
            double rasc = wgk[7] * std::abs(fc - mean);
            for (int j = 0; j < 7; ++j) rasc += wgk[j] * (std::abs(at(j) - mean) + std::abs(at(14 - j) - mean));
            double err = std::abs((rk - rg) * h);
            rasc *= std::abs(h);
            if (rasc != 0.0 && err != 0.0) err = rasc * std::min(1.0, std::pow(200.0 * err / rasc, 1.5));
            const double resabs = ra * std::abs(h);
            err = std::max(err, 50.0 * kEps * resabs);
            if (!std::isfinite(rk)) throw NumericalError("integrand returned a non-finite value");
            p.value[i] = rk * h;
            p.error[i] = err;
            p.absval[i] = resabs;
            p.worst = std::max(p.worst, err);
        }
        const double width = b - a;
        p.splittable = width > 64.0 * kEps * std::max(std::abs(a), std::abs(b)) && width > 1e-300;
        return p;
    }

    int evaluations() const { return evaluations_; }

private:
    const VectorIntegrand& f_;
    std::size_t dim_;
    std::vector<double> fx_;
    int evaluations_ = 0;
};

VectorIntegrationResult adaptive(const VectorIntegrand& f, std::size_t dim, std::span<const double> points,
                                 const IntegrationOptions& opt) {
    if (points.size() < 2) throw std::invalid_argument("integrate: need at least two points");
    VectorIntegrationResult out;
    out.value.assign(dim, 0.0);
    out.error.assign(dim, 0.0);
    if (dim == 0) return out;
    GaussKronrod gk(f, dim);
    std::vector<Panel> panels;
    for (std::size_t j = 0; j + 1 < points.size(); ++j) {
        if (!(points[j] <= points[j + 1])) throw std::invalid_argument("integrate: points must be nondecreasing");
        if (points[j] == points[j + 1]) continue;
        panels.push_back(gk.apply(points[j], points[j + 1]));
    }
    auto cmp = [&](std::size_t l, std::size_t r) { return panels[l].worst < panels[r].worst; };
    std::priority_queue<std::size_t, std::vector<std::size_t>, decltype(cmp)> heap(cmp);
    for (std::size_t j = 0; j < panels.size(); ++j) heap.push(j);

    auto totals = [&](std::vector<double>& err, double& scale) {
        err.assign(dim, 0.0);
        std::vector<double> l1(dim, 0.0);
        for (const auto& p : panels) {
            if (p.b <= p.a) continue;
            for (std::size_t i = 0; i < dim; ++i) {
                err[i] += p.error[i];
                l1[i] += p.absval[i];
            }
        }
        scale = *std::max_element(l1.begin(), l1.end());
    };

    std::vector<double> err;
    double scale = 0.0;
    totals(err, scale);
    bool converged = false;
    int active = static_cast<int>(panels.size());
    int since_refresh = 0;
    while (true) {
        const double tol = std::max(opt.abs_tol, opt.rel_tol * scale);
        if (*std::max_element(err.begin(), err.end()) <= tol) {
            converged = true;
            break;
        }
        if (heap.empty() || active >= opt.max_panels) break;
        const std::size_t j = heap.top();
        heap.pop();
        if (!panels[j].splittable) continue;
        const double a = panels[j].a;
        const double b = panels[j].b;
        const double m = 0.5 * (a + b);
        for (std::size_t i = 0; i < dim; ++i) err[i] -= panels[j].error[i];
        panels[j].b = panels[j].a;  // retire
        panels.push_back(gk.apply(a, m));
        panels.push_back(gk.apply(m, b));
        for (std::size_t q = panels.size() - 2; q < panels.size(); ++q) {
            for (std::size_t i = 0; i < dim; ++i) err[i] += panels[q].error[i];
            heap.push(q);
        }
        ++active;
        if (++since_refresh == 64) {
            totals(err, scale);
            since_refresh = 0;
        }
    }
    totals(err, scale);
    const double tol = std::max(opt.abs_tol, opt.rel_tol * scale);
    converged = converged || *std::max_element(err.begin(), err.end()) <= tol;
    // Deterministic left-to-right summation.
    std::vector<const Panel*> order;
    for (const auto& p : panels)
        if (p.b > p.a) order.push_back(&p);
    std::sort(order.begin(), order.end(), [](const Panel* l, const Panel* r) { return l->a < r->a; });
    for (const Panel* p : order)
        for (std::size_t i = 0; i < dim; ++i) out.value[i] += p->value[i];
    out.error = err;
    out.evaluations = gk.evaluations();
    out.converged = converged;
    if (!converged && opt.throw_on_failure) {
        std::ostringstream msg;
        msg << "adaptive quadrature did not reach tolerance " << tol << " (estimate "
            << *std::max_element(err.begin(), err.end()) << ", panels " << active << ")";
        throw NumericalError(msg.str());
    }
    return out;
}

IntegrationResult to_scalar(const VectorIntegrationResult& r) {
    return {r.value[0], r.error[0], r.evaluations, r.converged};
}

VectorIntegrand lift(const ScalarIntegrand& f) {
    return [&f](double x, std::span<double> out) { out[0] = f(x); };
}

// Finds [va, vb] outside which |h(v)| < ratio * peak, scanning outward from 0.
bool scan_window(const std::function<double(double)>& h, const HalflineOptions& opt, double& va, double& vb) {
    const double step = opt.scan_step;
    double peak = 0.0;
    struct Sample {
        double v;
        double m;
    };
    std::vector<Sample> right, left;
    auto negligible = [&](double m) { return peak > 0.0 && m < opt.peak_ratio * peak; };
    auto walk = [&](double dir, double limit, std::vector<Sample>& samples) {
        int quiet = 0;
        for (double v = dir > 0 ? 0.0 : -step; dir > 0 ? v <= limit : v >= limit; v += dir * step) {
            const double m = std::abs(h(v));
            if (!std::isfinite(m)) throw NumericalError("half-line integrand returned a non-finite value");
            peak = std::max(peak, m);
            samples.push_back({v, m});
            quiet = negligible(m) ? quiet + 1 : 0;
            if (quiet >= 2) return true;
        }
        return false;
    };
    const bool right_ok = walk(+1.0, opt.v_max, right);
    const bool left_ok = walk(-1.0, opt.v_min, left);
    if (peak == 0.0) return false;
    std::vector<Sample> all(left.rbegin(), left.rend());
    all.insert(all.end(), right.begin(), right.end());
    std::size_t lo = 0, hi = all.size() - 1;
    while (lo < all.size() && all[lo].m < opt.peak_ratio * peak) ++lo;
    while (hi > 0 && all[hi].m < opt.peak_ratio * peak) --hi;
    if ((!right_ok && all.back().m >= opt.peak_ratio * peak) || (!left_ok && all.front().m >= opt.peak_ratio * peak))
        throw NumericalError("half-line integrand is not negligible at the edge of the search window");
    va = all[lo == 0 ? 0 : lo - 1].v;
    vb = all[std::min(hi + 1, all.size() - 1)].v;
    if (va == vb) {
        va -= step;
        vb += step;
    }
    return true;
}

}  // namespace

IntegrationResult integrate(const ScalarIntegrand& f, double a, double b, const IntegrationOptions& opt) {
    const double pts[2] = {a, b};
    return integrate(f, std::span<const double>(pts, 2), opt);
}

IntegrationResult integrate(const ScalarIntegrand& f, std::span<const double> points, const IntegrationOptions& opt) {
    return to_scalar(adaptive(lift(f), 1, points, opt));
}

VectorIntegrationResult integrate_vector(const VectorIntegrand& f, std::size_t dim, std::span<const double> points,
                                         const IntegrationOptions& opt) {
    return adaptive(f, dim, points, opt);
}

VectorIntegrationResult halfline_integrate_vector(const VectorIntegrand& g, std::size_t dim,
                                                  const HalflineOptions& opt) {
    std::vector<double> buf(dim);
    auto h_vec = [&](double v, std::span<double> out) {
        const double u = std::exp(v);
        g(u, out);
        for (double& o : out) o *= u;
    };
    auto h_max = [&](double v) {
        h_vec(v, buf);
        double m = 0.0;
        for (double b : buf) m = std::max(m, std::abs(b));
        return m;
    };
    double va = 0.0, vb = 0.0;
    if (!scan_window(h_max, opt, va, vb)) {
        VectorIntegrationResult zero;
        zero.value.assign(dim, 0.0);
        zero.error.assign(dim, 0.0);
        return zero;
    }
    std::vector<double> pts;
    for (double v = va; v < vb; v += opt.scan_step) pts.push_back(v);
    pts.push_back(vb);
    return adaptive(h_vec, dim, pts, opt.integration);
}

IntegrationResult halfline_integrate(const ScalarIntegrand& g, const HalflineOptions& opt) {
    return to_scalar(halfline_integrate_vector(lift(g), 1, opt));
}

IntegrationOptions unit_interval_defaults() {
    IntegrationOptions o;
    o.rel_tol = 1e-10;
    return o;
}

VectorIntegrationResult unit_interval_integrate_vector(const UnitVectorIntegrand& g, std::size_t dim,
                                                       const SingularitySpec& spec, const IntegrationOptions& opt) {
    if (!(spec.left_exponent > -1.0) || !(spec.right_exponent > -1.0))
        throw std::domain_error("unit_interval_integrate: endpoint exponents must exceed -1");
    switch (spec.transform) {
        case Substitution::none: {
            // v < 0 covers s in (0, 1/2], v > 0 covers 1 - s in (0, 1/2]; both endpoint
            // distances are formed near v = 0 where doubles are dense. A singular end
            // gets d = w^2 / 2 instead of d = w / 2.
            const bool sq_left = spec.left_exponent < 0.0, sq_right = spec.right_exponent < 0.0;
            const double pts[3] = {-1.0, 0.0, 1.0};
            return adaptive(
                [&](double v, std::span<double> out) {
                    const double w = std::abs(v);
                    const bool sq = v < 0.0 ? sq_left : sq_right;
                    const double d = sq ? 0.5 * w * w : 0.5 * w;
                    const double jac = sq ? w : 0.5;
                    if (d == 0.0) {
                        std::fill(out.begin(), out.end(), 0.0);
                        return;
                    }
                    if (v < 0.0) g(d, 1.0 - d, out);
                    else g(1.0 - d, d, out);
                    for (double& o : out) o *= jac;
                },
                dim, pts, opt);
        }
        case Substitution::square: {
            const double pts[3] = {0.0, 0.5, 1.0};
            return adaptive(
                [&](double sig, std::span<double> out) {
                    const double s = sig * sig;
                    g(s, (1.0 - sig) * (1.0 + sig), out);
                    for (double& o : out) o *= 2.0 * sig;
                },
                dim, pts, opt);
        }
        case Substitution::log_radius: {
            HalflineOptions h;
            h.integration = opt;
            return halfline_integrate_vector(
                [&](double u, std::span<double> out) {
                    const double r = std::exp(-2.0 * u);
                    const double omr = -std::expm1(-2.0 * u);
                    if (r == 0.0 || omr == 0.0) {
                        std::fill(out.begin(), out.end(), 0.0);
                        return;
                    }
                    g(r, omr, out);
                    for (double& o : out) o *= 2.0 * r;
                },
                dim, h);
        }
        case Substitution::hyperbolic: {
            HalflineOptions h;
            h.integration = opt;
            return halfline_integrate_vector(
                [&](double u, std::span<double> out) {
                    const double e = std::exp(-2.0 * u);
                    const double s = std::tanh(u);
                    const double oms = 2.0 * e / (1.0 + e);
                    if (s == 0.0 || oms == 0.0) {
                        std::fill(out.begin(), out.end(), 0.0);
                        return;
                    }
                    g(s, oms, out);
                    const double jac = oms * (1.0 + s);  // ds/du = 1 - s^2
                    for (double& o : out) o *= jac;
                },
                dim, h);
        }
    }
    throw std::invalid_argument("unit_interval_integrate: unknown substitution");
}

IntegrationResult unit_interval_integrate(const UnitIntegrand& g, const SingularitySpec& spec,
                                          const IntegrationOptions& opt) {
    return to_scalar(unit_interval_integrate_vector(
        [&](double s, double oms, std::span<double> out) { out[0] = g(s, oms); }, 1, spec, opt));
}

RecurrenceCoefficients generalized_hermite_recurrence(const DunklParameter& p, int N) {
    if (N < 1) throw std::invalid_argument("generalized_hermite_recurrence: N must be >= 1");
    RecurrenceCoefficients c;
    c.k = p.k();
    c.beta0 = p.mass();
    c.beta.resize(static_cast<std::size_t>(N));
    for (int n = 1; n <= N; ++n) c.beta[n - 1] = (n % 2 == 0) ? n / 2.0 : (n + 2.0 * p.k()) / 2.0;
    return c;
}

QuadratureRule gauss_rule(const RecurrenceCoefficients& coeffs, int N) {
    if (N < 1 || static_cast<std::size_t>(N) > coeffs.beta.size() + 1)
        throw std::invalid_argument("gauss_rule: order exceeds available recurrence coefficients");
    const DunklParameter p(coeffs.k);
    QuadratureRule rule;
    rule.order = N;
    rule.k = coeffs.k;
    rule.kind = RuleKind::gauss_generalized_hermite;
    if (N == 1) {
        rule.nodes = {0.0};
        rule.weights = {coeffs.beta0};
        return rule;
    }
    Eigen::VectorXd diag = Eigen::VectorXd::Zero(N);
    Eigen::VectorXd sub(N - 1);
    for (int i = 0; i < N - 1; ++i) sub[i] = std::sqrt(coeffs.beta[i]);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
    solver.computeFromTridiagonal(diag, sub, Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success) throw NumericalError("gauss_rule: tridiagonal eigensolver failed");
    std::vector<double> x(solver.eigenvalues().data(), solver.eigenvalues().data() + N);
    std::sort(x.begin(), x.end());
    // Symmetrise: the weight is even, so the node set is closed under negation.
    for (int i = 0; i < N / 2; ++i) {
        const double m = 0.5 * (x[N - 1 - i] - x[i]);
        x[i] = -m;
        x[N - 1 - i] = m;
    }
    if (N % 2 == 1) x[N / 2] = 0.0;
    // Christoffel weights 1 / sum_j p_j(x)^2 with p_j = h_j e^{x^2/2} orthonormal.
    std::vector<double> w(N);
    std::vector<double> h(N);
    for (int i = 0; i < N; ++i) {
        dunkl_hermite_fn_all(p, x[i], h);
        double s = 0.0;
        for (double v : h) s += v * v;
        w[i] = std::exp(-x[i] * x[i]) / s;
    }
    for (int i = 0; i < N / 2; ++i) {
        const double m = 0.5 * (w[i] + w[N - 1 - i]);
        w[i] = w[N - 1 - i] = m;
    }
    rule.nodes = std::move(x);
    rule.weights = std::move(w);
    return rule;
}

QuadratureRule gauss_rule(const DunklParameter& p, int N) {
    return gauss_rule(generalized_hermite_recurrence(p, std::max(N, 1)), N);
}

int default_gauss_order(int n_max) { return 2 * n_max + 8; }

namespace {
const char* kind_name(RuleKind k) {
    switch (k) {
        case RuleKind::gauss_generalized_hermite: return "gauss_generalized_hermite";
        case RuleKind::adaptive_panel: return "adaptive_panel";
        case RuleKind::pv_truncated: return "pv_truncated";
    }
    return "unknown";
}

RuleKind kind_from_name(const std::string& s) {
    if (s == "gauss_generalized_hermite") return RuleKind::gauss_generalized_hermite;
    if (s == "adaptive_panel") return RuleKind::adaptive_panel;
    if (s == "pv_truncated") return RuleKind::pv_truncated;
    throw std::invalid_argument("unknown quadrature rule kind '" + s + "'");
}
}  // namespace

void save_rule_csv(const QuadratureRule& rule, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open " + path.string());
    out << "# k=" << format_number(rule.k) << " kind=" << kind_name(rule.kind) << " order=" << rule.order << "\n";
    out << "node,weight\n";
    for (std::size_t i = 0; i < rule.nodes.size(); ++i)
        out << format_number(rule.nodes[i]) << "," << format_number(rule.weights[i]) << "\n";
}

QuadratureRule load_rule_csv(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path.string());
    QuadratureRule rule;
    std::string line;
    if (!std::getline(in, line) || line.rfind("# ", 0) != 0) throw std::runtime_error("missing rule header");
    std::istringstream hs(line.substr(2));
    std::string field;
    while (hs >> field) {
        const auto eq = field.find('=');
        if (eq == std::string::npos) continue;
        const std::string key = field.substr(0, eq), val = field.substr(eq + 1);
        if (key == "k") rule.k = parse_number(val);
        else if (key == "kind") rule.kind = kind_from_name(val);
        else if (key == "order") rule.order = std::stoi(val);
    }
    std::getline(in, line);  // column names
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        const auto comma = line.find(',');
        if (comma == std::string::npos) throw std::runtime_error("malformed rule line: " + line);
        rule.nodes.push_back(parse_number(line.substr(0, comma)));
        rule.weights.push_back(parse_number(line.substr(comma + 1)));
    }
    return rule;
}

Interval integration_domain(const Function& f, const DunklParameter& p) {
    if (f.decay == DecayClass::compact) {
        if (!f.support) throw std::invalid_argument("compactly supported function without a declared support");
        return *f.support;
    }
    if (f.support) return *f.support;
    if (f.decay == DecayClass::gaussian) {
        const double y = truncation_radius(p, f.degree_hint);
        return {-y, y};
    }
    throw std::invalid_argument("function of generic decay needs a declared integration interval");
}

IntegrationResult integrate_measure(const Function& f, const DunklParameter& p, MeasureScheme scheme,
                                    const MeasureOptions& opt) {
    const double k = p.k();
    if (scheme == MeasureScheme::gauss) {
        if (f.decay != DecayClass::gaussian)
            throw std::invalid_argument("Gauss scheme requires a function of Gaussian decay class");
        const int order = opt.gauss_order > 0 ? opt.gauss_order : default_gauss_order(std::max(f.degree_hint, 20));
        auto sum = [&](int n) {
            const QuadratureRule rule = gauss_rule(p, n);
            double s = 0.0;
            for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
                const double x = rule.nodes[i];
                s += rule.weights[i] * f(x) * std::exp(x * x);
            }
            return s;
        };
        const double v = sum(order);
        const double v2 = sum(order + 8);
        return {v2, std::abs(v2 - v), 2 * order + 8, true};
    }
    const Interval dom = integration_domain(f, p);
    std::vector<double> pts{dom.lo};
    if (dom.lo < 0.0 && dom.hi > 0.0) pts.push_back(0.0);
    pts.push_back(dom.hi);
    auto g = [&](double x) { return f(x) * (k == 0.0 ? 1.0 : std::pow(std::abs(x), 2.0 * k)); };
    return integrate(g, pts, opt.integration);
}

std::vector<double> PVOptions::default_eps_schedule() {
    std::vector<double> e;
    for (int j = 0; j <= 6; ++j) e.push_back(0.2 * std::ldexp(1.0, -j));
    return e;
}

std::vector<PVResult> principal_value_integrate_vector(const VectorKernelFunction& kernel, std::size_t dim,
                                                       const Function& f, const DunklParameter& p, double x,
                                                       const PVOptions& opt) {
    const auto& eps = opt.eps_schedule;
    if (eps.size() < 3) throw std::invalid_argument("principal_value_integrate: need at least three cut-offs");
    for (std::size_t j = 1; j < eps.size(); ++j)
        if (!(eps[j] < eps[j - 1]) || !(eps[j] > 0.0))
            throw std::invalid_argument("principal_value_integrate: cut-offs must be positive and decreasing");
    const double k = p.k();
    const Interval dom = integration_domain(f, p);
    const double rho_max = std::max(std::abs(x - dom.lo), std::abs(dom.hi - x));
    std::vector<double> kv(dim);
    // Symmetric bracket b(rho) = sum over y = x +- rho of f(y) K(x,y) |y|^{2k}.
    // With `magnitude` set it sums |f(y) K(x,y)| |y|^{2k} instead.
    auto eval_bracket = [&](double rho, std::span<double> out, bool magnitude) {
        std::fill(out.begin(), out.end(), 0.0);
        for (double sgn : {1.0, -1.0}) {
            const double y = x + sgn * rho;
            if (y < dom.lo || y > dom.hi) continue;
            const double fy = f(y);
            if (fy == 0.0) continue;
            kernel(x, y, kv);
            const double w = fy * (k == 0.0 ? 1.0 : std::pow(std::abs(y), 2.0 * k));
            for (std::size_t i = 0; i < dim; ++i) out[i] += magnitude ? std::abs(w * kv[i]) : w * kv[i];
        }
    };
    auto bracket = [&](double rho, std::span<double> out) { eval_bracket(rho, out, false); };
    // The tolerance of the cancelling bracket is set against the uncancelled size.
    IntegrationOptions shell_opt = opt.integration;
    if (rho_max > eps.back()) {
        const double span[2] = {eps.back(), rho_max};
        IntegrationOptions rough{0.0, 1e-3, 200, false};
        const auto m = integrate_vector([&](double rho, std::span<double> out) { eval_bracket(rho, out, true); }, dim,
                                        span, rough);
        const double size = *std::max_element(m.value.begin(), m.value.end());
        shell_opt.abs_tol = std::max(shell_opt.abs_tol, opt.integration.rel_tol * size);
    }
    std::vector<double> pts{eps.front()};
    for (double b : {std::abs(x), 2.0 * std::abs(x), std::abs(x - dom.lo), std::abs(dom.hi - x)})
        if (b > eps.front() && b < rho_max) pts.push_back(b);
    pts.push_back(rho_max);
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    std::vector<PVResult> res(dim);
    std::vector<double> running(dim, 0.0), quad_err(dim, 0.0);
    double scale = 0.0;
    if (rho_max > eps.front()) {
        auto far = integrate_vector(bracket, dim, pts, shell_opt);
        for (std::size_t i = 0; i < dim; ++i) {
            running[i] = far.value[i];
            quad_err[i] = far.error[i];
            scale = std::max(scale, std::abs(far.value[i]));
        }
    }
    for (std::size_t i = 0; i < dim; ++i) res[i].truncated.push_back(running[i]);
    for (std::size_t j = 1; j < eps.size(); ++j) {
        const double ann[2] = {eps[j], eps[j - 1]};
        auto a = integrate_vector(bracket, dim, ann, shell_opt);
        for (std::size_t i = 0; i < dim; ++i) {
            running[i] += a.value[i];
            quad_err[i] += a.error[i];
            res[i].truncated.push_back(running[i]);
            scale = std::max(scale, std::abs(running[i]));
        }
    }
    // Below the last cut-off the bracket is bounded up to a logarithm, so it
    // is integrated directly down to a small radius and closed with a
    // two-term A + B log(rho) model.
    const double eps_last = eps.back();
    const double delta = std::min(1e-6, 0.01 * eps_last);
    std::vector<double> core_pts{delta};
    while (core_pts.back() * 10.0 < eps_last) core_pts.push_back(core_pts.back() * 10.0);
    core_pts.push_back(eps_last);
    IntegrationOptions core_opt = opt.integration;
    core_opt.throw_on_failure = false;
    core_opt.abs_tol = std::max(core_opt.abs_tol, opt.noise_floor * std::max(scale, 1.0));
    core_opt.max_panels = std::min(core_opt.max_panels, 400);
    const auto core = integrate_vector(bracket, dim, core_pts, core_opt);
    std::vector<double> b0(dim), b1(dim);
    bracket(delta, b0);
    bracket(0.1 * delta, b1);
    const std::size_t last = eps.size() - 1;
    for (std::size_t i = 0; i < dim; ++i) {
        auto& r = res[i];
        const auto& I = r.truncated;
        const double B = (b0[i] - b1[i]) / std::log(10.0);
        const double tip = delta * (b0[i] - B);
        r.value = I[last] + core.value[i] + tip;
        const double floor = std::max(opt.noise_floor * scale, 1e3 * kEps * scale);
        r.error = quad_err[i] + core.error[i] + std::abs(delta * B) + floor;
        // A clean principal value has differences shrinking roughly like eps.
        const double d1 = std::abs(I[last] - I[last - 1]);
        const double d0 = std::abs(I[last - 1] - I[last - 2]);
        const double noise = opt.noise_floor * std::max(scale, 1.0) + quad_err[i];
        r.cauchy = !(d1 > noise && d0 > noise && d1 >= 0.9 * d0);
    }
    for (std::size_t i = 0; i < dim; ++i)
        if (!res[i].cauchy)
            throw NumericalError("principal value: truncated integrals do not form a Cauchy sequence "
                                 "(kernel singularity is not of odd 1/(x-y) type)");
    return res;
}

PVResult principal_value_integrate(const KernelFunction& kernel, const Function& f, const DunklParameter& p, double x,
                                   const PVOptions& opt) {
    return principal_value_integrate_vector(
        [&](double xx, double yy, std::span<double> out) { out[0] = kernel(xx, yy); }, 1, f, p, x, opt)[0];
}

}  // namespace dunkl
