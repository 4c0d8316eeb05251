#include "dunkl/kernels.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "dunkl/special_functions.hpp"

namespace dunkl {

namespace {

void require_radius(double r, const char* what) {
    if (!(r > 0.0 && r < 1.0)) throw std::domain_error(std::string(what) + ": parameter must lie in (0, 1)");
}

// Variant for callers that carry 1 - r separately; r itself may round to 1.
void require_radius(double r, double omr, const char* what) {
    if (!(r > 0.0 && omr > 0.0 && r <= 1.0)) throw std::domain_error(std::string(what) + ": parameter must lie in (0, 1)");
}

void require_time(double t, const char* what) {
    if (!(t > 0.0) || !std::isfinite(t)) throw std::domain_error(std::string(what) + ": t must be positive");
}

// log r with r = 1 - omr, accurate at both ends.
double log_radius(double r, double omr) { return omr < 0.5 ? std::log1p(-omr) : std::log(r); }

// -(1/2)(1+r^2)/(1-r^2) (y^2+z^2) + 2r|yz|/(1-r^2) + log(scaled E_k(2ryz/(1-r^2)))
// written as a sum of squares so nothing cancels.
double mehler_exponent(const DunklParameter& p, double r, double omr, double y, double z) {
    const double one_m_r2 = omr * (1.0 + r);
    const double ay = std::abs(y), az = std::abs(z);
    const double d1 = (ay - az) + omr * az;  // |y| - r|z|
    const double d2 = (az - ay) + omr * ay;  // |z| - r|y|
    const double w = 2.0 * r * y * z / one_m_r2;
    return -(d1 * d1 + d2 * d2) / (2.0 * one_m_r2) + std::log(scaled_dunkl_kernel(p, w));
}

}  // namespace

double log_mehler_kernel(const DunklParameter& p, double r, double omr, double y, double z) {
    const double one_m_r2 = omr * (1.0 + r);
    return std::log(p.c_k()) - (p.k() + 0.5) * std::log(one_m_r2) + mehler_exponent(p, r, omr, y, z);
}

double mehler_kernel(const DunklParameter& p, double r, double omr, double y, double z) {
    require_radius(r, omr, "mehler_kernel");
    return std::exp(log_mehler_kernel(p, r, omr, y, z));
}

double mehler_kernel(const DunklParameter& p, double r, double y, double z) {
    require_radius(r, "mehler_kernel");
    return mehler_kernel(p, r, 1.0 - r, y, z);
}

double mehler_series(const DunklParameter& p, double r, double y, double z, int N) {
    if (!(r > 0.0 && r < 1.0)) throw std::domain_error("mehler_series: r must lie in (0, 1)");
    if (N < 0) throw std::invalid_argument("mehler_series: N must be nonnegative");
    const auto hy = dunkl_hermite_fn_all(p, N, y);
    const auto hz = dunkl_hermite_fn_all(p, N, z);
    double sum = 0.0;
    double rn = 1.0;
    for (int n = 0; n <= N; ++n) {
        sum += rn * hy[n] * hz[n];
        rn *= r;
    }
    return sum;
}

double heat_kernel(const DunklParameter& p, double t, double x, double y) {
    require_time(t, "heat_kernel");
    const double k = p.k();
    const double sh2 = std::sinh(2.0 * t);
    const double sh = std::sinh(t);
    const double d = std::abs(x) - std::abs(y);
    const double expo = -(2.0 * sh * sh * (x * x + y * y) + d * d) / (2.0 * sh2);
    return std::exp(std::log(p.c_k()) - (k + 0.5) * std::log(2.0 * sh2) + expo +
                    std::log(scaled_dunkl_kernel(p, x * y / sh2)));
}

double subordination_weight_L(double t, double r) {
    require_time(t, "subordination_weight_L");
    require_radius(r, "subordination_weight_L");
    const double lr = std::log(r);
    return t * std::exp(t * t / (2.0 * lr)) / (std::sqrt(2.0 * std::numbers::pi) * r * std::pow(-lr, 1.5));
}

namespace {

double subordination_weight_L(double t, double r, double omr) {
    const double lr = log_radius(r, omr);
    return t * std::exp(t * t / (2.0 * lr)) / (std::sqrt(2.0 * std::numbers::pi) * r * std::pow(-lr, 1.5));
}

KernelValue poisson_radius(const DunklParameter& p, double t, double x, double y, double rel_tol) {
    const double k = p.k();
    IntegrationOptions o;
    o.rel_tol = rel_tol;
    const auto r = unit_interval_integrate(
        [&](double r, double omr) {
            return subordination_weight_L(t, r, omr) * mehler_kernel(p, r, omr, x, y) * std::pow(r, k + 0.5);
        },
        {0.0, 0.0, Substitution::log_radius}, o);
    return {r.value, r.error};
}

KernelValue poisson_semigroup(const DunklParameter& p, double t, double x, double y, double rel_tol) {
    HalflineOptions h;
    h.integration.rel_tol = rel_tol;
    const double c = t / std::sqrt(4.0 * std::numbers::pi);
    const auto r = halfline_integrate(
        [&](double u) { return c * std::pow(u, -1.5) * std::exp(-t * t / (4.0 * u)) * heat_kernel(p, u, x, y); }, h);
    return {r.value, r.error};
}

}  // namespace

KernelValue poisson_kernel_eval(const DunklParameter& p, double t, double x, double y, const PoissonOptions& opt) {
    require_time(t, "poisson_kernel");
    const KernelValue primary = opt.path == PoissonPath::radius ? poisson_radius(p, t, x, y, opt.rel_tol)
                                                                : poisson_semigroup(p, t, x, y, opt.rel_tol);
    if (opt.cross_check) {
        const KernelValue other = opt.path == PoissonPath::radius ? poisson_semigroup(p, t, x, y, opt.rel_tol)
                                                                  : poisson_radius(p, t, x, y, opt.rel_tol);
        const double diff = std::abs(primary.value - other.value);
        if (diff > opt.disagreement_limit * std::max(std::abs(primary.value), 1e-300)) {
            std::ostringstream msg;
            msg << "poisson_kernel: evaluation paths disagree at (k,t,x,y)=(" << p.k() << "," << t << "," << x << ","
                << y << "): " << primary.value << " vs " << other.value;
            throw NumericalError(msg.str());
        }
    }
    return primary;
}

double poisson_kernel(const DunklParameter& p, double t, double x, double y, const PoissonOptions& opt) {
    return poisson_kernel_eval(p, t, x, y, opt).value;
}

double poisson_kernel_ladder(const DunklParameter& p, double t, double x, double y, int sign,
                             const KernelOptions& opt) {
    require_time(t, "poisson_kernel_ladder");
    if (sign != 1 && sign != -1) throw std::invalid_argument("poisson_kernel_ladder: sign must be +1 or -1");
    const double k = p.k();
    IntegrationOptions o;
    o.rel_tol = opt.rel_tol;
    // (T_x + x) U = 2r (y - r x) U / (1 - r^2),  (T_x - x) U = -2 (x - r y) U / (1 - r^2).
    return unit_interval_integrate(
               [&](double r, double omr) {
                   const double one_m_r2 = omr * (1.0 + r);
                   const double factor = sign > 0 ? 2.0 * r * ((y - x) + omr * x) / one_m_r2
                                                  : -2.0 * ((x - y) + omr * y) / one_m_r2;
                   return subordination_weight_L(t, r, omr) * factor * mehler_kernel(p, r, omr, x, y) *
                          std::pow(r, k + 0.5);
               },
               {0.0, 0.0, Substitution::log_radius}, o)
        .value;
}

double k_s_kernel(const DunklParameter& p, double s, double oms, double x, double y) {
    require_radius(s, oms, "k_s_kernel");
    const double k = p.k();
    const double one_m_s2 = oms * (1.0 + s);
    const double ax = std::abs(x), ay = std::abs(y);
    const double expo = -(s * s * (ax + ay) * (ax + ay) + (ax - ay) * (ax - ay)) / (4.0 * s);
    return std::exp(std::log(p.c_k()) + (k + 0.5) * std::log(one_m_s2 / (4.0 * s)) + expo +
                    std::log(scaled_dunkl_kernel(p, one_m_s2 * x * y / (2.0 * s))));
}

double k_s_kernel(const DunklParameter& p, double s, double x, double y) {
    require_radius(s, "k_s_kernel");
    return k_s_kernel(p, s, 1.0 - s, x, y); }

double k_s_dunkl_derivative(const DunklParameter& p, double s, double x, double y) {
    return -0.5 * (s * (x + y) + (x - y) / s) * k_s_kernel(p, s, x, y);
}

double beta_weight(const DunklParameter& p, double s) {
    require_radius(s, "beta_weight");
    const double k = p.k();
    return std::pow(1.0 - s, k - 0.5) * std::pow(s, -(k + 0.5)) / std::sqrt(std::log1p(2.0 * s / (1.0 - s)));
}

SingularitySpec hilbert_singularity(const DunklParameter& p) {
    return {-0.5, p.k() - 0.5, Substitution::hyperbolic};
}

HilbertParts hilbert_kernel_parts(const DunklParameter& p, double x, double y, const KernelOptions& opt) {
    if (std::abs(x - y) < kDiagonalExclusion)
        throw std::domain_error("hilbert_kernel: point lies within the diagonal exclusion radius");
    IntegrationOptions o;
    o.rel_tol = opt.rel_tol;
    const auto r = unit_interval_integrate_vector(
        [&](double s, double oms, std::span<double> out) {
            const double K = k_s_kernel(p, s, oms, x, y);
            const double w = 1.0 / (std::sqrt(std::log1p(2.0 * s / oms)) * oms * (1.0 + s));
            out[0] = -0.5 * (s * (x + y) + (x - y) / s) * K * w;
            out[1] = x * K * w;
        },
        2, hilbert_singularity(p), o);
    return {r.value[0], r.value[1], r.error[0], r.error[1]};
}

double hilbert_kernel(const DunklParameter& p, int sign, double x, double y, const KernelOptions& opt) {
    if (sign != 1 && sign != -1) throw std::invalid_argument("hilbert_kernel: sign must be +1 or -1");
    const HilbertParts h = hilbert_kernel_parts(p, x, y, opt);
    return std::sqrt(2.0 / std::numbers::pi) * (h.R1 + sign * h.R2);
}

double conjugate_weight_W1(const DunklParameter& p, double t, double r, double omr) {
    const double lr = log_radius(r, omr);
    const double one_m_r2 = omr * (1.0 + r);
    return std::sqrt(2.0 / std::numbers::pi) * p.c_k() * std::sqrt(one_m_r2 / -lr) * std::exp(t * t / (2.0 * lr)) *
           std::pow(r, p.k() + 0.5);
}

double conjugate_weight_Y(const DunklParameter& p, double t, double r, double omr) {
    const double lr = log_radius(r, omr);
    const double one_m_r2 = omr * (1.0 + r);
    return std::sqrt(2.0 / std::numbers::pi) * p.c_k() * std::sqrt(one_m_r2 / -lr) * std::exp(t * t / (2.0 * lr)) *
           std::pow(r, p.k() - 0.5);
}

namespace {

// e^{-(x^2+y^2)/2} times the r-integral; `down` selects the (y - r x), W_{1,k} form.
KernelValue conjugate_kernel(const DunklParameter& p, double t, double x, double y, bool down,
                             const KernelOptions& opt) {
    require_time(t, down ? "conjugate_kernel_Q" : "conjugate_kernel_M");
    const double k = p.k();
    IntegrationOptions o;
    o.rel_tol = opt.rel_tol;
    const auto r = unit_interval_integrate(
        [&](double r, double omr) {
            const double one_m_r2 = omr * (1.0 + r);
            // -(x^2+y^2)/2 - r^2 (x^2+y^2)/(1-r^2) + log E_k(2rx/(1-r^2), y)
            const double core = mehler_exponent(p, r, omr, x, y);
            const double lin = down ? (y - x) + omr * x : (x - y) + omr * y;
            const double w = down ? conjugate_weight_W1(p, t, r, omr) : conjugate_weight_Y(p, t, r, omr);
            return lin * std::exp(core - (k + 2.0) * std::log(one_m_r2)) * w;
        },
        {0.0, 0.0, Substitution::log_radius}, o);
    return {r.value, r.error};
}

}  // namespace

KernelValue conjugate_kernel_Q_eval(const DunklParameter& p, double t, double x, double y, const KernelOptions& opt) {
    return conjugate_kernel(p, t, x, y, true, opt);
}

KernelValue conjugate_kernel_M_eval(const DunklParameter& p, double t, double x, double y, const KernelOptions& opt) {
    return conjugate_kernel(p, t, x, y, false, opt);
}

double conjugate_kernel_Q(const DunklParameter& p, double t, double x, double y, const KernelOptions& opt) {
    return conjugate_kernel_Q_eval(p, t, x, y, opt).value;
}

double conjugate_kernel_M(const DunklParameter& p, double t, double x, double y, const KernelOptions& opt) {
    return conjugate_kernel_M_eval(p, t, x, y, opt).value;
}

}  // namespace dunkl
