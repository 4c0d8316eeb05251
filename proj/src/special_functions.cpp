#include "dunkl/special_functions.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

namespace dunkl {

namespace {

constexpr double kSeriesRelTol = 1e-17;
constexpr int kSeriesCap = 400;

void require_finite(double v, double x) {
    if (!std::isfinite(v))
        throw NumericalError("function not evaluable at x = " + std::to_string(x));
}

// e^{-2u} M(a, b, 2u) by the positive-term Kummer series.
double scaled_kummer_series(double a, double b, double u) {
    const double z = 2.0 * u;
    double term = 1.0;
    double sum = 1.0;
    for (int m = 0; m < kSeriesCap; ++m) {
        term *= (a + m) / (b + m) * z / (m + 1);
        sum += term;
        if (term < kSeriesRelTol * sum) return sum * std::exp(-z);
    }
    throw NumericalError("Kummer series did not converge within 400 terms");
}

// Large-argument expansion of e^{-2u} M(a, b, 2u).
double scaled_kummer_asymptotic(double a, double b, double u) {
    const double z = 2.0 * u;
    double term = 1.0;
    double sum = 1.0;
    double previous = std::numeric_limits<double>::infinity();
    for (int j = 0; j < 200; ++j) {
        term *= (b - a + j) * (1.0 - a + j) / ((j + 1) * z);
        const double mag = std::abs(term);
        if (mag <= kSeriesRelTol * std::abs(sum)) {
            sum += term;
            return std::exp(std::lgamma(b) - std::lgamma(a) + (a - b) * std::log(z)) * sum;
        }
        if (mag > previous) break;
        previous = mag;
        sum += term;
    }
    throw NumericalError("asymptotic Kummer expansion reached its optimal truncation too early");
}

double laguerre_or_zero(int n, double alpha, double x) {
    return n < 0 ? 0.0 : laguerre(n, alpha, x);
}

// Normalisations of the even and odd Laguerre representations.
double even_norm(const DunklParameter& p, int m) {
    const double s = std::exp(0.5 * (std::lgamma(m + 1.0) - std::lgamma(m + p.k() + 0.5)));
    return (m % 2 == 0) ? s : -s;
}

double odd_norm(const DunklParameter& p, int m) {
    const double s = std::exp(0.5 * (std::lgamma(m + 1.0) - std::lgamma(m + p.k() + 1.5)));
    return (m % 2 == 0) ? s : -s;
}

// H_n^k and its first two derivatives.
void hermite_poly_derivs(const DunklParameter& p, int n, double x, double& h, double& h1, double& h2) {
    const double k = p.k();
    const double y = x * x;
    const int m = n / 2;
    if (n % 2 == 0) {
        const double c = even_norm(p, m);
        h = c * laguerre(m, k - 0.5, y);
        h1 = -2.0 * x * c * laguerre_or_zero(m - 1, k + 0.5, y);
        h2 = c * (-2.0 * laguerre_or_zero(m - 1, k + 0.5, y) + 4.0 * y * laguerre_or_zero(m - 2, k + 1.5, y));
    } else {
        const double c = odd_norm(p, m);
        const double b = k + 0.5;
        h = c * x * laguerre(m, b, y);
        h1 = c * (laguerre(m, b, y) - 2.0 * y * laguerre_or_zero(m - 1, b + 1.0, y));
        h2 = c * (-6.0 * x * laguerre_or_zero(m - 1, b + 1.0, y) +
                  4.0 * x * y * laguerre_or_zero(m - 2, b + 2.0, y));
    }
}

struct Jet {
    double f;
    double d1;
    double d2;
};

double central_first(const std::function<double(double)>& f, double x, double h) {
    return (-f(x + 2 * h) + 8 * f(x + h) - 8 * f(x - h) + f(x - 2 * h)) / (12 * h);
}

double central_second(const std::function<double(double)>& f, double x, double h) {
    return (-f(x + 2 * h) + 16 * f(x + h) - 30 * f(x) + 16 * f(x - h) - f(x - 2 * h)) / (12 * h * h);
}

double first_step(double x, const DifferentiationOptions& opt) {
    const double rel = opt.step > 0 ? opt.step : std::pow(std::numeric_limits<double>::epsilon(), 0.2);
    return rel * std::max(1.0, std::abs(x));
}

double second_step(double x, const DifferentiationOptions& opt) {
    const double rel = opt.step > 0 ? opt.step : std::pow(std::numeric_limits<double>::epsilon(), 1.0 / 6.0);
    return rel * std::max(1.0, std::abs(x));
}

Jet jet(const Function& f, double x, const DifferentiationOptions& opt) {
    Jet j{};
    j.f = f.value(x);
    require_finite(j.f, x);
    j.d1 = f.d1 ? f.d1(x) : central_first(f.value, x, first_step(x, opt));
    j.d2 = f.d2 ? f.d2(x) : central_second(f.value, x, second_step(x, opt));
    require_finite(j.d1, x);
    require_finite(j.d2, x);
    return j;
}

}  // namespace

DunklParameter::DunklParameter(double k) : k_(k) {
    if (!(k >= 0.0) || !std::isfinite(k)) throw std::invalid_argument("k must be nonnegative");
    log_mass_ = std::lgamma(k + 0.5);
    mass_ = std::exp(log_mass_);
    c_k_ = 1.0 / mass_;
}

Function make_function(std::function<double(double)> f, DecayClass decay, int degree_hint, std::string name) {
    Function out;
    out.value = std::move(f);
    out.decay = decay;
    out.degree_hint = degree_hint;
    out.name = std::move(name);
    return out;
}

double truncation_radius(const DunklParameter& p, int degree) {
    return std::max(9.0, std::sqrt(p.lambda(std::max(degree, 0))) + 7.5);
}

BasisIndex::BasisIndex(int n) : n_(n), null_(false) {
    if (n < 0) throw std::invalid_argument("basis index must be nonnegative; use BasisIndex::null()");
}

int BasisIndex::n() const {
    if (null_) throw std::logic_error("null basis element has no degree");
    return n_;
}

BasisIndex BasisIndex::lowered() const {
    if (null_ || n_ == 0) return null();
    return BasisIndex(n_ - 1);
}

BasisIndex BasisIndex::raised() const {
    return null_ ? BasisIndex(0) : BasisIndex(n_ + 1);
}

double laguerre(int n, double alpha, double x) {
    if (n < 0) throw std::invalid_argument("laguerre: degree must be nonnegative");
    if (!(alpha >= -0.5)) throw std::domain_error("laguerre: index alpha must be >= -1/2");
    double prev = 1.0;
    if (n == 0) return prev;
    double cur = 1.0 + alpha - x;
    for (int m = 1; m < n; ++m) {
        const double next = ((2.0 * m + 1.0 + alpha - x) * cur - (m + alpha) * prev) / (m + 1.0);
        prev = cur;
        cur = next;
    }
    return cur;
}

double normalized_modified_bessel(double alpha, double u) {
    if (!(alpha >= -0.5)) throw std::domain_error("normalized_modified_bessel: alpha must be >= -1/2");
    const double q = 0.25 * u * u;
    double term = 1.0;
    double sum = 1.0;
    if (q == 0.0) return 1.0;
    for (int m = 1; m <= kSeriesCap; ++m) {
        term *= q / (m * (m + alpha));
        sum += term;
        if (term < kSeriesRelTol * sum) return sum;
    }
    throw NumericalError("Bessel series did not converge within 400 terms");
}

double scaled_dunkl_kernel(const DunklParameter& p, double z) {
    const double k = p.k();
    if (k == 0.0) return z >= 0.0 ? 1.0 : std::exp(2.0 * z);
    const double u = std::abs(z);
    const double u_asym = std::min(40.0 + 2.0 * k * k, 300.0);
    if (u <= u_asym) {
        if (z >= 0.0) {
            return std::exp(-u) * (normalized_modified_bessel(k - 0.5, u) +
                                   u / (2.0 * k + 1.0) * normalized_modified_bessel(k + 0.5, u));
        }
        return scaled_kummer_series(k, 2.0 * k + 1.0, u);
    }
    return scaled_kummer_asymptotic(z > 0.0 ? k + 1.0 : k, 2.0 * k + 1.0, u);
}

double log_dunkl_kernel(const DunklParameter& p, double x, double y) {
    const double z = x * y;
    return std::abs(z) + std::log(scaled_dunkl_kernel(p, z));
}

double dunkl_kernel(const DunklParameter& p, double x, double y) {
    const double z = x * y;
    if (std::abs(z) <= 30.0 && z >= 0.0) {
        const double k = p.k();
        return normalized_modified_bessel(k - 0.5, z) + z / (2.0 * k + 1.0) * normalized_modified_bessel(k + 0.5, z);
    }
    return std::exp(std::abs(z)) * scaled_dunkl_kernel(p, z);
}

double dunkl_hermite_poly(const DunklParameter& p, int n, double x) {
    if (n < 0) throw std::invalid_argument("dunkl_hermite_poly: degree must be nonnegative");
    const int m = n / 2;
    if (n % 2 == 0) return even_norm(p, m) * laguerre(m, p.k() - 0.5, x * x);
    return odd_norm(p, m) * x * laguerre(m, p.k() + 0.5, x * x);
}

void dunkl_hermite_fn_all(const DunklParameter& p, double x, std::span<double> out) {
    if (out.empty()) return;
    const double k = p.k();
    // Values are carried as v * exp(log_scale) to survive underflow of e^{-x^2/2}.
    double log_scale = -0.5 * x * x - 0.5 * p.log_mass();
    double prev = 0.0;
    double cur = 1.0;
    auto a = [k](std::size_t n) { return std::sqrt((n % 2 == 0 ? n : n + 2.0 * k) / 2.0); };
    out[0] = std::exp(log_scale);
    for (std::size_t n = 0; n + 1 < out.size(); ++n) {
        const double next = (x * cur - (n == 0 ? 0.0 : a(n) * prev)) / a(n + 1);
        prev = cur;
        cur = next;
        if (std::abs(cur) > 1e150) {
            prev *= 1e-150;
            cur *= 1e-150;
            log_scale += 150.0 * std::numbers::ln10;
        }
        out[n + 1] = cur * std::exp(log_scale);
    }
}

std::vector<double> dunkl_hermite_fn_all(const DunklParameter& p, int N, double x) {
    if (N < 0) throw std::invalid_argument("dunkl_hermite_fn_all: N must be nonnegative");
    std::vector<double> out(static_cast<std::size_t>(N) + 1);
    dunkl_hermite_fn_all(p, x, out);
    return out;
}

double dunkl_hermite_fn(const DunklParameter& p, int n, double x) {
    if (n < 0) throw std::invalid_argument("dunkl_hermite_fn: degree must be nonnegative");
    if (n <= 40) return std::exp(-0.5 * x * x) * dunkl_hermite_poly(p, n, x);
    return dunkl_hermite_fn_all(p, n, x)[static_cast<std::size_t>(n)];
}

double dunkl_hermite_fn(const DunklParameter& p, BasisIndex n, double x) {
    return n.is_null() ? 0.0 : dunkl_hermite_fn(p, n.n(), x);
}

double theta(int n, const DunklParameter& p) {
    if (n < 0) throw std::invalid_argument("theta: n must be nonnegative");
    return n % 2 == 0 ? std::sqrt(2.0 * n) : std::sqrt(2.0 * n + 4.0 * p.k());
}

Function basis_function(const DunklParameter& p, int n) {
    if (n < 0) throw std::invalid_argument("basis_function: degree must be nonnegative");
    Function f;
    f.value = [p, n](double x) { return dunkl_hermite_fn(p, n, x); };
    f.d1 = [p, n](double x) {
        double h, h1, h2;
        hermite_poly_derivs(p, n, x, h, h1, h2);
        return std::exp(-0.5 * x * x) * (h1 - x * h);
    };
    f.d2 = [p, n](double x) {
        double h, h1, h2;
        hermite_poly_derivs(p, n, x, h, h1, h2);
        return std::exp(-0.5 * x * x) * (h2 - 2.0 * x * h1 + (x * x - 1.0) * h);
    };
    f.decay = DecayClass::gaussian;
    f.degree_hint = n;
    f.name = "h" + std::to_string(n);
    return f;
}

double derivative(const Function& f, double x, const DifferentiationOptions& opt) {
    const double d = f.d1 ? f.d1(x) : central_first(f.value, x, first_step(x, opt));
    require_finite(d, x);
    return d;
}

double dunkl_apply(const DunklParameter& p, const Function& f, double x, const DifferentiationOptions& opt) {
    const double k = p.k();
    const double dx = derivative(f, x, opt);
    if (k == 0.0) return dx;
    if (std::abs(x) < opt.small_x) {
        // (f(x) - f(-x)) / x = f'(x) + f'(-x) + O(x^2)
        return dx + k * (dx + derivative(f, -x, opt));
    }
    const double fp = f.value(x);
    const double fm = f.value(-x);
    require_finite(fp, x);
    require_finite(fm, -x);
    return dx + k * (fp - fm) / x;
}

double dunkl_hermite_operator_apply(const DunklParameter& p, const Function& f, double x,
                                    const DifferentiationOptions& opt) {
    const double k = p.k();
    const Jet a = jet(f, x, opt);
    if (k == 0.0) return a.d2 - x * x * a.f;
    const Jet b = jet(f, -x, opt);
    // Split into even and odd parts: fe = (f(x) + f(-x))/2, fo = (f(x) - f(-x))/2.
    const double fo = 0.5 * (a.f - b.f);
    const double fe1 = 0.5 * (a.d1 - b.d1);
    const double fo1 = 0.5 * (a.d1 + b.d1);
    const double fe2 = 0.5 * (a.d2 + b.d2);
    const double fo2 = 0.5 * (a.d2 - b.d2);
    const double ax = std::abs(x);
    const double even_part = fe2 + 2.0 * k * (ax < opt.small_x ? fe2 : fe1 / x);
    const double odd_part = fo2 + 2.0 * k * (ax < 1e-3 ? fo2 / 3.0 : (x * fo1 - fo) / (x * x));
    return even_part + odd_part - x * x * a.f;
}

}  // namespace dunkl
