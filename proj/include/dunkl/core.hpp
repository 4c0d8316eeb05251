// Shared value types: the multiplicity parameter, real functions with optional
// derivatives, and the error types raised by the numerical routines.
#ifndef DUNKL_CORE_HPP
#define DUNKL_CORE_HPP

#include <functional>
#include <optional>
#include <stdexcept>
#include <string>

namespace dunkl {

/// Raised when an iteration, series or quadrature fails to reach its target.
class NumericalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Multiplicity parameter k >= 0 together with its derived constants.
class DunklParameter {
public:
    explicit DunklParameter(double k);

    double k() const noexcept { return k_; }
    /// c_k = 1 / Gamma(k + 1/2).
    double c_k() const noexcept { return c_k_; }
    /// Total mass of e^{-x^2}|x|^{2k} dx, i.e. Gamma(k + 1/2).
    double mass() const noexcept { return mass_; }
    double log_mass() const noexcept { return log_mass_; }
    /// Eigenvalue 2n + 2k + 1 of -L_k on h_n^k.
    double lambda(int n) const noexcept { return 2.0 * n + 2.0 * k_ + 1.0; }

private:
    double k_;
    double c_k_;
    double mass_;
    double log_mass_;
};

struct Interval {
    double lo;
    double hi;
};

enum class DecayClass { gaussian, compact, generic };

/// A real function of one variable with optional analytic derivatives and
/// metadata the integrators use to pick a domain.
struct Function {
    std::function<double(double)> value;
    std::function<double(double)> d1;
    std::function<double(double)> d2;
    DecayClass decay = DecayClass::generic;
    std::optional<Interval> support;
    // Largest Hermite degree the function behaves like at infinity; sets the
    // truncation radius for Gaussian-class functions.
    int degree_hint = 0;
    std::string name;

    double operator()(double x) const { return value(x); }
};

Function make_function(std::function<double(double)> f, DecayClass decay = DecayClass::gaussian,
                       int degree_hint = 0, std::string name = {});

/// Truncation radius Y such that Gaussian-class functions of the given degree
/// are negligible (below ~1e-17 of their peak) outside [-Y, Y].
double truncation_radius(const DunklParameter& p, int degree);

}  // namespace dunkl

#endif
