// Integration machinery: generalised Gauss-Hermite rules for e^{-x^2}|x|^{2k},
// globally adaptive Gauss-Kronrod panels on intervals, (0,1) and (0,inf), and
// principal-value integrals with extrapolation to a vanishing cut-off.
#ifndef DUNKL_QUADRATURE_HPP
#define DUNKL_QUADRATURE_HPP

#include <filesystem>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "dunkl/core.hpp"

namespace dunkl {

struct IntegrationOptions {
    double abs_tol = 0.0;
    double rel_tol = 1e-12;  // relative to the integral of |f|
    int max_panels = 4000;
    bool throw_on_failure = true;
};

struct IntegrationResult {
    double value = 0.0;
    double error = 0.0;
    int evaluations = 0;
    bool converged = true;
};

struct VectorIntegrationResult {
    std::vector<double> value;
    std::vector<double> error;
    int evaluations = 0;
    bool converged = true;
};

using ScalarIntegrand = std::function<double(double)>;
/// Writes dim integrand components at x into out.
using VectorIntegrand = std::function<void(double x, std::span<double> out)>;

/// Adaptive G7-K15 over [a, b].
IntegrationResult integrate(const ScalarIntegrand& f, double a, double b, const IntegrationOptions& opt = {});
/// Adaptive G7-K15 over [points.front(), points.back()] split at every interior point.
IntegrationResult integrate(const ScalarIntegrand& f, std::span<const double> points,
                            const IntegrationOptions& opt = {});
/// Vector-valued version: all components share nodes; the tolerance is
/// measured against the largest component's integral of |f_i|.
VectorIntegrationResult integrate_vector(const VectorIntegrand& f, std::size_t dim, std::span<const double> points,
                                         const IntegrationOptions& opt = {});

// ---------------------------------------------------------------------------
// Half line (0, inf)

struct HalflineOptions {
    // Search limits for v = log u.
    double v_min = -120.0;
    double v_max = 40.0;
    double scan_step = 1.0;
    // Parts of the window where |g(u) u| stays below this fraction of its peak are dropped.
    double peak_ratio = 1e-17;
    IntegrationOptions integration{};
};

/// Integral of g over (0, inf) via u = e^v on a window found by scanning
/// outward until the integrand is negligible on both sides.
IntegrationResult halfline_integrate(const ScalarIntegrand& g, const HalflineOptions& opt = {});
VectorIntegrationResult halfline_integrate_vector(const VectorIntegrand& g, std::size_t dim,
                                                  const HalflineOptions& opt = {});

// ---------------------------------------------------------------------------
// Unit interval (0, 1)

enum class Substitution {
    none,
    square,      // s = sigma^2
    log_radius,  // r = e^{-2u}, u in (0, inf)
    hyperbolic,  // s = tanh u, u in (0, inf)
};

/// Endpoint behaviour g(s) ~ s^a near 0 and (1-s)^b near 1.
struct SingularitySpec {
    double left_exponent = 0.0;
    double right_exponent = 0.0;
    Substitution transform = Substitution::none;
};

/// Integrand on (0,1); receives s and 1 - s computed without cancellation.
using UnitIntegrand = std::function<double(double s, double one_minus_s)>;
using UnitVectorIntegrand = std::function<void(double s, double one_minus_s, std::span<double> out)>;

IntegrationOptions unit_interval_defaults();

IntegrationResult unit_interval_integrate(const UnitIntegrand& g, const SingularitySpec& spec,
                                          const IntegrationOptions& opt = unit_interval_defaults());
VectorIntegrationResult unit_interval_integrate_vector(const UnitVectorIntegrand& g, std::size_t dim,
                                                       const SingularitySpec& spec,
                                                       const IntegrationOptions& opt = unit_interval_defaults());

// ---------------------------------------------------------------------------
// Generalised Gauss-Hermite rules

/// Monic three-term recurrence for e^{-x^2}|x|^{2k}: beta[n-1] holds beta_n.
struct RecurrenceCoefficients {
    double k = 0.0;
    double beta0 = 0.0;
    std::vector<double> beta;
};

RecurrenceCoefficients generalized_hermite_recurrence(const DunklParameter& p, int N);

enum class RuleKind { gauss_generalized_hermite, adaptive_panel, pv_truncated };

struct QuadratureRule {
    std::vector<double> nodes;
    std::vector<double> weights;
    RuleKind kind = RuleKind::gauss_generalized_hermite;
    int order = 0;
    double k = 0.0;
};

/// N-point Gauss rule: nodes are Jacobi-matrix eigenvalues.
QuadratureRule gauss_rule(const RecurrenceCoefficients& coeffs, int N);
QuadratureRule gauss_rule(const DunklParameter& p, int N);

/// Default Gauss order for products of basis elements up to degree n_max.
int default_gauss_order(int n_max);

void save_rule_csv(const QuadratureRule& rule, const std::filesystem::path& path);
QuadratureRule load_rule_csv(const std::filesystem::path& path);

enum class MeasureScheme { gauss, adaptive };

struct MeasureOptions {
    int gauss_order = 0;  // 0 selects default_gauss_order(max(degree_hint, 20))
    IntegrationOptions integration{};
};

/// Integral of f(x)|x|^{2k} dx. The Gauss path evaluates f(x) e^{x^2} at the
/// nodes and needs a Gaussian-class f; the adaptive path needs a declared support
/// or Gaussian decay (truncated at truncation_radius).
IntegrationResult integrate_measure(const Function& f, const DunklParameter& p, MeasureScheme scheme,
                                    const MeasureOptions& opt = {});

/// Integration domain used for f by the adaptive schemes.
Interval integration_domain(const Function& f, const DunklParameter& p);

// ---------------------------------------------------------------------------
// Principal values

struct PVOptions {
    std::vector<double> eps_schedule = default_eps_schedule();
    IntegrationOptions integration{};
    // Relative size of the successive-difference noise below which the
    // Cauchy test is not applied.
    double noise_floor = 1e-11;

    static std::vector<double> default_eps_schedule();
};

struct PVResult {
    double value = 0.0;
    double error = 0.0;
    std::vector<double> truncated;  // I(eps_j)
    bool cauchy = true;
};

using KernelFunction = std::function<double(double x, double y)>;
using VectorKernelFunction = std::function<void(double x, double y, std::span<double> out)>;

/// lim_{eps->0} of the integral of f(y) K(x,y) |y|^{2k} over |x - y| > eps.
PVResult principal_value_integrate(const KernelFunction& kernel, const Function& f, const DunklParameter& p,
                                   double x, const PVOptions& opt = {});
/// Several kernels sharing truncations and nodes.
std::vector<PVResult> principal_value_integrate_vector(const VectorKernelFunction& kernel, std::size_t dim,
                                                       const Function& f, const DunklParameter& p, double x,
                                                       const PVOptions& opt = {});

}  // namespace dunkl

#endif
