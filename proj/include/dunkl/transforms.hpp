// The operators in integral-kernel form next to their spectral realisations,
// weighted L^p norms, PDE residuals and the bound and growth probes.
#ifndef DUNKL_TRANSFORMS_HPP
#define DUNKL_TRANSFORMS_HPP

#include <utility>

#include "dunkl/core.hpp"
#include "dunkl/kernels.hpp"
#include "dunkl/quadrature.hpp"
#include "dunkl/special_functions.hpp"
#include "dunkl/spectral.hpp"

namespace dunkl {

enum class EvalPath { spectral, kernel };
enum class HilbertMethod { spectral, pv };

struct TransformOptions {
    int N = 64;  // truncation degree of the spectral path
    AnalysisOptions analysis{};
    IntegrationOptions integration{0.0, 1e-12, 8000, true};
    KernelOptions kernel{};
    PVOptions pv{};
    DifferentiationOptions differentiation{};
    double disagreement_limit = 1e-5;
};

/// G_k(f)(t, x).
double heat_apply(const Function& f, const DunklParameter& p, double t, double x, EvalPath path,
                  const TransformOptions& opt = {});
/// F_k(f)(t, x).
double poisson_apply(const Function& f, const DunklParameter& p, double t, double x, EvalPath path,
                     const TransformOptions& opt = {});
/// H_k^{+-} f(x).
double hilbert_apply(const Function& f, const DunklParameter& p, int sign, double x, HilbertMethod method,
                     const TransformOptions& opt = {});
/// Both H_k^+ f(x) and H_k^- f(x) by the principal-value form, sharing kernel evaluations.
std::pair<PVResult, PVResult> hilbert_pv_pair(const Function& f, const DunklParameter& p, double x,
                                              const TransformOptions& opt = {});
/// f_k^{+-}(t, x); the kernel path integrates Q_k (+) or M_k (-).
double conjugate_apply(const Function& f, const DunklParameter& p, double t, int sign, double x, EvalPath path,
                       const TransformOptions& opt = {});

struct PathComparison {
    double spectral = 0.0;
    double kernel = 0.0;
    double disagreement = 0.0;
};

/// Both paths; throws NumericalError when they differ by more than opt.disagreement_limit.
PathComparison heat_compare(const Function& f, const DunklParameter& p, double t, double x,
                            const TransformOptions& opt = {});
PathComparison poisson_compare(const Function& f, const DunklParameter& p, double t, double x,
                               const TransformOptions& opt = {});
PathComparison hilbert_compare(const Function& f, const DunklParameter& p, int sign, double x,
                               const TransformOptions& opt = {});
PathComparison conjugate_compare(const Function& f, const DunklParameter& p, double t, int sign, double x,
                                 const TransformOptions& opt = {});

/// |(L_{k,x} - d/dt) G_k(f)(t, x)| with d/dt exact and L_k numerical.
double heat_pde_residual(const SpectralCoefficients& c, double t, double x, const DifferentiationOptions& d = {});
double heat_pde_residual(const Function& f, const DunklParameter& p, double t, double x,
                         const TransformOptions& opt = {});
/// |(L_{k,x} + d^2/dt^2) F_k(f)(t, x)|.
double poisson_pde_residual(const SpectralCoefficients& c, double t, double x, const DifferentiationOptions& d = {});
double poisson_pde_residual(const Function& f, const DunklParameter& p, double t, double x,
                            const TransformOptions& opt = {});

struct SystemResidual {
    double r36 = 0.0;  // |(L + d^2/dt^2) f^{+-} -+ 2 f^{+-}|
    double r37 = 0.0;  // |(T +- x) F +- d/dt f^{+-}|
};

SystemResidual conjugate_system_residual(const SpectralCoefficients& c, double t, double x, int sign,
                                         const DifferentiationOptions& d = {});
SystemResidual conjugate_system_residual(const Function& f, const DunklParameter& p, double t, double x, int sign,
                                         const TransformOptions& opt = {});

struct NormOptions {
    IntegrationOptions integration{0.0, 1e-12, 20000, true};
    // Sampling step for sign changes and maxima; 0 picks one from the degree hint.
    double sample_step = 0.0;
};

/// ||f||_{k,p}; exponent = +infinity gives the sup norm.
double lp_norm(const Function& f, const DunklParameter& p, double exponent, const NormOptions& opt = {});
double sup_norm(const Function& f, const DunklParameter& p, const NormOptions& opt = {});

/// Growth exponent of ||h_{2n}^k||_{k,p} in n for 1 <= p <= 4 (two branches
/// split at k(p-2) = 1), or of the sup norm for p = infinity.
double expected_growth_exponent(const DunklParameter& p, double exponent);

/// Slope of log ||h_{2n}^k||_{k,p} against log n for integer n in [n_lo, n_hi].
SlopeFit norm_growth_fit(const DunklParameter& p, double exponent, int n_lo, int n_hi,
                         const NormOptions& opt = {});

struct DualityResult {
    double spectral = 0.0;  // <H f, g> by Parseval
    double kernel = 0.0;    // double integral of R f g
    double residual = 0.0;  // |spectral - kernel|
    double adjoint = 0.0;   // <f, H^* g> by Parseval with the adjoint formula
    int degree = 0;         // truncation used on the spectral side
};

struct DualityOptions {
    int min_degree = 512;
    int max_degree = 4096;
    double spectral_tol = 1e-10;
    double inner_rel_tol = 1e-9;
    double outer_rel_tol = 1e-8;
    double kernel_rel_tol = 1e-9;
};

/// <H^{+-} f, g> by Parseval against the double integral of R^{+-} f g.
/// Evaluates both signs; index 0 is +, index 1 is -.
std::pair<DualityResult, DualityResult> duality_check(const Function& f, const Function& g, const DunklParameter& p,
                                                      const DualityOptions& opt = {});

}  // namespace dunkl

#endif
