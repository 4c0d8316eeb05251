// Closed-form and one-parameter-integral kernels: Mehler, heat, Poisson,
// the Hilbert kernels built on K_s, and the conjugate Poisson kernels.
#ifndef DUNKL_KERNELS_HPP
#define DUNKL_KERNELS_HPP

#include "dunkl/core.hpp"
#include "dunkl/quadrature.hpp"

namespace dunkl {

/// (x, y) together with the time or radius parameter of a kernel.
struct KernelPoint {
    double x = 0.0;
    double y = 0.0;
    double t = 0.0;
};

struct KernelOptions {
    double rel_tol = 1e-12;
};

/// U_k(r, y, z) in closed form, evaluated in log space.
double mehler_kernel(const DunklParameter& p, double r, double y, double z);
/// Same with 1 - r supplied separately (accurate as r -> 1).
double mehler_kernel(const DunklParameter& p, double r, double one_minus_r, double y, double z);
double log_mehler_kernel(const DunklParameter& p, double r, double one_minus_r, double y, double z);

/// Partial sum of r^n h_n(y) h_n(z) for n = 0..N.
double mehler_series(const DunklParameter& p, double r, double y, double z, int N);

/// P_k(t, x, y) = e^{-t(2k+1)} U_k(e^{-2t}, x, y).
double heat_kernel(const DunklParameter& p, double t, double x, double y);

enum class PoissonPath {
    radius,    // integral of L(t, r) U_k(r, x, y) r^{k+1/2} over r in (0, 1)
    semigroup  // subordinated heat kernel over u in (0, inf)
};

struct PoissonOptions {
    PoissonPath path = PoissonPath::radius;
    bool cross_check = false;  // evaluate both paths and raise if they disagree
    double disagreement_limit = 1e-7;
    double rel_tol = 1e-12;
};

struct KernelValue {
    double value = 0.0;
    double error = 0.0;
};

KernelValue poisson_kernel_eval(const DunklParameter& p, double t, double x, double y,
                                const PoissonOptions& opt = {});
double poisson_kernel(const DunklParameter& p, double t, double x, double y, const PoissonOptions& opt = {});

/// (T_{k,x} + sign x) A_k(t, x, y), differentiating under the r-integral.
double poisson_kernel_ladder(const DunklParameter& p, double t, double x, double y, int sign,
                             const KernelOptions& opt = {});

/// L(t, r) = t e^{t^2/(2 log r)} / (sqrt(2 pi) r (-log r)^{3/2}).
double subordination_weight_L(double t, double r);

/// K_s(x, y).
double k_s_kernel(const DunklParameter& p, double s, double x, double y);
double k_s_kernel(const DunklParameter& p, double s, double one_minus_s, double x, double y);
/// Closed form of T_{k,x} K_s(x, y) = -(s(x+y) + (x-y)/s) K_s(x, y) / 2.
double k_s_dunkl_derivative(const DunklParameter& p, double s, double x, double y);

/// beta(s) = (1-s)^{k-1/2} s^{-(k+1/2)} (log((1+s)/(1-s)))^{-1/2}.
double beta_weight(const DunklParameter& p, double s);

/// Endpoint behaviour of the s-integrands defining R_{k,1} and R_{k,2}.
SingularitySpec hilbert_singularity(const DunklParameter& p);

struct HilbertParts {
    double R1 = 0.0;
    double R2 = 0.0;
    double error1 = 0.0;
    double error2 = 0.0;
};

/// Diagonal exclusion radius of the Hilbert kernels.
inline constexpr double kDiagonalExclusion = 1e-8;

HilbertParts hilbert_kernel_parts(const DunklParameter& p, double x, double y, const KernelOptions& opt = {});
/// R_k^{+-}(x, y) = sqrt(2/pi) (R1 +- R2).
double hilbert_kernel(const DunklParameter& p, int sign, double x, double y, const KernelOptions& opt = {});

/// W_{1,k}(t, r) and Y_k(t, r).
double conjugate_weight_W1(const DunklParameter& p, double t, double r, double one_minus_r);
double conjugate_weight_Y(const DunklParameter& p, double t, double r, double one_minus_r);

KernelValue conjugate_kernel_Q_eval(const DunklParameter& p, double t, double x, double y,
                                    const KernelOptions& opt = {});
KernelValue conjugate_kernel_M_eval(const DunklParameter& p, double t, double x, double y,
                                    const KernelOptions& opt = {});
double conjugate_kernel_Q(const DunklParameter& p, double t, double x, double y, const KernelOptions& opt = {});
double conjugate_kernel_M(const DunklParameter& p, double t, double x, double y, const KernelOptions& opt = {});

}  // namespace dunkl

#endif
