// Scalar special functions for the rank-one Dunkl-Hermite setting and the
// pointwise Dunkl operators.
#ifndef DUNKL_SPECIAL_FUNCTIONS_HPP
#define DUNKL_SPECIAL_FUNCTIONS_HPP

#include <span>
#include <vector>

#include "dunkl/core.hpp"

namespace dunkl {

/// Degree index of h_n^k. The null element stands for h_{-1}^k = 0.
class BasisIndex {
public:
    explicit BasisIndex(int n);
    static BasisIndex null() noexcept { return BasisIndex(); }

    bool is_null() const noexcept { return null_; }
    int n() const;
    /// Index one lower; the null element when n == 0.
    BasisIndex lowered() const;
    BasisIndex raised() const;

    friend bool operator==(const BasisIndex&, const BasisIndex&) = default;

private:
    BasisIndex() = default;
    int n_ = 0;
    bool null_ = true;
};

/// Laguerre polynomial L_n^alpha(x) by the three-term recurrence.
double laguerre(int n, double alpha, double x);

/// j_alpha(iu) = Gamma(alpha+1) sum (u/2)^{2m} / (m! Gamma(m+alpha+1)).
double normalized_modified_bessel(double alpha, double u);

/// Dunkl kernel E_k(x, y); depends on the product xy only.
double dunkl_kernel(const DunklParameter& p, double x, double y);

/// e^{-|z|} E_k(z) where E_k(z) = E_k(z, 1). Bounded by 1 and free of overflow.
double scaled_dunkl_kernel(const DunklParameter& p, double z);

/// log E_k(x, y).
double log_dunkl_kernel(const DunklParameter& p, double x, double y);

/// Generalised Hermite polynomial H_n^k(x) from the Laguerre representation.
double dunkl_hermite_poly(const DunklParameter& p, int n, double x);

/// h_n^k(x) = e^{-x^2/2} H_n^k(x).
double dunkl_hermite_fn(const DunklParameter& p, int n, double x);
double dunkl_hermite_fn(const DunklParameter& p, BasisIndex n, double x);

/// Fills out[0..N] with h_0^k(x), ..., h_N^k(x) using the orthonormal
/// three-term recurrence (stable for large N).
void dunkl_hermite_fn_all(const DunklParameter& p, double x, std::span<double> out);
std::vector<double> dunkl_hermite_fn_all(const DunklParameter& p, int N, double x);

/// Ladder coefficient: sqrt(2n) for even n, sqrt(2n + 4k) for odd n.
double theta(int n, const DunklParameter& p);

/// h_n^k as a Function with analytic first and second derivatives.
Function basis_function(const DunklParameter& p, int n);

/// Step and threshold policy for the numerical Dunkl operator.
struct DifferentiationOptions {
    // Below this |x| the limit form (1 + 2k) f'(0) replaces the difference quotient.
    double small_x = 1e-6;
    // Relative step of the fourth-order central difference; 0 selects eps^{1/5}.
    double step = 0.0;
};

/// First derivative: analytic if supplied, otherwise a fourth-order central difference.
double derivative(const Function& f, double x, const DifferentiationOptions& opt = {});

/// T_k f(x) = f'(x) + k (f(x) - f(-x)) / x, with (1 + 2k) f'(0) near x = 0.
double dunkl_apply(const DunklParameter& p, const Function& f, double x,
                   const DifferentiationOptions& opt = {});

/// L_k f(x) = T_k(T_k f)(x) - x^2 f(x).
double dunkl_hermite_operator_apply(const DunklParameter& p, const Function& f, double x,
                                    const DifferentiationOptions& opt = {});

}  // namespace dunkl

#endif
