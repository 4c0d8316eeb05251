// Finite Dunkl-Hermite expansions and the diagonal and shift multipliers that
// realise the heat, Poisson, Hilbert and conjugate Poisson operators.
#ifndef DUNKL_SPECTRAL_HPP
#define DUNKL_SPECTRAL_HPP

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "dunkl/core.hpp"
#include "dunkl/quadrature.hpp"

namespace dunkl {

/// Coefficients a_0..a_N of sum a_n h_n^k.
struct SpectralCoefficients {
    DunklParameter p{0.0};
    std::vector<double> a;

    SpectralCoefficients() = default;
    SpectralCoefficients(DunklParameter param, std::vector<double> coeffs);

    int degree() const noexcept { return static_cast<int>(a.size()) - 1; }
    /// Unit vector e_n of the given length.
    static SpectralCoefficients unit(const DunklParameter& p, int n, int length);
};

/// Samples of a function on an increasing grid, interpolated by a natural cubic spline.
struct SampledFunction {
    std::vector<double> grid;
    std::vector<double> values;
    DecayClass decay_class = DecayClass::compact;
    std::optional<Interval> support;

    SampledFunction(std::vector<double> grid, std::vector<double> values, DecayClass decay = DecayClass::compact,
                    std::optional<Interval> support = std::nullopt);
    Function as_function() const;

private:
    std::vector<double> second_;
};

struct AnalysisOptions {
    MeasureScheme scheme = MeasureScheme::adaptive;
    int gauss_order = 0;  // 0 selects default_gauss_order(N)
    IntegrationOptions integration{0.0, 1e-13, 20000, true};
};

struct Analysis {
    SpectralCoefficients coeffs;
    // sum_{n > N-8} a_n^2 / sum a_n^2
    double tail_energy = 0.0;
    double error = 0.0;
};

Analysis analyze(const Function& f, const DunklParameter& p, int N, const AnalysisOptions& opt = {});
Analysis analyze(const SampledFunction& f, const DunklParameter& p, int N, const AnalysisOptions& opt = {});

double synthesize(const SpectralCoefficients& c, double x);
/// The synthesised function, Gaussian class with degree hint N.
Function as_function(const SpectralCoefficients& c);

double inner_product(const SpectralCoefficients& a, const SpectralCoefficients& b);
double l2_norm(const SpectralCoefficients& c);

SpectralCoefficients heat_multiplier(const SpectralCoefficients& c, double t);
SpectralCoefficients poisson_multiplier(const SpectralCoefficients& c, double t);
/// b_{n-1} = theta(n) a_n / sqrt(2n+2k+1); degree N -> N-1 (a zero vector for N = 0).
SpectralCoefficients hilbert_plus(const SpectralCoefficients& c);
/// b_{n+1} = -theta(n+1) a_n / sqrt(2n+2k+1); degree N -> N+1.
SpectralCoefficients hilbert_minus(const SpectralCoefficients& c);
/// Sign +: hilbert_plus after the Poisson multiplier. Sign -: the up-shift with
/// weight +theta(n+1)/sqrt(2n+2k+1) after the Poisson multiplier, which equals
/// -hilbert_minus of the Poisson integral.
SpectralCoefficients conjugate_multiplier(const SpectralCoefficients& c, double t, int sign);
/// a_n -> (2n+2k+1)^power a_n.
SpectralCoefficients number_multiplier(const SpectralCoefficients& c, double power);

/// m-th t-derivative of the heat and Poisson multipliers at t.
SpectralCoefficients heat_multiplier_derivative(const SpectralCoefficients& c, double t, int m);
SpectralCoefficients poisson_multiplier_derivative(const SpectralCoefficients& c, double t, int m);
/// m-th t-derivative of conjugate_multiplier.
SpectralCoefficients conjugate_multiplier_derivative(const SpectralCoefficients& c, double t, int sign, int m);

/// Down-shift a_n -> theta(n) a_n at n-1 (no normalisation), i.e. T_k + x.
SpectralCoefficients ladder_down(const SpectralCoefficients& c);
/// Up-shift a_n -> -theta(n+1) a_n at n+1, i.e. T_k - x.
SpectralCoefficients ladder_up(const SpectralCoefficients& c);

/// L^2 adjoint of hilbert_plus: -(-L)^{-1/2} H^- (-L)^{1/2}.
SpectralCoefficients hilbert_plus_adjoint(const SpectralCoefficients& c);

/// L^2 adjoint of hilbert_minus: -(-L)^{-1/2} H^+ (-L)^{1/2}.
SpectralCoefficients hilbert_minus_adjoint(const SpectralCoefficients& c);

/// Sup over n <= N of theta(n+1)/sqrt(2n+2k+1), the l^2 operator norm of hilbert_minus on degree N.
double hilbert_minus_bound(const DunklParameter& p, int N);

struct SlopeFit {
    double slope = 0.0;
    double intercept = 0.0;
    double r_squared = 0.0;
    int points = 0;
};

/// Least-squares line through (log x_i, log y_i).
SlopeFit loglog_fit(std::span<const double> x, std::span<const double> y);

/// Decay order m of |a_n| <= C (2n+2k+1)^{-m} over n in [n_lo, n_hi], fitted to the
/// envelope max_{m' >= n} |a_{m'}| (coefficients beyond n_hi are used for the envelope).
SlopeFit coefficient_decay_fit(const SpectralCoefficients& c, int n_lo, int n_hi);

std::string coefficients_csv(const SpectralCoefficients& c, const std::string& header_comment, int precision = 17);
std::string coefficients_json(const SpectralCoefficients& c, int precision = 17);

}  // namespace dunkl

#endif
