// Built-in test functions: Gaussian, smooth bumps, basis elements, a Schwartz
// family and the seeded band-limited family.
#ifndef DUNKL_FUNCTIONS_HPP
#define DUNKL_FUNCTIONS_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "dunkl/core.hpp"
#include "dunkl/spectral.hpp"

namespace dunkl {

/// e^{-x^2}.
Function gaussian_function();

/// exp(-1/(1-u^2)) with u = (x - c)/w on (c - w, c + w), zero elsewhere.
Function bump_function(double center, double half_width);

/// Coefficients of the band-limited family: member j has a_n, n <= N, drawn
/// uniformly from [-1, 1] by one mt19937_64 stream seeded with `seed`.
std::vector<SpectralCoefficients> bandlimited_family(const DunklParameter& p, std::uint64_t seed, int count,
                                                     int N = 16);

/// Five Schwartz-class functions with analytic derivatives.
std::vector<Function> schwartz_family(const DunklParameter& p);

/// Resolves a built-in name: "gaussian", "bump", "h<N>", "band<j>".
Function builtin_function(const std::string& name, const DunklParameter& p, std::uint64_t seed = 1,
                          double bump_center = 0.0, double bump_width = 1.0);

}  // namespace dunkl

#endif
