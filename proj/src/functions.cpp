#include "dunkl/functions.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

#include "dunkl/special_functions.hpp"

namespace dunkl {

Function gaussian_function() {
    Function f;
    f.value = [](double x) { return std::exp(-x * x); };
    f.d1 = [](double x) { return -2.0 * x * std::exp(-x * x); };
    f.d2 = [](double x) { return (4.0 * x * x - 2.0) * std::exp(-x * x); };
    f.decay = DecayClass::gaussian;
    f.name = "gaussian";
    return f;
}

Function bump_function(double c, double w) {
    if (!(w > 0.0)) throw std::invalid_argument("bump_function: half-width must be positive");
    Function f;
    f.value = [c, w](double x) {
        const double u = (x - c) / w;
        const double q = 1.0 - u * u;
        return q > 0.0 ? std::exp(-1.0 / q) : 0.0;
    };
    f.d1 = [c, w](double x) {
        const double u = (x - c) / w;
        const double q = 1.0 - u * u;
        return q > 0.0 ? std::exp(-1.0 / q) * (-2.0 * u / (q * q)) / w : 0.0;
    };
    f.d2 = [c, w](double x) {
        const double u = (x - c) / w;
        const double q = 1.0 - u * u;
        if (q <= 0.0) return 0.0;
        const double g1 = -2.0 * u / (q * q);
        const double g2 = -2.0 / (q * q) - 8.0 * u * u / (q * q * q);
        return std::exp(-1.0 / q) * (g1 * g1 + g2) / (w * w);
    };
    f.decay = DecayClass::compact;
    f.support = Interval{c - w, c + w};
    f.name = "bump";
    return f;
}

std::vector<SpectralCoefficients> bandlimited_family(const DunklParameter& p, std::uint64_t seed, int count, int N) {
    if (count < 0 || N < 0) throw std::invalid_argument("bandlimited_family: count and N must be nonnegative");
    std::mt19937_64 gen(seed);
    // 53 random bits mapped to [0, 1), then to [-1, 1); independent of the library's distributions.
    auto uniform = [&gen] { return 2.0 * static_cast<double>(gen() >> 11) * 0x1.0p-53 - 1.0; };
    std::vector<SpectralCoefficients> out;
    for (int j = 0; j < count; ++j) {
        std::vector<double> a(static_cast<std::size_t>(N) + 1);
        for (double& v : a) v = uniform();
        out.emplace_back(p, std::move(a));
    }
    return out;
}

std::vector<Function> schwartz_family(const DunklParameter& p) {
    std::vector<Function> fs;
    fs.push_back(basis_function(p, 1));
    fs.push_back(gaussian_function());
    {
        Function f;
        f.value = [](double x) { return std::exp(-(x - 0.5) * (x - 0.5)); };
        f.d1 = [](double x) { return -2.0 * (x - 0.5) * std::exp(-(x - 0.5) * (x - 0.5)); };
        f.d2 = [](double x) {
            const double u = x - 0.5;
            return (4.0 * u * u - 2.0) * std::exp(-u * u);
        };
        f.decay = DecayClass::gaussian;
        f.name = "shifted_gaussian";
        fs.push_back(f);
    }
    {
        // (1 - x + x^3/3) e^{-x^2/2}
        Function f;
        f.value = [](double x) { return (1.0 - x + x * x * x / 3.0) * std::exp(-0.5 * x * x); };
        f.d1 = [](double x) {
            const double q = 1.0 - x + x * x * x / 3.0, q1 = -1.0 + x * x;
            return (q1 - x * q) * std::exp(-0.5 * x * x);
        };
        f.d2 = [](double x) {
            const double q = 1.0 - x + x * x * x / 3.0, q1 = -1.0 + x * x, q2 = 2.0 * x;
            return (q2 - 2.0 * x * q1 + (x * x - 1.0) * q) * std::exp(-0.5 * x * x);
        };
        f.decay = DecayClass::gaussian;
        f.degree_hint = 3;
        f.name = "cubic_gaussian";
        fs.push_back(f);
    }
    {
        const auto c = bandlimited_family(p, 1, 1)[0];
        Function f = as_function(c);
        f.name = "band0";
        fs.push_back(f);
    }
    return fs;
}

Function builtin_function(const std::string& name, const DunklParameter& p, std::uint64_t seed, double bump_center,
                          double bump_width) {
    if (name == "gaussian") return gaussian_function();
    if (name == "bump") return bump_function(bump_center, bump_width);
    auto index = [&](std::size_t skip) {
        const std::string digits = name.substr(skip);
        if (digits.empty() || digits.find_first_not_of("0123456789") != std::string::npos)
            throw std::invalid_argument("unknown function '" + name + "'");
        return std::stoi(digits);
    };
    if (name.rfind("band", 0) == 0) {
        const int j = index(4);
        Function f = as_function(bandlimited_family(p, seed, j + 1)[static_cast<std::size_t>(j)]);
        f.name = name;
        return f;
    }
    if (name.rfind('h', 0) == 0) return basis_function(p, index(1));
    throw std::invalid_argument("unknown function '" + name + "'");
}

}  // namespace dunkl
