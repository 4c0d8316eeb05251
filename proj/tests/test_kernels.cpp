#include <doctest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "dunkl/kernels.hpp"
#include "dunkl/quadrature.hpp"
#include "dunkl/special_functions.hpp"
#include "support.hpp"

using namespace dunkl;
using testing::read_table;
using testing::rel_err;

namespace {

double measure_integral(const DunklParameter& p, const std::function<double(double)>& f, double center = 0.0) {
    const std::vector<double> pts = {-30.0, std::min(0.0, center), std::max(0.0, center), 30.0};
    IntegrationOptions o{0.0, 1e-13, 8000, true};
    return integrate([&](double y) { return f(y) * std::pow(std::abs(y), 2 * p.k()); }, pts, o).value;
}

}  // namespace

TEST_CASE("mehler kernel") {
    for (double k : {0.0, 0.5, 1.5}) {
        const DunklParameter p(k);
        for (double r : {0.1, 0.5, 0.9})
            for (double y = -2.5; y <= 2.5; y += 0.5)
                for (double z = -2.5; z <= 2.5; z += 0.7) {
                    const double u = mehler_kernel(p, r, y, z);
                    CHECK(u > 0.0);
                    CHECK(rel_err(mehler_kernel(p, r, z, y), u) <= 1e-13);
                    CHECK(rel_err(mehler_kernel(p, r, 1.0 - r, y, z), u) <= 1e-13);
                }
        for (double r : {0.3, 0.8})
            for (double y : {-1.3, 0.0, 2.0}) {
                const double mass = measure_integral(p, [&](double z) { return mehler_kernel(p, r, y, z); }, y);
                const double want = std::pow(2 / (1 + r * r), k + 0.5) * std::exp(-0.5 * (1 - r * r) / (1 + r * r) * y * y);
                CHECK(rel_err(mass, want) <= 1e-10);
            }
    }
    CHECK_THROWS_AS(mehler_kernel(DunklParameter(0.5), 1.0, 0.2, 0.3), std::domain_error);
    CHECK_THROWS_AS(mehler_kernel(DunklParameter(0.5), 0.0, 0.2, 0.3), std::domain_error);
}

TEST_CASE("mehler kernel near r = 1 at large k") {
    const DunklParameter p(3.0);
    const double v = mehler_kernel(p, 1.0 - 1e-9, 1e-9, 2.0, 2.0);
    CHECK(std::isfinite(v));
    CHECK(v > 0.0);
}

TEST_CASE("mehler series") {
    for (double k : {0.0, 0.7}) {
        const DunklParameter p(k);
        const double y = 0.4, z = -1.1;
        CHECK(rel_err(mehler_series(p, 0.5, y, z, 0), std::exp(-(y * y + z * z) / 2) / std::tgamma(k + 0.5)) <= 1e-14);
        CHECK(std::abs(mehler_series(p, 0.5, y, z, 120) - mehler_kernel(p, 0.5, y, z)) <= 1e-10);
        double prev = 0.0;
        for (int N = 0; N <= 60; N += 3) {
            const double s = mehler_series(p, 0.7, 1.3, 1.3, N);
            CHECK(s >= prev);
            prev = s;
        }
    }
}

TEST_CASE("mehler series at r = 0.9 needs more than 120 terms") {
    const DunklParameter p(1.5);
    const double y = 0.0, z = 0.0, exact = mehler_kernel(p, 0.9, y, z);
    const double e120 = std::abs(mehler_series(p, 0.9, y, z, 120) - exact);
    const double e400 = std::abs(mehler_series(p, 0.9, y, z, 400) - exact);
    CHECK(e120 > 1e-8);
    CHECK(e400 <= 1e-12);
}

TEST_CASE("heat kernel") {
    for (double k : {0.0, 0.5, 1.5}) {
        const DunklParameter p(k);
        for (double t : {0.05, 0.5, 2.0})
            for (double x : {-2.0, 0.0, 1.5})
                for (double y : {-1.0, 0.3, 2.5}) CHECK(heat_kernel(p, t, x, y) > 0.0);
        for (double t : {0.1, 1.0})
            for (double x : {-1.5, 0.2}) {
                const double mass = measure_integral(p, [&](double y) { return heat_kernel(p, t, x, y); }, x);
                const double want = std::pow(std::cosh(2 * t), -(k + 0.5)) * std::exp(-0.5 * std::tanh(2 * t) * x * x);
                CHECK(rel_err(mass, want) <= 1e-10);
            }
        const double t = 0.3, s = 0.45, x = 0.7, y = -1.2;
        const double comp = measure_integral(p, [&](double z) { return heat_kernel(p, t, x, z) * heat_kernel(p, s, z, y); });
        CHECK(rel_err(comp, heat_kernel(p, t + s, x, y)) <= 1e-9);
    }
    CHECK_THROWS_AS(heat_kernel(DunklParameter(0.0), 0.0, 1.0, 1.0), std::domain_error);
}

TEST_CASE("poisson kernel matches reference table") {
    for (const auto& r : read_table("poisson.csv")) {
        const DunklParameter p(r["k"]);
        INFO("k=", r["k"], " t=", r["t"]);
        PoissonOptions radius, semigroup;
        semigroup.path = PoissonPath::semigroup;
        CHECK(rel_err(poisson_kernel(p, r["t"], r["x"], r["y"], radius), r["value"]) <= 1e-10);
        CHECK(rel_err(poisson_kernel(p, r["t"], r["x"], r["y"], semigroup), r["value"]) <= 1e-10);
    }
}

TEST_CASE("poisson kernel paths") {
    const DunklParameter p(0.5);
    PoissonOptions a, b;
    b.path = PoissonPath::semigroup;
    CHECK(std::abs(poisson_kernel(p, 0.7, 0.4, -1.2, a) - poisson_kernel(p, 0.7, 0.4, -1.2, b)) <= 1e-9);
    PoissonOptions c;
    c.cross_check = true;
    CHECK_NOTHROW(poisson_kernel(p, 0.7, 0.4, -1.2, c));
    CHECK_THROWS_AS(poisson_kernel(p, -0.1, 0.4, -1.2), std::domain_error);
}

TEST_CASE("poisson kernel reproduces the basis") {
    for (double k : {0.0, 1.0}) {
        const DunklParameter p(k);
        const double t = 0.6, x = 0.8;
        for (int n : {0, 3, 10}) {
            const double v = measure_integral(
                p, [&](double y) { return poisson_kernel(p, t, x, y, {PoissonPath::radius, false, 1e-7, 1e-11}) * dunkl_hermite_fn(p, n, y); },
                x);
            const double want = std::exp(-t * std::sqrt(p.lambda(n))) * dunkl_hermite_fn(p, n, x);
            CHECK(std::abs(v - want) <= 1e-8 * std::max(std::abs(want), 1e-2));
        }
        const double mass = measure_integral(p, [&](double y) { return poisson_kernel(p, t, x, y); }, x);
        CHECK(mass <= std::pow(2.0, k + 0.5) * std::exp(-t * std::sqrt(2 * k + 1)));
    }
}

TEST_CASE("poisson ladder kernel") {
    const DunklParameter p(0.5);
    const double t = 0.5, y = -0.4;
    for (int sign : {1, -1})
        for (double x : {-1.1, 0.6}) {
            const Function A = make_function([&](double xx) { return poisson_kernel(p, t, xx, y); });
            const double numeric = dunkl_apply(p, A, x) + sign * x * A(x);
            CHECK(std::abs(poisson_kernel_ladder(p, t, x, y, sign) - numeric) <= 1e-6);
        }
}

TEST_CASE("subordination weight") {
    CHECK(subordination_weight_L(1.0, 1.0 - 1e-6) <= 1e-100);
    // The 1/r factor wins as r -> 0: L itself grows, r L(t, r) vanishes.
    CHECK(subordination_weight_L(1.0, 1e-8) > subordination_weight_L(1.0, 1e-4));
    CHECK(1e-8 * subordination_weight_L(1.0, 1e-8) <= 1e-2);
    CHECK(1e-16 * subordination_weight_L(1.0, 1e-16) < 1e-8 * subordination_weight_L(1.0, 1e-8));
    CHECK(subordination_weight_L(1.0, 0.5) > 0.0);
    CHECK_THROWS_AS(subordination_weight_L(0.0, 0.5), std::domain_error);
    CHECK_THROWS_AS(subordination_weight_L(1.0, 1.5), std::domain_error);
}

TEST_CASE("K_s kernel") {
    for (double k : {0.0, 0.5, 2.0}) {
        const DunklParameter p(k);
        for (double s : {0.05, 0.4, 0.9})
            for (double x : {-1.5, 0.3, 2.2})
                for (double y : {-0.7, 1.1}) {
                    CHECK(k_s_kernel(p, s, x, y) > 0.0);
                    const Function K = make_function([&](double xx) { return k_s_kernel(p, s, xx, y); });
                    CHECK(std::abs(dunkl_apply(p, K, x) - k_s_dunkl_derivative(p, s, x, y)) <= 1e-7);
                }
        for (double t : {0.1, 0.7, 1.5})
            for (double x : {-1.0, 0.5})
                for (double y : {-2.0, 0.2, 1.4}) CHECK(rel_err(k_s_kernel(p, std::tanh(t), x, y), heat_kernel(p, t, x, y)) <= 1e-10);
    }
}

TEST_CASE("beta weight") {
    for (double k : {0.0, 0.5, 1.5}) {
        const DunklParameter p(k);
        const double s = 1e-8;
        const double prod = std::pow(s, k + 1) * beta_weight(p, s);
        CHECK(std::isfinite(prod));
        // log((1+s)/(1-s)) ~ 2s, so s^{k+1} beta(s) -> 1/sqrt(2).
        CHECK(prod == doctest::Approx(std::sqrt(0.5)).epsilon(1e-6));
        const double b = beta_weight(p, 0.5);
        CHECK(b > 0.0);
        CHECK(b == beta_weight(p, 0.5));
        CHECK(rel_err(b, std::pow(0.5, k - 0.5) * std::pow(0.5, -(k + 0.5)) / std::sqrt(std::log(3.0))) <= 1e-14);
        // Written with the separately supplied 1 - s, which stays accurate near s = 1.
        auto beta = [&](double s, double oms) {
            return std::pow(oms, k - 0.5) * std::pow(s, -(k + 0.5)) / std::sqrt(std::log1p(2 * s / oms));
        };
        CHECK(rel_err(beta(0.3, 0.7), beta_weight(p, 0.3)) <= 1e-14);
        const auto a = unit_interval_integrate([&](double s, double oms) { return beta(s, oms) * std::exp(-1 / (4 * s)); },
                                               {0.0, k - 0.5});
        CHECK(std::isfinite(a.value));
        CHECK(a.value > 0.0);
    }
}

TEST_CASE("hilbert kernel parts match reference table") {
    for (const auto& r : read_table("hilbert_kernel.csv")) {
        const DunklParameter p(r["k"]);
        const auto h = hilbert_kernel_parts(p, r["x"], r["y"]);
        INFO("k=", r["k"], " x=", r["x"], " y=", r["y"]);
        CHECK(rel_err(h.R1, r["R1"]) <= 1e-9);
        CHECK(rel_err(h.R2, r["R2"]) <= 1e-9);
        const double c = std::sqrt(2 / std::numbers::pi);
        CHECK(rel_err(hilbert_kernel(p, 1, r["x"], r["y"]), c * (r["R1"] + r["R2"])) <= 1e-9);
        CHECK(rel_err(hilbert_kernel(p, -1, r["x"], r["y"]), c * (r["R1"] - r["R2"])) <= 1e-9);
    }
}

TEST_CASE("hilbert kernel diagonal exclusion") {
    CHECK_THROWS_AS(hilbert_kernel_parts(DunklParameter(0.5), 1.0, 1.0 + 1e-9), std::domain_error);
    CHECK_NOTHROW(hilbert_kernel_parts(DunklParameter(0.5), 1.0, 1.0 + 1e-3));
}

TEST_CASE("hilbert kernel on the anti-diagonal") {
    // For k > 0 the reflection part of E_k makes R1 grow like log(1/|x+y|) at y = -x.
    const DunklParameter p(0.5);
    CHECK_THROWS_AS(hilbert_kernel_parts(p, 1.0, -1.0), NumericalError);
    const double a = hilbert_kernel_parts(p, 1.0, -1.0 + 1e-2).R1;
    const double b = hilbert_kernel_parts(p, 1.0, -1.0 + 1e-3).R1;
    const double c = hilbert_kernel_parts(p, 1.0, -1.0 + 1e-4).R1;
    CHECK(std::abs(b) > std::abs(a));
    CHECK(std::abs(c) > std::abs(b));
    CHECK(std::abs((c - b) - (b - a)) <= 0.05 * std::abs(b - a));
    // Without reflection the kernel is finite there.
    CHECK(std::isfinite(hilbert_kernel_parts(DunklParameter(0.0), 1.0, -1.0).R1));
}

TEST_CASE("hilbert kernel blows up at the origin for k > 0") {
    // R1(x, 0) ~ x^{-(2k+1)}, so |x - y| |R1| is unbounded near (0, 0).
    const DunklParameter p(0.5);
    const double a = hilbert_kernel_parts(p, 0.1, 0.0).R1;
    const double b = hilbert_kernel_parts(p, 0.05, 0.0).R1;
    CHECK(std::log(b / a) / std::log(2.0) == doctest::Approx(2.0).epsilon(0.02));
}

TEST_CASE("hilbert kernel principal value against a constant converges") {
    const DunklParameter p(0.0);
    const double x = 1.0;
    Function one = make_function([](double) { return 1.0; }, DecayClass::compact);
    one.support = Interval{x - 0.5, x + 0.5};
    const auto r = principal_value_integrate([&](double xx, double y) { return hilbert_kernel(p, 1, xx, y, {1e-10}); }, one,
                                             p, x);
    CHECK(r.cauchy);
    CHECK(std::isfinite(r.value));
    CHECK(r.error <= 1e-6);
}

TEST_CASE("conjugate kernels match reference table") {
    for (const auto& r : read_table("conjugate_kernel.csv")) {
        const DunklParameter p(r["k"]);
        INFO("k=", r["k"], " t=", r["t"]);
        CHECK(rel_err(conjugate_kernel_Q(p, r["t"], r["x"], r["y"]), r["Q"]) <= 1e-9);
        CHECK(rel_err(conjugate_kernel_M(p, r["t"], r["x"], r["y"]), r["M"]) <= 1e-9);
    }
}

TEST_CASE("conjugate kernel self-consistency") {
    const DunklParameter p(0.5);
    const double a = conjugate_kernel_Q(p, 0.5, 1.0, -0.7, {1e-10});
    const double b = conjugate_kernel_Q(p, 0.5, 1.0, -0.7, {1e-13});
    CHECK(std::abs(a - b) <= 1e-8 * std::abs(b));
    const double c = conjugate_kernel_M(p, 0.5, 1.0, -0.7, {1e-10});
    const double d = conjugate_kernel_M(p, 0.5, 1.0, -0.7, {1e-13});
    CHECK(std::abs(c - d) <= 1e-8 * std::abs(d));
    CHECK_THROWS_AS(conjugate_kernel_Q(p, 0.0, 1.0, 0.5), std::domain_error);
    CHECK_THROWS_AS(conjugate_kernel_M(p, -1.0, 1.0, 0.5), std::domain_error);
}

TEST_CASE("conjugate kernel actions on the basis") {
    const DunklParameter p(0.5);
    const double t = 0.5, x = 0.9;
    const double q0 = measure_integral(p, [&](double y) { return conjugate_kernel_Q(p, t, x, y) * dunkl_hermite_fn(p, 0, y); }, x);
    CHECK(std::abs(q0) <= 1e-10);
    for (int n : {1, 4}) {
        const double d = std::exp(-t * std::sqrt(p.lambda(n))) / std::sqrt(p.lambda(n));
        const double q = measure_integral(p, [&](double y) { return conjugate_kernel_Q(p, t, x, y) * dunkl_hermite_fn(p, n, y); }, x);
        const double m = measure_integral(p, [&](double y) { return conjugate_kernel_M(p, t, x, y) * dunkl_hermite_fn(p, n, y); }, x);
        CHECK(std::abs(q - d * theta(n, p) * dunkl_hermite_fn(p, n - 1, x)) <= 1e-7 * d * theta(n, p));
        // M carries the up-shift with a positive weight, the opposite sign to the Hilbert transform H^-.
        CHECK(std::abs(m - d * theta(n + 1, p) * dunkl_hermite_fn(p, n + 1, x)) <= 1e-7 * d * theta(n + 1, p));
    }
}
