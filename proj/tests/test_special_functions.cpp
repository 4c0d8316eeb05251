#include <doctest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "dunkl/quadrature.hpp"
#include "dunkl/special_functions.hpp"
#include "support.hpp"

using namespace dunkl;
using testing::read_table;
using testing::rel_err;

namespace {

// Classical Hermite functions by the normalised recurrence.
double classical_hermite_function(int n, double x) {
    double prev = 0.0, cur = std::pow(std::numbers::pi, -0.25) * std::exp(-0.5 * x * x);
    for (int m = 0; m < n; ++m) {
        const double next = std::sqrt(2.0 / (m + 1)) * x * cur - std::sqrt(double(m) / (m + 1)) * prev;
        prev = cur;
        cur = next;
    }
    return cur;
}

}  // namespace

TEST_CASE("laguerre small cases") {
    CHECK(laguerre(0, 0.5, 3.7) == 1.0);
    CHECK(laguerre(1, 0.5, 0.0) == doctest::Approx(1.5).epsilon(1e-15));
    CHECK(laguerre(2, 0.5, 1.0) == doctest::Approx(-0.125).epsilon(1e-14));
    CHECK_THROWS_AS(laguerre(2, -0.75, 1.0), std::domain_error);
    CHECK_THROWS(laguerre(-1, 0.0, 1.0));
}

TEST_CASE("laguerre matches reference table") {
    for (const auto& r : read_table("laguerre.csv")) {
        const double want = r["value"];
        const double got = laguerre(r.integer("n"), r["alpha"], r["x"]);
        INFO("n=", r.integer("n"), " alpha=", r["alpha"], " x=", r["x"]);
        CHECK(std::abs(got - want) <= 1e-12 * std::max(1.0, std::abs(want)));
    }
}

TEST_CASE("normalized modified bessel") {
    for (double a : {-0.5, 0.0, 0.5, 2.0}) CHECK(normalized_modified_bessel(a, 0.0) == 1.0);
    for (double u : {0.5, 1.0, 2.0}) {
        CHECK(rel_err(normalized_modified_bessel(-0.5, u), std::cosh(u)) <= 1e-13);
        CHECK(rel_err(normalized_modified_bessel(0.5, u), std::sinh(u) / u) <= 1e-13);
    }
    for (const auto& r : read_table("bessel.csv")) {
        INFO("alpha=", r["alpha"], " u=", r["u"]);
        CHECK(rel_err(normalized_modified_bessel(r["alpha"], r["u"]), r["value"]) <= 1e-13);
    }
}

TEST_CASE("dunkl kernel") {
    for (double k : {0.0, 0.5, 2.0}) {
        const DunklParameter p(k);
        CHECK(dunkl_kernel(p, 1.3, 0.0) == 1.0);
        // E_k(lambda x, y) <= e^{lambda |x y|}
        for (double lambda : {0.1, 1.0, 4.0})
            for (double x = -3.0; x <= 3.0; x += 0.25)
                for (double y = -3.0; y <= 3.0; y += 0.5)
                    CHECK(dunkl_kernel(p, lambda * x, y) <= std::exp(lambda * std::abs(x * y)) * (1 + 1e-14));
    }
    CHECK(dunkl_kernel(DunklParameter(0.0), 1.0, 1.0) == doctest::Approx(std::numbers::e).epsilon(1e-15));
}

TEST_CASE("scaled dunkl kernel matches reference table") {
    for (const auto& r : read_table("scaled_kernel.csv")) {
        const DunklParameter p(r["k"]);
        INFO("k=", r["k"], " z=", r["z"]);
        const double got = scaled_dunkl_kernel(p, r["z"]);
        CHECK(rel_err(got, r["value"]) <= 1e-12);
        CHECK(got <= 1.0);
        if (r["z"] != 0.0)
            CHECK(rel_err(log_dunkl_kernel(p, r["z"], 1.0), std::log(r["value"]) + std::abs(r["z"])) <= 1e-12);
    }
}

TEST_CASE("gaussian average of the dunkl kernel") {
    for (double k : {0.0, 0.5, 1.5}) {
        const DunklParameter p(k);
        for (double y : {-1.0, 0.4, 2.0}) {
            const std::vector<double> pts = {-40.0, 0.0, 40.0};
            const auto r = integrate(
                [&](double x) { return dunkl_kernel(p, x, y) * std::exp(-0.5 * x * x) * std::pow(std::abs(x), 2 * k); },
                pts, {0.0, 1e-13, 4000, true});
            const double want = std::pow(2.0, k + 0.5) / p.c_k() * std::exp(0.5 * y * y);
            CHECK(rel_err(r.value, want) <= 1e-11);
        }
    }
}

TEST_CASE("basis functions match reference table") {
    for (const auto& r : read_table("basis.csv")) {
        const DunklParameter p(r["k"]);
        const int n = r.integer("n");
        const double want = r["value"];
        INFO("k=", r["k"], " n=", n, " x=", r["x"]);
        CHECK(std::abs(dunkl_hermite_fn(p, n, r["x"]) - want) <= 1e-12 * std::max(1.0, std::abs(want)));
        const auto all = dunkl_hermite_fn_all(p, n, r["x"]);
        CHECK(std::abs(all[n] - want) <= 1e-12 * std::max(1.0, std::abs(want)));
    }
}

TEST_CASE("basis closed forms") {
    for (double k : {0.0, 0.3, 1.5}) {
        const DunklParameter p(k);
        const double h00 = 1.0 / std::sqrt(std::tgamma(k + 0.5));
        CHECK(dunkl_hermite_poly(p, 0, 2.3) == doctest::Approx(h00).epsilon(1e-15));
        CHECK(dunkl_hermite_poly(p, 1, 0.0) == 0.0);
        CHECK(dunkl_hermite_fn(p, 0, 0.0) == doctest::Approx(h00).epsilon(1e-15));
        CHECK(dunkl_hermite_fn(p, BasisIndex::null(), 1.0) == 0.0);
    }
}

TEST_CASE("parity") {
    const DunklParameter p(0.7);
    for (int n = 0; n <= 30; ++n)
        for (double x : {0.1, 0.9, 2.5, 6.0}) {
            const double a = dunkl_hermite_fn(p, n, x), b = dunkl_hermite_fn(p, n, -x);
            CHECK(std::abs(b - (n % 2 ? -a : a)) <= 1e-15 * std::max(1.0, std::abs(a)));
        }
}

TEST_CASE("k = 0 reduces to classical hermite functions") {
    const DunklParameter p(0.0);
    for (int n = 0; n <= 40; ++n)
        for (double x = -6.0; x <= 6.0; x += 0.37) CHECK(std::abs(dunkl_hermite_fn(p, n, x) - classical_hermite_function(n, x)) <= 1e-11);
}

TEST_CASE("theta") {
    const DunklParameter p(0.8);
    CHECK(theta(0, p) == 0.0);
    CHECK(theta(1, p) == doctest::Approx(std::sqrt(2 + 4 * 0.8)).epsilon(1e-15));
    CHECK(theta(2, p) == doctest::Approx(2.0).epsilon(1e-15));
}

TEST_CASE("basis index") {
    BasisIndex i(0);
    CHECK(i.lowered().is_null());
    CHECK(BasisIndex(3).raised().n() == 4);
    CHECK_THROWS(BasisIndex::null().n());
    CHECK_THROWS(BasisIndex(-1));
}

TEST_CASE("parameter validation") {
    CHECK_THROWS_WITH_AS(DunklParameter(-0.1), "k must be nonnegative", std::invalid_argument);
    CHECK(DunklParameter(0.5).mass() == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("dunkl operator on even functions is the derivative") {
    const DunklParameter p(1.2);
    const Function f = make_function([](double x) { return std::exp(-x * x) * std::cos(x); });
    for (double x : {-1.5, -0.2, 0.7, 2.0}) {
        const double d = -std::exp(-x * x) * (2 * x * std::cos(x) + std::sin(x));
        CHECK(std::abs(dunkl_apply(p, f, x) - d) <= 1e-9);
    }
}

TEST_CASE("ladder identities") {
    for (double k : {0.0, 0.5, 1.5}) {
        const DunklParameter p(k);
        for (int n = 0; n <= 10; ++n) {
            const Function h = basis_function(p, n);
            for (double x = -3.0; x <= 3.0; x += 0.25) {
                const double T = dunkl_apply(p, h, x);
                const double down = n ? theta(n, p) * dunkl_hermite_fn(p, n - 1, x) : 0.0;
                const double up = -theta(n + 1, p) * dunkl_hermite_fn(p, n + 1, x);
                CHECK(std::abs(T + x * h(x) - down) <= 1e-8);
                CHECK(std::abs(T - x * h(x) - up) <= 1e-8);
            }
        }
    }
}

TEST_CASE("ladder identities with numerical derivatives") {
    const DunklParameter p(0.5);
    for (int n : {2, 5}) {
        const Function h = make_function([=](double x) { return dunkl_hermite_fn(p, n, x); });
        for (double x : {-2.0, -0.5, 0.0, 1e-7, 0.4, 2.2}) {
            const double down = theta(n, p) * dunkl_hermite_fn(p, n - 1, x);
            CHECK(std::abs(dunkl_apply(p, h, x) + x * h(x) - down) <= 1e-8);
        }
    }
}

TEST_CASE("dunkl-hermite operator eigenvalues") {
    for (double k : {0.0, 0.5, 2.0}) {
        const DunklParameter p(k);
        for (int n = 0; n <= 12; ++n) {
            const Function h = basis_function(p, n);
            const Function hn = make_function([=](double x) { return dunkl_hermite_fn(p, n, x); });
            for (double x : {-2.7, -1.1, -1e-4, 0.0, 0.3, 1.9}) {
                const double want = -p.lambda(n) * h(x);
                CHECK(std::abs(dunkl_hermite_operator_apply(p, h, x) - want) <= 1e-6);
                CHECK(std::abs(dunkl_hermite_operator_apply(p, hn, x) - want) <= 1e-6);
            }
        }
    }
    const Function zero = make_function([](double) { return 0.0; });
    CHECK(dunkl_hermite_operator_apply(DunklParameter(1.0), zero, 0.4) == 0.0);
}

TEST_CASE("k = 0 operator is the harmonic oscillator") {
    const DunklParameter p(0.0);
    const Function f = make_function([](double x) { return x * x * std::exp(-0.5 * x * x); });
    for (double x : {-2.0, 0.0, 0.5, 1.5}) {
        // (x^2 e^{-x^2/2})'' - x^2 (x^2 e^{-x^2/2}) = (2 - 5x^2) e^{-x^2/2}
        CHECK(std::abs(dunkl_hermite_operator_apply(p, f, x) - (2 - 5 * x * x) * std::exp(-0.5 * x * x)) <= 1e-6);
    }
}

TEST_CASE("limit form at the origin") {
    const DunklParameter p(0.75);
    const Function f = make_function([](double x) { return std::sin(x) * std::exp(-x * x); });
    CHECK(dunkl_apply(p, f, 0.0) == doctest::Approx(2.5).epsilon(1e-9));
}

TEST_CASE("non-evaluable functions are reported") {
    const DunklParameter p(0.5);
    const Function f = make_function([](double x) { return x > 0 ? std::nan("") : 1.0; });
    CHECK_THROWS(dunkl_apply(p, f, 0.5));
}
