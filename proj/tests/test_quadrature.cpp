#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <numbers>
#include <vector>

#include "dunkl/functions.hpp"
#include "dunkl/kernels.hpp"
#include "dunkl/quadrature.hpp"
#include "dunkl/special_functions.hpp"
#include "support.hpp"

using namespace dunkl;
using testing::read_table;
using testing::rel_err;

TEST_CASE("recurrence coefficients") {
    const auto r0 = generalized_hermite_recurrence(DunklParameter(0.0), 30);
    REQUIRE(r0.beta.size() >= 29);
    for (std::size_t n = 1; n <= 29; ++n) CHECK(r0.beta[n - 1] == doctest::Approx(n / 2.0).epsilon(1e-15));
    CHECK(r0.beta0 == doctest::Approx(std::sqrt(std::numbers::pi)).epsilon(1e-15));
    CHECK(generalized_hermite_recurrence(DunklParameter(0.5), 4).beta0 == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("gauss rules reproduce moments") {
    for (double k : {0.0, 0.3, 0.5, 1.5, 4.0}) {
        const DunklParameter p(k);
        const QuadratureRule rule = gauss_rule(generalized_hermite_recurrence(p, 30), 30);
        for (int j = 0; j <= 12; ++j) {
            double s = 0.0;
            for (std::size_t i = 0; i < rule.nodes.size(); ++i) s += rule.weights[i] * std::pow(rule.nodes[i], 2 * j);
            INFO("k=", k, " j=", j);
            CHECK(rel_err(s, std::tgamma(j + k + 0.5)) <= 1e-12);
        }
    }
}

TEST_CASE("one-point rule") {
    for (double k : {0.0, 1.0, 2.5}) {
        const QuadratureRule r = gauss_rule(DunklParameter(k), 1);
        REQUIRE(r.nodes.size() == 1);
        CHECK(std::abs(r.nodes[0]) <= 1e-300);
        CHECK(r.weights[0] == doctest::Approx(std::tgamma(k + 0.5)).epsilon(1e-14));
    }
}

TEST_CASE("gauss rules match reference table") {
    const auto rows = read_table("gauss_rules.csv");
    for (double k : {0.5, 1.5}) {
        int N = 0;
        std::vector<testing::Row> sel;
        for (const auto& r : rows)
            if (r["k"] == k) {
                sel.push_back(r);
                N = r.integer("N");
            }
        const QuadratureRule rule = gauss_rule(DunklParameter(k), N);
        REQUIRE(rule.nodes.size() == sel.size());
        for (std::size_t i = 0; i < sel.size(); ++i) {
            CHECK(std::abs(rule.nodes[i] - sel[i]["node"]) <= 1e-13 * std::max(1.0, std::abs(sel[i]["node"])));
            CHECK(rel_err(rule.weights[i], sel[i]["weight"]) <= 1e-12);
        }
    }
}

TEST_CASE("rule csv round trip") {
    const QuadratureRule rule = gauss_rule(DunklParameter(0.75), 24);
    const auto path = std::filesystem::temp_directory_path() / "dunkl_rule_roundtrip.csv";
    save_rule_csv(rule, path);
    const QuadratureRule back = load_rule_csv(path);
    std::filesystem::remove(path);
    CHECK(back.nodes == rule.nodes);
    CHECK(back.weights == rule.weights);
    CHECK(back.k == rule.k);
    CHECK(back.order == rule.order);
}

TEST_CASE("adaptive integration") {
    const std::vector<double> pts = {0.0, 1.0};
    CHECK(integrate([](double x) { return std::sqrt(x); }, 0.0, 1.0).value == doctest::Approx(2.0 / 3).epsilon(1e-12));
    CHECK(integrate([](double s) { return 3 * s * s; }, pts).value == doctest::Approx(1.0).epsilon(1e-14));
    const auto v = integrate_vector(
        [](double x, std::span<double> out) {
            out[0] = std::cos(x);
            out[1] = x * x;
        },
        2, pts);
    CHECK(v.value[0] == doctest::Approx(std::sin(1.0)).epsilon(1e-13));
    CHECK(v.value[1] == doctest::Approx(1.0 / 3).epsilon(1e-13));

    IntegrationOptions tight{0.0, 1e-14, 5, true};
    CHECK_THROWS_AS(integrate([](double x) { return std::sin(200 * x); }, 0.0, 10.0, tight), NumericalError);
    tight.throw_on_failure = false;
    CHECK_FALSE(integrate([](double x) { return std::sin(200 * x); }, 0.0, 10.0, tight).converged);
}

TEST_CASE("adaptive integration is deterministic") {
    auto f = [](double x) { return std::exp(-x * x) * std::cos(3 * x) / (1 + x * x); };
    const auto a = integrate(f, -5.0, 5.0), b = integrate(f, -5.0, 5.0);
    CHECK(a.value == b.value);
    CHECK(a.error == b.error);
}

TEST_CASE("half line") {
    CHECK(halfline_integrate([](double u) { return std::exp(-u) / std::sqrt(u); }).value ==
          doctest::Approx(std::sqrt(std::numbers::pi)).epsilon(1e-12));
    for (double beta : {1.0, 2.0}) {
        const auto r = halfline_integrate([=](double s) {
            return beta / std::sqrt(4 * std::numbers::pi) * std::exp(-s) * std::pow(s, -1.5) * std::exp(-beta * beta / (4 * s));
        });
        CHECK(rel_err(r.value, std::exp(-beta)) <= 1e-10);
    }
    CHECK(halfline_integrate([](double) { return 0.0; }).value == 0.0);
    CHECK_THROWS_AS(halfline_integrate([](double u) { return 1.0 / (1.0 + u); }), NumericalError);
}

TEST_CASE("unit interval") {
    const auto a = unit_interval_integrate([](double s, double oms) { return 1.0 / std::sqrt(s * oms); }, {-0.5, -0.5});
    CHECK(a.value == doctest::Approx(std::numbers::pi).epsilon(1e-12));
    CHECK(unit_interval_integrate([](double s, double) { return 3 * s * s; }, {}).value ==
          doctest::Approx(1.0).epsilon(1e-14));
    const auto sq = unit_interval_integrate([](double s, double) { return std::pow(s, -0.5); }, {-0.5, 0.0, Substitution::square});
    CHECK(sq.value == doctest::Approx(2.0).epsilon(1e-13));
    CHECK_THROWS_AS(unit_interval_integrate([](double, double) { return 1.0; }, {-1.0, 0.0}), std::domain_error);
}

TEST_CASE("log-divergent weight at the right endpoint is reported") {
    // (log((1+s)/(1-s)))^{-1/2} / (1 - s^2) behaves like 1/((1-s) sqrt(log(1/(1-s)))) as s -> 1,
    // which is not integrable; the integrator must not return a value.
    auto g = [](double s, double oms) { return std::pow(std::log((1 + s) / oms), -0.5) / (oms * (1 + s)) * std::exp(-1 / s); };
    CHECK_THROWS_AS(unit_interval_integrate(g, {}), NumericalError);
    // With the (1 - s^2)^{k + 1/2} factor carried by K_s the integral converges.
    auto h = [](double s, double oms) { return std::pow(std::log((1 + s) / oms), -0.5) * std::sqrt(oms * (1 + s)) * std::exp(-1 / s); };
    const auto a = unit_interval_integrate(h, {0.0, -0.5});
    IntegrationOptions half = unit_interval_defaults();
    half.rel_tol *= 0.5;
    const auto b = unit_interval_integrate(h, {0.0, -0.5}, half);
    CHECK(std::abs(a.value - b.value) <= 1e-8 * std::abs(a.value));
}

TEST_CASE("subordination weight reproduces poisson multipliers") {
    for (double t : {0.3, 1.0, 2.5})
        for (double k : {0.0, 0.5, 1.5})
            for (int n : {0, 1, 5}) {
                const double e = n + k + 0.5;
                const auto r = unit_interval_integrate(
                    [&](double r, double) { return subordination_weight_L(t, r) * std::pow(r, e); },
                    {0.0, 0.0, Substitution::log_radius});
                CHECK(rel_err(r.value, std::exp(-t * std::sqrt(2 * n + 2 * k + 1))) <= 1e-10);
            }
}

TEST_CASE("integrate measure") {
    for (double k : {0.0, 0.5, 2.0}) {
        const DunklParameter p(k);
        const Function h0sq = make_function([&](double x) { return std::pow(dunkl_hermite_fn(p, 0, x), 2); });
        const Function g = gaussian_function();
        const Function odd = make_function([](double x) { return x * x * x * std::exp(-x * x); });
        for (auto scheme : {MeasureScheme::gauss, MeasureScheme::adaptive}) {
            CHECK(integrate_measure(h0sq, p, scheme).value == doctest::Approx(1.0).epsilon(1e-13));
            CHECK(rel_err(integrate_measure(g, p, scheme).value, std::tgamma(k + 0.5)) <= 1e-13);
            CHECK(std::abs(integrate_measure(odd, p, scheme).value) <= 1e-14);
        }
        const Function b = bump_function(0.5, 1.0);
        CHECK(integrate_measure(b, p, MeasureScheme::adaptive).value > 0.0);
    }
}

TEST_CASE("principal values") {
    const DunklParameter p0(0.0);
    auto cauchy = [](double x, double y) { return 1.0 / (x - y); };

    // Constant on a window centred at x.
    const double x = 0.6;
    Function one = make_function([](double) { return 1.0; }, DecayClass::compact);
    one.support = Interval{x - 1.0, x + 1.0};
    CHECK(std::abs(principal_value_integrate(cauchy, one, p0, x).value) <= 1e-12);

    // PV of e^{-y^2}/(x - y) is 2 sqrt(pi) D(x) with D the Dawson function.
    const auto r = principal_value_integrate(cauchy, gaussian_function(), p0, 0.8);
    CHECK(r.value == doctest::Approx(1.88625143949090739).epsilon(1e-10));
    CHECK(r.cauchy);
    CHECK(r.truncated.size() == PVOptions::default_eps_schedule().size());

    for (double k : {0.5, 1.5}) {
        const DunklParameter p(k);
        const auto a = principal_value_integrate(cauchy, gaussian_function(), p, -0.7);
        const auto b = principal_value_integrate(cauchy, gaussian_function(), p, -0.7);
        CHECK(a.value == b.value);
        CHECK(a.error <= 1e-8);
    }
}

TEST_CASE("even singularities are not principal values") {
    auto bad = [](double x, double y) { return 1.0 / std::abs(x - y); };
    CHECK_THROWS_AS(principal_value_integrate(bad, gaussian_function(), DunklParameter(0.0), 0.3), NumericalError);
}
