#include <catch_amalgamated.hpp>

#include <cmath>
#include <cstdlib>
#include <vector>

#include "fuzzyfrac/frac_calc.hpp"

using namespace fuzzyfrac;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

CrispFunction power(int p) {
    return CrispFunction([p](double s) { return std::pow(s, p); },
                         [p](double s) { return p * std::pow(s, p - 1); }, 0.0, 10.0);
}

CrispFunction quintic() {
    return CrispFunction([](double t) { return t * t * t * (t * t - 3 * t + 2); },
                         [](double t) { return t * t * (5 * t * t - 12 * t + 6); }, 0.0, 1.0);
}

}  // namespace

TEST_CASE("RL integral closed forms", "[frac_calc]") {
    const CrispFunction one([](double) { return 1.0; });
    CHECK_THAT(rl_integral(one, 0.0, 1.0, 0.5), WithinAbs(1.128379167095513, 1e-10));
    CHECK(rl_integral(one, 0.3, 0.3, 0.5) == 0.0);
    CHECK_THAT(rl_integral(power(1), 0.0, 1.0, 0.5), WithinAbs(0.752252778063675, 1e-10));
    for (double alpha : {0.1, 0.4, 0.9, 1.0})
        CHECK_THAT(rl_integral(one, 0.0, 2.0, alpha), WithinRel(std::pow(2.0, alpha) / std::tgamma(alpha + 1), 1e-10));
    CHECK_THROWS_AS(rl_integral(one, 1.0, 0.5, 0.5), DomainError);
    CHECK_THROWS_AS(rl_integral(one, 0.0, 1.0, 1.5), DomainError);
}

TEST_CASE("Caputo power rule for p = 1..5", "[frac_calc]") {
    for (int p = 1; p <= 5; ++p)
        for (double alpha : {0.1, 0.3, 0.5, 0.8, 0.95})
            for (double t : {0.25, 1.0, 1.7}) {
                const double exact = std::tgamma(p + 1.0) / std::tgamma(p + 1.0 - alpha) * std::pow(t, p - alpha);
                CHECK_THAT(caputo_derivative(power(p), 0.0, t, alpha), WithinAbs(exact, 1e-8 * std::max(1.0, exact)));
            }
}

TEST_CASE("Caputo derivative special cases", "[frac_calc]") {
    const CrispFunction c([](double) { return 4.0; }, [](double) { return 0.0; });
    for (double alpha : {0.2, 0.7, 1.0}) CHECK_THAT(caputo_derivative(c, 0.0, 1.3, alpha), WithinAbs(0.0, 1e-14));
    CHECK_THAT(caputo_derivative(power(1), 0.0, 1.0, 0.5), WithinAbs(1.128379167095513, 1e-10));
    // order one is the ordinary derivative
    CHECK_THAT(caputo_derivative(quintic(), 0.0, 0.7101, 1.0), WithinAbs(0.0, 2e-3));
    // no analytic derivative: central differences
    const CrispFunction sq([](double s) { return s * s; }, {}, 0.0, 5.0);
    CHECK_THAT(caputo_derivative(sq, 0.0, 1.0, 0.4), WithinAbs(2.0 / std::tgamma(2.6), 1e-8));
    CHECK_THROWS_AS(caputo_derivative(sq, 1.0, 1.0, 0.4), DomainError);
}

TEST_CASE("Caputo derivative of t^alpha is constant", "[frac_calc]") {
    for (double alpha : {0.3, 0.6, 0.9}) {
        const CrispFunction g([alpha](double s) { return std::pow(s, alpha); }, {}, 0.0, 2.0);
        for (double t : {0.1, 0.5, 1.0})
            CHECK_THAT(caputo_derivative(g, 0.0, t, alpha), WithinAbs(std::tgamma(alpha + 1.0), 1e-8));
    }
}

TEST_CASE("order one limit is approached monotonically", "[frac_calc][property]") {
    const auto g = power(3);
    const double t = 1.2, d1 = 3 * t * t;
    double prev = std::numeric_limits<double>::infinity();
    for (double eps : {0.2, 0.1, 0.05, 0.01, 0.001}) {
        const double gap = std::abs(caputo_derivative(g, 0.0, t, 1.0 - eps) - d1);
        CHECK(gap < prev);
        prev = gap;
    }
    CHECK(prev < 1e-2);
}

TEST_CASE("semigroup law on polynomials", "[frac_calc][property]") {
    for (int p = 0; p <= 3; ++p)
        for (auto [a, b] : std::vector<std::pair<double, double>>{{0.3, 0.5}, {0.5, 0.5}, {0.25, 0.6}}) {
            const auto g = power(p);
            const CrispFunction inner([&](double s) { return rl_integral(g, 0.0, s, b); });
            const double lhs = rl_integral(inner, 0.0, 1.1, a);
            const double rhs = rl_integral(g, 0.0, 1.1, a + b);
            CHECK_THAT(lhs, WithinAbs(rhs, 1e-7));
        }
}

TEST_CASE("Newton-Leibniz for the Caputo derivative", "[frac_calc][property]") {
    const CrispFunction g([](double s) { return 2.0 - s + 0.5 * s * s * s; }, [](double s) { return -1.0 + 1.5 * s * s; });
    for (double alpha : {0.2, 0.5, 0.85})
        for (double a : {0.0, 0.4}) {
            const double t = a + 0.9;
            const CrispFunction d([&](double s) { return caputo_derivative(g, a, s, alpha); });
            CHECK_THAT(rl_integral(d, a, t, alpha), WithinAbs(g(t) - g(a), 1e-7));
        }
}

TEST_CASE("switching points of the quintic by root finding", "[frac_calc]") {
    const double alphas[] = {0.1, 0.3, 0.5, 0.7, 0.9, 1.0};
    const double roots[] = {0.9701, 0.9109, 0.8525, 0.7949, 0.7381, 0.7101};
    for (int i = 0; i < 6; ++i)
        CHECK_THAT(find_caputo_root(quintic(), 0.0, alphas[i], {0.5, 1.0}), WithinAbs(roots[i], 5e-4));
    CHECK_THROWS_AS(find_caputo_root(quintic(), 0.0, 0.5, {0.1, 0.4}), NoRootError);
}

TEST_CASE("bisection returns a bracket narrower than the tolerance", "[frac_calc]") {
    const double r = bisect([](double x) { return x * x - 2.0; }, {1.0, 2.0});
    CHECK_THAT(r, WithinAbs(std::sqrt(2.0), kRootTolerance));
}

TEST_CASE("sampled data: exact on piecewise-linear interpolants", "[frac_calc]") {
    const std::vector<double> s = {0.0, 0.3, 0.7, 1.0};
    const std::vector<double> v = {1.0, 1.6, 2.4, 3.0};  // 1 + 2 s
    for (double alpha : {0.3, 0.8}) {
        const double t = 1.0;
        CHECK_THAT(rl_integral_sampled(s, v, t, alpha),
                   WithinAbs(std::pow(t, alpha) / std::tgamma(alpha + 1) + 2 * std::pow(t, alpha + 1) / std::tgamma(alpha + 2), 1e-13));
        CHECK_THAT(caputo_sampled(s, v, t, alpha), WithinAbs(2 * std::pow(t, 1 - alpha) / std::tgamma(2 - alpha), 1e-13));
    }
    CHECK_THAT(caputo_sampled(s, v, 0.5, 1.0), WithinAbs(2.0, 1e-13));
}

TEST_CASE("product-trapezoid scheme agrees with the graded rule", "[frac_calc]") {
    QuadratureSpec trap;
    trap.scheme = QuadratureScheme::product_trapezoid;
    const CrispFunction g([](double s) { return std::cos(s); }, [](double s) { return -std::sin(s); });
    for (double alpha : {0.3, 0.7}) {
        CHECK_THAT(rl_integral(g, 0.0, 1.5, alpha, trap), WithinAbs(rl_integral(g, 0.0, 1.5, alpha), 1e-7));
        CHECK_THAT(caputo_derivative(g, 0.0, 1.5, alpha, trap), WithinAbs(caputo_derivative(g, 0.0, 1.5, alpha), 1e-6));
    }
}

TEST_CASE("quadrature node count from the environment", "[frac_calc]") {
    ::setenv("FFSOLVE_QUAD_NODES", "512", 1);
    CHECK(quadrature_from_environment().nodes_per_unit == 512);
    ::setenv("FFSOLVE_QUAD_NODES", "junk", 1);
    CHECK(quadrature_from_environment().nodes_per_unit == QuadratureSpec{}.nodes_per_unit);
    ::unsetenv("FFSOLVE_QUAD_NODES");
}
