#include <catch_amalgamated.hpp>

#include <cmath>

#include "fuzzyfrac/checks.hpp"
#include "fuzzyfrac/examples.hpp"

using namespace fuzzyfrac;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

TEST_CASE("Example 1 grows by h^alpha per step under the local rule", "[euler]") {
    const auto traj = solve(examples::example1(0.6, 2.0), 0.2);
    REQUIRE(traj.size() == 11);
    const auto& y = traj.y[10];
    CHECK_THAT(y.lower().front(), WithinAbs(0.0, 1e-15));
    CHECK_THAT(y.core(), WithinAbs(3.80731, 5e-6));
    CHECK_THAT(y.upper().front(), WithinAbs(5.71096, 5e-6));
    CHECK(traj.t.back() == 2.0);
}

TEST_CASE("order one reduces to the classical Euler method", "[euler]") {
    FFIVP p;
    p.alpha = 1.0;
    p.y0 = FuzzyNumber::triangular(1.0, 2.0, 3.0);
    p.rhs = [](double t, const FuzzyNumber&) { return scalar_mul(t, FuzzyNumber::triangular(1, 1, 1)).endpoints(); };
    p.plan = DiffPlan::single(0.0, 1.0);
    const auto traj = solve(p, 0.25, {});
    // sum of h t_k over k = 0..3
    CHECK_THAT(traj.y.back().core(), WithinAbs(2.0 + 0.25 * (0.0 + 0.25 + 0.5 + 0.75), 1e-14));
    const auto mem = solve(p, 0.25, SolveOptions{StepRule::memory});
    CHECK_THAT(mem.y.back().core(), WithinAbs(traj.y.back().core(), 1e-14));
}

TEST_CASE("Example 2 follows (1 - c)^k", "[euler]") {
    for (double alpha : {0.3, 0.6, 0.9})
        for (double h : {0.2, 0.02}) {
            const auto traj = solve(examples::example2(alpha, 10 * h), h);
            const double c = euler_coefficient(h, alpha);
            for (std::size_t k = 0; k < traj.size(); ++k) {
                const double s = std::pow(1.0 - c, static_cast<double>(k));
                CHECK_THAT(traj.y[k].lower().front(), WithinAbs(0.0, 1e-14));
                CHECK_THAT(traj.y[k].core(), WithinAbs(s, 1e-13));
                CHECK_THAT(traj.y[k].upper().front(), WithinAbs(2.0 * s, 1e-13));
            }
        }
}

TEST_CASE("one step is y_k plus c f under case (i)", "[euler]") {
    const auto p = examples::example4(0.7);
    const double h = 0.05;
    const auto traj = solve(p, h, SolveOptions{StepRule::local});
    const double c = euler_coefficient(h, p.alpha);
    for (std::size_t k = 0; k + 1 < traj.size() && traj.step_case[k] == GhCase::case_i; ++k) {
        const auto f = p.rhs(traj.t[k], traj.y[k]);
        const auto next = add(traj.y[k], scalar_mul(c, FuzzyNumber(traj.y[k].levels(), f.lower, f.upper)));
        CHECK(hausdorff_distance(next, traj.y[k + 1]) < 1e-14);
    }
}

TEST_CASE("a step that crosses the endpoints is reported", "[euler]") {
    const auto p = examples::example2(0.9, 2.0);
    REQUIRE(euler_coefficient(1.0, 0.9) > 1.0);
    try {
        solve(p, 1.0);
        FAIL("expected StepInvalidError");
    } catch (const StepInvalidError& e) {
        CHECK(e.time() == 0.0);
        CHECK(e.step() == 0);
    }
    SolveOptions formal;
    formal.enforce_validity = false;
    CHECK_NOTHROW(solve(p, 1.0, formal));
}

TEST_CASE("step sizes must divide the interval", "[euler]") {
    CHECK(step_count(0.0, 1.0, 0.1) == 10);
    CHECK(step_count(0.0, 1.0, 1.0 / 80) == 80);
    CHECK_THROWS_AS(step_count(0.0, 1.0, 0.3), DomainError);
    CHECK_THROWS_AS(step_count(0.0, 1.0, 0.0), DomainError);
    CHECK_THROWS_AS(solve(examples::example1(0.5), 0.3), DomainError);
}

TEST_CASE("memory rule needs the history from the terminal", "[euler]") {
    CHECK_THROWS_AS(solve(examples::example3(0.8, 1.0), 0.1, SolveOptions{StepRule::memory}), UnsupportedError);
}

TEST_CASE("memory rule is exact for Example 1", "[euler]") {
    for (double alpha : {0.3, 0.6, 0.9}) CHECK(checks::example1_error(alpha, StepRule::memory) < 1e-12);
    // the local rule is not
    CHECK(checks::example1_error(0.6, StepRule::local) > 1.0);
}

TEST_CASE("global error starts at zero", "[euler]") {
    const auto p = examples::example2(0.6);
    const auto e = global_error(solve(p, 0.05), *p.exact);
    CHECK(e.front() == 0.0);
    CHECK(max_of(e) > 0.0);
}

TEST_CASE("local truncation error", "[euler]") {
    const auto p1 = examples::example1(0.6);
    CHECK(max_of(local_truncation_error(p1, solve(p1, 0.1))) < 1e-12);

    // D^{2 alpha} of u E(-t^alpha) is u E(-t^alpha), largest at t = 0
    const auto p2 = examples::example2(0.9);
    const double coarse = max_of(local_truncation_error(p2, solve(p2, 0.1)));
    const double fine = max_of(local_truncation_error(p2, solve(p2, 0.05)));
    CHECK_THAT(coarse / fine, WithinRel(std::pow(2.0, 0.8), 0.05));
    CHECK_THAT(coarse, WithinRel(2.0 * std::pow(0.1, 0.8) / std::tgamma(2.8), 1e-3));

    FFIVP bare = p2;
    bare.exact.reset();
    CHECK_THROWS_AS(local_truncation_error(bare, solve(p2, 0.1)), UnsupportedError);
    bare.d2alpha_bound = 2.0;
    CHECK_THAT(max_of(local_truncation_error(bare, solve(p2, 0.1))), WithinRel(coarse, 1e-3));
}

TEST_CASE("convergence bound and its small-Lipschitz limit", "[euler]") {
    const double h = 0.1, alpha = 0.5, L = 1.0, M = 2.0;
    const double g2 = std::tgamma(2 * alpha + 1);
    CHECK_THAT(convergence_bound(h, alpha, 0.0, L, M), WithinRel(std::pow(h, alpha) / g2 * L * M, 1e-14));
    CHECK_THAT(convergence_bound(h, alpha, 1e-9, L, M), WithinRel(convergence_bound(h, alpha, 0.0, L, M), 1e-8));
    CHECK(stability_constant(alpha, 0.0, L) == 1.0);
}

TEST_CASE("Lipschitz estimate of a linear right-hand side", "[euler]") {
    const auto p = examples::example2(0.6);
    const double ell = estimate_lipschitz(p, solve(p, 0.1));
    CHECK(ell <= 1.2 + 1e-12);
    CHECK(ell > 1.0);
}

TEST_CASE("Example 4 error at t = 1", "[euler]") {
    CHECK_THAT(tables::example4_error(0.9, 0.1), WithinAbs(5.0201e-2, 2e-4));
}

TEST_CASE("stability experiments", "[euler]") {
    const auto p1 = examples::example1(0.6);
    const auto none = stability_experiment(p1, 0.05, FuzzyNumber::singleton(0.0), 0.0);
    CHECK(none.max_ratio == 0.0);

    // the right-hand side ignores y: a perturbation is carried unchanged
    const auto shift = stability_experiment(p1, 0.05, FuzzyNumber::singleton(1e-3), 1e-3);
    CHECK_THAT(shift.max_ratio, WithinAbs(1.0, 1e-9));
    CHECK(shift.holds);

    const auto p2 = examples::example2(0.6);
    for (auto rule : {StepRule::local, StepRule::memory}) {
        const auto r = stability_experiment(p2, 0.02, FuzzyNumber::singleton(1e-3), 1e-3, SolveOptions{rule});
        CHECK(r.max_ratio <= 1.0 + 1e-9);
        CHECK(r.holds);
    }
    CHECK_THROWS_AS(stability_experiment(p2, 0.02, FuzzyNumber::singleton(1.0), 1e-3), DomainError);
}

TEST_CASE("switching points agree between solver and classification", "[euler][property]") {
    CHECK(checks::switching_consistency() < 1e-9);
}

TEST_CASE("declared type II plan lets the branches cross once", "[euler]") {
    // y = u (1 - t): width shrinks to zero at t = 1 and grows again
    const auto u = FuzzyNumber::triangular(0.0, 1.0, 2.0);
    FFIVP p;
    p.alpha = 1.0;
    p.y0 = u;
    p.T = 2.0;
    p.rhs = [u](double, const FuzzyNumber&) { return scalar_mul(-1.0, u).endpoints(); };
    p.plan = DiffPlan::alternating(0.0, 2.0, GhCase::case_ii, {1.0});
    const auto traj = solve(p, 0.25);
    CHECK_THAT(traj.y.back().lower().front(), WithinAbs(-2.0, 1e-14));
    CHECK_THAT(traj.y.back().upper().front(), WithinAbs(0.0, 1e-14));

    p.plan = DiffPlan::single(0.0, 2.0, GhCase::case_ii);
    CHECK_THROWS_AS(solve(p, 0.25), StepInvalidError);
}
