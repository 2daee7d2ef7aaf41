#include <catch_amalgamated.hpp>

#include <cmath>

#include "fuzzyfrac/checks.hpp"
#include "fuzzyfrac/examples.hpp"
#include "fuzzyfrac/fuzzy_frac.hpp"

using namespace fuzzyfrac;
using Catch::Matchers::WithinAbs;

namespace {

void require_close(const FuzzyNumber& u, const FuzzyNumber& v, double tol) {
    REQUIRE(u.size() == v.size());
    for (std::size_t j = 0; j < u.size(); ++j) {
        CHECK_THAT(u.lower()[j], WithinAbs(v.lower()[j], tol));
        CHECK_THAT(u.upper()[j], WithinAbs(v.upper()[j], tol));
    }
}

}  // namespace

TEST_CASE("fuzzy RL integral of a constant", "[fuzzy_frac]") {
    const auto u = FuzzyNumber::triangular(0.0, 1.0, 1.5);
    const auto F = FuzzyFunction::closed([u](double) { return u; });
    for (double alpha : {0.3, 0.5, 0.9}) {
        const double t = 1.4;
        const auto I = fuzzy_rl_integral(F, 0.0, t, alpha);
        require_close(I, scalar_mul(std::pow(t, alpha) / std::tgamma(alpha + 1), u), 1e-10);
    }
    CHECK(magnitude(fuzzy_rl_integral(F, 0.5, 0.5, 0.5)) == 0.0);

    // sampled form on a grid starting at the terminal
    const auto S = FuzzyFunction::sampled({0.0, 0.5, 1.0, 1.4}, {u, u, u, u});
    require_close(fuzzy_rl_integral(S, 0.0, 1.4, 0.5), fuzzy_rl_integral(F, 0.0, 1.4, 0.5), 1e-12);
}

TEST_CASE("Caputo gH-derivative of the linear examples", "[fuzzy_frac]") {
    for (double alpha : {0.3, 0.6, 0.9}) {
        const auto p1 = examples::example1(alpha);
        const auto d1 = fuzzy_caputo_gh(*p1.exact, 0.0, 0.7, alpha, GhCase::case_i);
        require_close(d1, scalar_mul(std::tgamma(alpha + 1), FuzzyNumber::triangular(0, 1, 1.5)), 1e-12);

        const auto p2 = examples::example2(alpha);
        const double t = 0.6;
        const auto d2 = fuzzy_caputo_gh(*p2.exact, 0.0, t, alpha, GhCase::case_ii);
        require_close(d2, scalar_mul(-1.0, (*p2.exact)(t)), 1e-12);
        CHECK_THROWS_AS(fuzzy_caputo_gh(*p2.exact, 0.0, t, alpha, GhCase::case_i), WrongCaseError);
    }
}

TEST_CASE("numeric Caputo endpoints match the closed form", "[fuzzy_frac]") {
    const auto u = FuzzyNumber::triangular(0.0, 0.5, 1.0);
    const auto F = FuzzyFunction::closed([u](double t) { return scalar_mul(1.0 + t * t, u); }, 0.0, 2.0);
    const double alpha = 0.7, t = 1.2;
    const double d = 2.0 * std::pow(t, 2.0 - alpha) / std::tgamma(3.0 - alpha);
    require_close(fuzzy_caputo_gh(F, 0.0, t, alpha, GhCase::case_i), scalar_mul(d, u), 1e-7);
}

TEST_CASE("classification finds the type I point of the polynomial problem", "[fuzzy_frac]") {
    const double alphas[] = {0.3, 0.7, 0.9};
    const double roots[] = {0.9109, 0.7949, 0.7381};
    for (int i = 0; i < 3; ++i) {
        const auto p = examples::example4(alphas[i]);
        const auto plan = classify_differentiability(*p.exact, 0.0, 0.0, 1.0, alphas[i]);
        const auto sw = plan.switching_points();
        REQUIRE(sw.size() == 1);
        CHECK(sw[0].type == SwitchType::type_I);
        CHECK_THAT(sw[0].t, WithinAbs(roots[i], 5e-4));
        CHECK(plan.case_at(0.2) == GhCase::case_i);
        CHECK(plan.case_at(0.99) == GhCase::case_ii);
        // agrees with crisp root finding
        CHECK_THAT(sw[0].t, WithinAbs(find_caputo_root(examples::example4_crisp(), 0.0, alphas[i], {0.5, 1.0}), 1e-5));
    }
}

TEST_CASE("classification of single-case and crisp data", "[fuzzy_frac]") {
    const auto p1 = examples::example1(0.6);
    const auto plan1 = classify_differentiability(*p1.exact, 0.0, 0.0, 1.0, 0.6);
    REQUIRE(plan1.segments().size() == 1);
    CHECK(plan1.segments()[0].gh == GhCase::case_i);

    const auto p2 = examples::example2(0.6);
    CHECK(classify_differentiability(*p2.exact, 0.0, 0.0, 1.0, 0.6).segments()[0].gh == GhCase::case_ii);

    const auto crisp = FuzzyFunction::product(FuzzyNumber::singleton(2.0), examples::example4_crisp());
    const auto plan = classify_differentiability(crisp, 0.0, 0.0, 1.0, 0.5);
    REQUIRE(plan.segments().size() == 1);
    CHECK(plan.segments()[0].gh == GhCase::case_i);

    CHECK_THROWS_AS(classify_differentiability(crisp, 0.5, 0.2, 1.0, 0.5), DomainError);
}

TEST_CASE("plans tile and alternate", "[fuzzy_frac]") {
    const auto plan = DiffPlan::alternating(0.0, 2.0, GhCase::case_ii, {1.5, 0.5});
    REQUIRE(plan.segments().size() == 3);
    CHECK(plan.case_at(0.2) == GhCase::case_ii);
    CHECK(plan.case_at(0.5) == GhCase::case_i);
    CHECK(plan.case_at(2.0) == GhCase::case_ii);
    const auto sw = plan.switching_points();
    CHECK(sw[0].type == SwitchType::type_II);
    CHECK(sw[1].type == SwitchType::type_I);
    CHECK_THROWS_AS(DiffPlan::alternating(0.0, 1.0, GhCase::case_i, {1.5}), DomainError);
    CHECK_THROWS_AS(DiffPlan({{0.0, 0.5, GhCase::case_i}, {0.5, 1.0, GhCase::case_i}}), DomainError);
}

TEST_CASE("Taylor partial sums", "[fuzzy_frac]") {
    const auto u1 = FuzzyNumber::triangular(0.0, 1.0, 1.5);
    for (double alpha : {0.3, 0.9}) {
        // one term is exact for u t^alpha
        const double g1 = std::tgamma(alpha + 1);
        const auto s = taylor_partial_sum({FuzzyNumber::singleton(0.0), scalar_mul(g1, u1)}, {GhCase::case_i}, 0.0, 0.8, alpha);
        require_close(s, scalar_mul(std::pow(0.8, alpha), u1), 1e-14);
    }

    // D^alpha y = -y: alternating derivatives, every link case (ii)
    const auto u = FuzzyNumber::triangular(0.0, 1.0, 2.0);
    const double alpha = 0.8, t = 0.3;
    std::vector<FuzzyNumber> d;
    for (int i = 0; i <= 3; ++i) d.push_back(scalar_mul(i % 2 == 0 ? 1.0 : -1.0, u));
    const std::vector<GhCase> links(3, GhCase::case_ii);
    double series = 0.0;
    for (int i = 0; i <= 3; ++i) series += (i % 2 == 0 ? 1.0 : -1.0) * std::pow(t, i * alpha) / std::tgamma(i * alpha + 1);
    require_close(taylor_partial_sum(d, links, 0.0, t, alpha), scalar_mul(series, u), 1e-14);

    CHECK(attach_mode(links, 1) == GhCase::case_ii);
    CHECK(attach_mode(links, 2) == GhCase::case_i);
    CHECK_THROWS_AS(taylor_partial_sum(d, {GhCase::case_i}, 0.0, t, alpha), DomainError);
}

TEST_CASE("Taylor remainder reconstructs the function", "[fuzzy_frac]") {
    const auto u = FuzzyNumber::triangular(0.0, 0.5, 1.0);
    const double alpha = 0.6, t = 0.9;
    // f = u (1 + s^2), n = 1
    const auto d1 = FuzzyFunction::closed(
        [u, alpha](double s) { return scalar_mul(s > 0 ? 2.0 * std::pow(s, 2.0 - alpha) / std::tgamma(3.0 - alpha) : 0.0, u); },
        0.0, 2.0);
    const auto partial = taylor_partial_sum({u}, {}, 0.0, t, alpha);
    const auto rem = taylor_remainder(d1, 0.0, t, alpha, 1, GhCase::case_i);
    require_close(taylor_reconstruct(partial, rem), scalar_mul(1.0 + t * t, u), 1e-8);

    // two nested integrals of a constant
    const auto c = FuzzyFunction::closed([u](double) { return u; }, 0.0, 2.0);
    const auto r2 = taylor_remainder(c, 0.0, t, alpha, 2, GhCase::case_i);
    require_close(r2.value, scalar_mul(std::pow(t, 2 * alpha) / std::tgamma(2 * alpha + 1), u), 1e-6);
    CHECK(magnitude(taylor_remainder(c, 0.0, 0.0, alpha, 2, GhCase::case_i).value) == 0.0);
}

TEST_CASE("H-difference attachment refuses invalid sums", "[fuzzy_frac]") {
    const auto narrow = FuzzyNumber::triangular(0.0, 0.1, 0.2);
    const auto wide = FuzzyNumber::triangular(0.0, 1.0, 2.0);
    CHECK_THROWS_AS(attach_term(narrow, wide, GhCase::case_ii), ExpansionInvalidError);
}

TEST_CASE("integral then derivative is the identity", "[fuzzy_frac][property]") {
    CHECK(checks::reversal_residual() < 1e-8);
}
