#include <catch_amalgamated.hpp>

#include <cmath>

#include "fuzzyfrac/checks.hpp"
#include "fuzzyfrac/tables.hpp"

using namespace fuzzyfrac;
using namespace fuzzyfrac::tables;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

TEST_CASE("iterate rows reproduce printed spot values", "[tables]") {
    const auto r1 = iterate_rows(iterate_run(1, 0.3, 0.2));
    REQUIRE(r1.size() == 10);
    CHECK(r1[0].k == 1);
    CHECK_THAT(r1[0].t_label, WithinAbs(0.1, 1e-15));
    CHECK_THAT(r1[0].value.first, WithinAbs(0.0, 1e-12));
    CHECK_THAT(r1[0].value.mid, WithinAbs(0.617034, 1e-6));
    CHECK_THAT(r1[0].value.last, WithinAbs(0.925551, 1e-6));

    const auto r2 = iterate_rows(iterate_run(2, 0.9, 0.02));
    CHECK_THAT(r2[1].value.mid, WithinAbs(0.939444, 1e-6));
    CHECK_THAT(r2[1].value.last, WithinAbs(1.87889, 1e-5));
}

TEST_CASE("reference tables agree with the closed forms", "[tables]") {
    // rows k of Example 1 are k h^alpha (0, 1, 1.5)
    for (std::size_t a = 0; a < 3; ++a)
        for (std::size_t s = 0; s < 2; ++s) {
            const double step = std::pow(kIterateSteps[s], kIterateAlphas[a]);
            for (std::size_t k = 0; k < 10; ++k)
                CHECK_THAT(kTable1[a][s][k].mid, WithinRel(static_cast<double>(k + 1) * step, 1e-5));
        }
    CHECK(max_deviation(iterate_rows(iterate_run(1, 0.6, 0.02)), kTable1[1][1]) < 5e-6);
    CHECK(max_deviation(iterate_rows(iterate_run(2, 0.3, 0.02)), kTable2[0][1]) < 5e-6);
}

TEST_CASE("print order and unscramble", "[tables]") {
    const auto pos = print_order(0.0, 0.5, 1.0);
    CHECK(pos.first == 0.0);
    CHECK(pos.last == 1.0);
    const auto neg = print_order(-1.0, -0.5, 0.0);
    CHECK(neg.first == 0.0);
    CHECK(neg.last == -1.0);
    const auto back = unscramble(neg);
    CHECK(back.first == -1.0);
    CHECK(back.mid == -0.5);
    CHECK(back.last == 0.0);
    const auto same = unscramble(pos);
    CHECK(same.first == 0.0);
    CHECK(same.last == 1.0);
}

TEST_CASE("Example 3 reference rows are valid after unscrambling", "[tables]") {
    for (const auto& row : kTable3)
        for (const auto& v : row) {
            const auto s = unscramble(v);
            CHECK(s.first <= s.mid);
            CHECK(s.mid <= s.last);
        }
}

TEST_CASE("Example 3 interpolation hits the labels", "[tables]") {
    const auto traj = example3_run(kTable3Alpha, 0.02);
    const auto rows = label_rows(traj, example3_labels());
    REQUIRE(rows.size() == 10);
    CHECK_THAT(rows.back().t_label, WithinAbs(2.0, 1e-15));
    // the template places the zero endpoint first in every row
    for (const auto& r : rows) CHECK_THAT(r.value.first, WithinAbs(0.0, 1e-9));
    CHECK_THROWS_AS(interpolate(traj, 2.5), DomainError);
}

TEST_CASE("runs are deterministic", "[tables]") {
    const auto a = iterate_run(2, 0.6, 0.2);
    const auto b = iterate_run(2, 0.6, 0.2);
    for (std::size_t k = 0; k < a.size(); ++k) CHECK(hausdorff_distance(a.y[k], b.y[k]) == 0.0);
    CHECK(example4_error(0.5, 0.05) == example4_error(0.5, 0.05));
}

TEST_CASE("Example 4 error cells", "[tables]") {
    CHECK_THAT(example4_error(0.9, 0.1), WithinRel(kTable4[0][4], 0.01));
    CHECK_THAT(example4_error(0.5, 0.05), WithinRel(kTable4[1][2], 0.02));
    CHECK(table4_excluded(3, 0));
    CHECK_FALSE(table4_excluded(3, 1));
}

TEST_CASE("quintic switching point reference", "[tables]") {
    for (std::size_t i = 0; i < kTable5.size(); ++i)
        CHECK_THAT(examples::example4_switching_point(kTable5Alphas[i]), WithinAbs(kTable5[i], 5e-4));
}

TEST_CASE("check lines", "[tables]") {
    const auto ok = checks::at_most("a", 0.5, 1.0);
    CHECK(checks::format_line(ok) == "a,0.5,<= 1,PASS");
    const auto bad = checks::within("b", 3.0, 1.6, 2.3);
    CHECK(checks::format_line(bad) == "b,3,[1.6, 2.3],FAIL");
    const auto err = checks::failed("c", "boom");
    CHECK(checks::format_line(err) == "c,nan,-,FAIL,boom");
    CHECK_FALSE(checks::at_most("d", std::nan(""), 1.0).pass);

    checks::Report r;
    r.guard("thrower", [](checks::Report&) { throw DomainError("x"); });
    REQUIRE(r.checks.size() == 1);
    CHECK_FALSE(r.passed());
    CHECK_FALSE(checks::Report{}.passed());
}
