#pragma once

// The four built-in test problems.

#include <cmath>
#include <numbers>
#include <vector>

#include "fuzzyfrac/euler.hpp"
#include "fuzzyfrac/special.hpp"

namespace fuzzyfrac::examples {

/// (0,1,1.5) ⊙ Gamma(alpha+1) right-hand side; y(t) = (0,1,1.5) ⊙ t^alpha.
inline FFIVP example1(double alpha, double T = 1.0, std::size_t m = kDefaultLevelCount) {
    const auto u = FuzzyNumber::triangular(0.0, 1.0, 1.5, m);
    const double g1 = gamma_fn(alpha + 1.0);
    const auto f = scalar_mul(g1, u);
    FFIVP p;
    p.alpha = alpha;
    p.y0 = FuzzyNumber::singleton(0.0, m);
    p.t0 = 0.0;
    p.T = T;
    p.rhs = [f](double, const FuzzyNumber&) { return f.endpoints(); };
    p.plan = DiffPlan::single(p.t0, p.T, GhCase::case_i);
    auto exact = FuzzyFunction::product(u, CrispFunction([alpha](double t) { return std::pow(t, alpha); }, {}, 0.0, T));
    exact.with_caputo({alpha, 0.0, [g1](double) { return g1; }});
    p.exact = std::move(exact);
    return p;
}

/// D^alpha y = (-1) ⊙ y, y(0) = (0,1,2); y(t) = (0,1,2) ⊙ E_alpha(-t^alpha).
inline FFIVP example2(double alpha, double T = 1.0, std::size_t m = kDefaultLevelCount) {
    const auto u = FuzzyNumber::triangular(0.0, 1.0, 2.0, m);
    FFIVP p;
    p.alpha = alpha;
    p.y0 = u;
    p.t0 = 0.0;
    p.T = T;
    p.rhs = [](double, const FuzzyNumber& y) {
        EndpointValues f{y.upper(), y.lower()};
        for (auto& v : f.lower) v = -v;
        for (auto& v : f.upper) v = -v;
        return f;
    };
    p.plan = DiffPlan::single(p.t0, p.T, GhCase::case_ii);
    MittagLeffler E(alpha);
    auto exact = FuzzyFunction::product(u, CrispFunction([E, alpha](double t) { return E(-std::pow(t, alpha)); }, {}, 0.0, T));
    exact.with_caputo({alpha, 0.0, [E, alpha](double t) { return -E(-std::pow(t, alpha)); }});
    p.exact = std::move(exact);
    return p;
}

/// D^alpha cos(omega t) from 0, omega = alpha pi.
inline double example3_coefficient(double alpha, double t) {
    const double w = alpha * std::numbers::pi;
    if (t <= 0.0) return 0.0;
    return -w * w * std::pow(t, 2.0 - alpha) / gamma_fn(3.0 - alpha) *
           hyp_1f2(1.5 - 0.5 * alpha, 2.0 - 0.5 * alpha, -0.25 * w * w * t * t);
}

/// Switching point of Example 3 quoted for alpha = 0.8.
inline constexpr double kExample3Switch = 1.40426;

/// D^alpha y = c(t) ⊙ (0, 1/2, 1) with y(t) = (0, 1/2, 1) ⊙ cos(alpha pi t).
/// The derivative is taken from 0; t0 = 0 keeps that history for the
/// memory rule, t0 = 1 starts from the stated initial value.
inline FFIVP example3(double alpha = 0.8, double t0 = 1.0, double T = 2.0, std::size_t m = kDefaultLevelCount) {
    const auto u = FuzzyNumber::triangular(0.0, 0.5, 1.0, m);
    const double w = alpha * std::numbers::pi;
    FFIVP p;
    p.alpha = alpha;
    p.t0 = t0;
    p.T = T;
    p.caputo_base = 0.0;
    p.y0 = scalar_mul(std::cos(w * t0), u);
    p.rhs = [u, alpha](double t, const FuzzyNumber&) { return scalar_mul(example3_coefficient(alpha, t), u).endpoints(); };
    auto exact = FuzzyFunction::product(
        u, CrispFunction([w](double t) { return std::cos(w * t); }, [w](double t) { return -w * std::sin(w * t); }, 0.0, T));
    exact.with_caputo({alpha, 0.0, [alpha](double t) { return example3_coefficient(alpha, t); }});
    p.exact = std::move(exact);
    return p;  // plan left to classification
}

/// Plan with the single quoted switching point, case (i) before it.
inline DiffPlan example3_declared_plan(double t0, double T) {
    return DiffPlan::alternating(t0, T, GhCase::case_i, {kExample3Switch});
}

/// p(t) = t^5 - 3 t^4 + 2 t^3.
inline double example4_poly(double t) { return t * t * t * (t * t - 3.0 * t + 2.0); }

inline double example4_poly_caputo(double alpha, double t) {
    if (t <= 0.0) return 0.0;
    return gamma_fn(6.0) / gamma_fn(6.0 - alpha) * std::pow(t, 5.0 - alpha) -
           3.0 * gamma_fn(5.0) / gamma_fn(5.0 - alpha) * std::pow(t, 4.0 - alpha) +
           2.0 * gamma_fn(4.0) / gamma_fn(4.0 - alpha) * std::pow(t, 3.0 - alpha);
}

inline CrispFunction example4_crisp() {
    return CrispFunction(example4_poly, [](double t) { return t * t * (5.0 * t * t - 12.0 * t + 6.0); }, 0.0, 1.0);
}

/// sqrt(eta) ⊙ D^alpha y + y^2 = G(t) ⊙ eta, eta = (1,2,3), with
/// G = D^alpha p + p^2 so that y(t) = sqrt(eta) ⊙ p(t). The right-hand side
/// is isolated per endpoint: f^± = (G eta^± - (y^±)^2) / sqrt(eta^±).
inline FFIVP example4(double alpha, std::size_t m = kDefaultLevelCount) {
    const auto eta = FuzzyNumber::triangular(1.0, 2.0, 3.0, m);
    const auto root = apply_monotone([](double x) { return std::sqrt(x); }, eta);
    FFIVP p;
    p.alpha = alpha;
    p.t0 = 0.0;
    p.T = 1.0;
    p.y0 = FuzzyNumber::singleton(0.0, m);
    p.rhs = [eta, root, alpha](double t, const FuzzyNumber& y) {
        const double pt = example4_poly(t);
        const double G = example4_poly_caputo(alpha, t) + pt * pt;
        EndpointValues f{std::vector<double>(y.size()), std::vector<double>(y.size())};
        for (std::size_t j = 0; j < y.size(); ++j) {
            f.lower[j] = (G * eta.lower()[j] - y.lower()[j] * y.lower()[j]) / root.lower()[j];
            f.upper[j] = (G * eta.upper()[j] - y.upper()[j] * y.upper()[j]) / root.upper()[j];
        }
        return f;
    };
    p.plan = DiffPlan::single(p.t0, p.T, GhCase::case_i);
    auto exact = FuzzyFunction::product(root, example4_crisp());
    exact.with_caputo({alpha, 0.0, [alpha](double t) { return example4_poly_caputo(alpha, t); }});
    p.exact = std::move(exact);
    return p;
}

/// Switching point of the Example 4 solution: root of D^alpha p on [0.5, 1].
inline double example4_switching_point(double alpha, const QuadratureSpec& q = {}) {
    return find_caputo_root(example4_crisp(), 0.0, alpha, {0.5, 1.0}, q);
}

}  // namespace fuzzyfrac::examples
