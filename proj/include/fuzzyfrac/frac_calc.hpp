#pragma once

#include <cmath>
#include <functional>
#include <limits>
#include <optional>
#include <span>
#include <type_traits>
#include <utility>
#include <vector>

#include "fuzzyfrac/error.hpp"
#include "fuzzyfrac/quadrature.hpp"
#include "fuzzyfrac/special.hpp"

namespace fuzzyfrac {

namespace detail {

/// eps^(1/3) times the local scale; close to lo the scale is the distance to
/// it, so data singular at lo is still resolved.
inline double difference_step(double t, double lo) {
    double scale = std::max(1.0, std::abs(t));
    if (t > lo) scale = std::min(scale, t - lo);
    return std::cbrt(std::numeric_limits<double>::epsilon()) * scale;
}

}  // namespace detail

/// Real function on [lo, hi] with an optional analytic derivative. Without
/// one, derivatives come from central differences (one-sided at the ends).
struct CrispFunction {
    std::function<double(double)> f;
    std::function<double(double)> df;
    double lo = -std::numeric_limits<double>::infinity();
    double hi = std::numeric_limits<double>::infinity();

    CrispFunction() = default;
    CrispFunction(std::function<double(double)> fn, std::function<double(double)> dfn = {},
                  double a = -std::numeric_limits<double>::infinity(),
                  double b = std::numeric_limits<double>::infinity())
        : f(std::move(fn)), df(std::move(dfn)), lo(a), hi(b) {}

    double operator()(double t) const { return f(t); }

    double derivative(double t) const {
        if (df) return df(t);
        const double hd = detail::difference_step(t, lo);
        if (t - hd >= lo && t + hd <= hi) return (f(t + hd) - f(t - hd)) / (2.0 * hd);
        if (t - hd < lo) return (-3.0 * f(t) + 4.0 * f(t + hd) - f(t + 2.0 * hd)) / (2.0 * hd);
        return (3.0 * f(t) - 4.0 * f(t - hd) + f(t - 2.0 * hd)) / (2.0 * hd);
    }
};

namespace detail {

inline void check_order(double alpha) {
    if (!(alpha > 0.0 && alpha <= 1.0)) throw DomainError("fractional order must lie in (0, 1]");
}

}  // namespace detail

/// Riemann-Liouville integral (1/Gamma(alpha)) int_a^t (t-s)^(alpha-1) g(s) ds.
inline double rl_integral(const CrispFunction& g, double a, double t, double alpha, const QuadratureSpec& q = {}) {
    detail::check_order(alpha);
    if (t < a) throw DomainError("rl_integral: t < a");
    if (t == a) return 0.0;
    return singular_kernel_integral(g.f, a, t, alpha - 1.0, q) / gamma_fn(alpha);
}

/// Caputo derivative core for a value function g and its derivative dg,
/// both returning double or std::vector<double>.
///
/// With the graded rule the half [a, m] is integrated by parts so only
/// values of g are needed there; this keeps derivatives of t^alpha-type
/// data (unbounded at a) out of the quadrature.
template <class G, class DG>
auto caputo_core(G&& g, DG&& dg, double a, double t, double alpha, const QuadratureSpec& q) {
    using R = std::decay_t<decltype(g(a))>;
    detail::check_order(alpha);
    if (!(t > a)) throw DomainError("caputo derivative: t must exceed a");
    if (alpha == 1.0) return R(dg(t));
    const double inv_gamma = 1.0 / gamma_fn(1.0 - alpha);

    if (q.scheme == QuadratureScheme::product_trapezoid) {
        R out = singular_kernel_integral(dg, a, t, -alpha, q);
        return detail::scaled(inv_gamma, std::move(out));
    }

    const double m = 0.5 * (a + t);
    const R ga = g(a);
    // [a, m]: K g' = [K (g - g(a))]_a^m - int K' (g - g(a)),  K = (t-s)^-alpha
    const R inner = graded_kernel_integral([&](double s) { return detail::combine(1.0, g(s), -1.0, ga); }, a, m, t,
                                           -alpha - 1.0, true, false, q);
    const R right = graded_kernel_integral(dg, m, t, t, -alpha, false, true, q);
    const double km = std::pow(t - m, -alpha);
    R out = detail::combine(km, g(m), -km, ga);
    detail::accumulate(out, -alpha, inner);
    detail::accumulate(out, 1.0, right);
    return detail::scaled(inv_gamma, std::move(out));
}

/// Central difference with step difference_step(t, lo); one-sided second-order
/// stencils when the centred one would leave [lo, hi].
template <class G>
auto finite_difference(G&& g, double t, double lo, double hi) {
    const double hd = detail::difference_step(t, lo);
    if (t - hd >= lo && t + hd <= hi) return detail::combine(0.5 / hd, g(t + hd), -0.5 / hd, g(t - hd));
    if (t - hd < lo) {
        auto d = detail::combine(-1.5 / hd, g(t), 2.0 / hd, g(t + hd));
        detail::accumulate(d, -0.5 / hd, g(t + 2.0 * hd));
        return d;
    }
    auto d = detail::combine(1.5 / hd, g(t), -2.0 / hd, g(t - hd));
    detail::accumulate(d, 0.5 / hd, g(t - 2.0 * hd));
    return d;
}

/// Caputo derivative (1/Gamma(1-alpha)) int_a^t (t-s)^(-alpha) g'(s) ds.
inline double caputo_derivative(const CrispFunction& g, double a, double t, double alpha,
                                const QuadratureSpec& q = {}) {
    return caputo_core(g.f, [&](double s) { return g.derivative(s); }, a, t, alpha, q);
}

/// Caputo derivative of a vector-valued function, componentwise; derivatives
/// by finite differences restricted to [a, hi].
template <class G>
std::vector<double> caputo_vector(G&& g, double a, double t, double alpha, const QuadratureSpec& q = {},
                                  double hi = std::numeric_limits<double>::infinity()) {
    auto dg = [&](double s) { return finite_difference(g, s, a, hi); };
    return caputo_core(g, dg, a, t, alpha, q);
}

/// RL integral of a vector-valued function, componentwise.
template <class G>
std::vector<double> rl_vector(G&& g, double a, double t, double alpha, const QuadratureSpec& q = {}) {
    detail::check_order(alpha);
    if (t < a) throw DomainError("rl_integral: t < a");
    return detail::scaled(1.0 / gamma_fn(alpha), singular_kernel_integral(g, a, t, alpha - 1.0, q));
}

// ---------------------------------------------------------------------------
// sampled data (piecewise-linear in s)

/// RL integral of the piecewise-linear interpolant; exact up to rounding.
inline double rl_integral_sampled(std::span<const double> nodes, std::span<const double> values, double t,
                                  double alpha) {
    detail::check_order(alpha);
    if (t <= nodes.front()) return 0.0;
    return product_trapezoid_sampled<double>(nodes, values, t, alpha - 1.0) / gamma_fn(alpha);
}

/// Caputo derivative of the piecewise-linear interpolant (the L1 rule).
inline double caputo_sampled(std::span<const double> nodes, std::span<const double> values, double t,
                             double alpha) {
    detail::check_order(alpha);
    if (!(t > nodes.front())) throw DomainError("caputo_sampled: t must exceed the first node");
    double acc = 0.0;
    for (std::size_t j = 0; j + 1 < nodes.size() && nodes[j] < t; ++j) {
        const double s0 = nodes[j];
        const double s1 = std::min(nodes[j + 1], t);
        const double slope = (values[j + 1] - values[j]) / (nodes[j + 1] - nodes[j]);
        if (alpha == 1.0) {
            if (t <= nodes[j + 1]) return slope;
            continue;
        }
        const double mom = (std::pow(t - s0, 1.0 - alpha) - std::pow(t - s1, 1.0 - alpha)) / (1.0 - alpha);
        acc += slope * mom;
    }
    return acc / gamma_fn(1.0 - alpha);
}

// ---------------------------------------------------------------------------
// roots

struct Bracket {
    double lo;
    double hi;
};

inline constexpr double kRootTolerance = 1e-6;

/// Sign change of any scalar function by bisection to width < tol.
template <class F>
double bisect(F&& fn, Bracket b, double tol = kRootTolerance) {
    double flo = fn(b.lo);
    const double fhi = fn(b.hi);
    if (flo == 0.0) return b.lo;
    if (fhi == 0.0) return b.hi;
    if (std::signbit(flo) == std::signbit(fhi)) throw NoRootError("no sign change on the bracket");
    double lo = b.lo, hi = b.hi;
    while (hi - lo >= tol) {
        const double mid = 0.5 * (lo + hi);
        const double fm = fn(mid);
        if (fm == 0.0) return mid;
        if (std::signbit(fm) == std::signbit(flo)) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

/// Location where t -> D^alpha g(t) changes sign inside the bracket.
inline double find_caputo_root(const CrispFunction& g, double a, double alpha, Bracket bracket,
                               const QuadratureSpec& q = {}) {
    if (!(bracket.lo > a) || !(bracket.hi > bracket.lo)) throw DomainError("find_caputo_root: bad bracket");
    return bisect([&](double t) { return caputo_derivative(g, a, t, alpha, q); }, bracket);
}

}  // namespace fuzzyfrac
