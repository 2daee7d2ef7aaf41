#pragma once

// Quadrature for weakly singular Volterra kernels
//
//     Q(t) = int_a^t (t - s)^beta phi(s) ds,   beta > -1.
//
// Two rules are provided:
//  * graded_gauss: Gauss-Legendre on panels that shrink geometrically toward
//    both ends of [a, t]. The kernel singularity at s = t and any algebraic
//    behaviour of phi at s = a (t^alpha-type data) are resolved by the
//    grading; the innermost panel at t uses the exact kernel moment.
//  * product_trapezoid: phi replaced by its piecewise-linear interpolant on a
//    uniform mesh and integrated exactly against the kernel. Exact for
//    sampled (piecewise-linear) data, O(h^2) otherwise; the closed-form
//    driver doubles the mesh with Richardson extrapolation until the
//    tolerance is met.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <cstdlib>
#include <limits>
#include <map>
#include <mutex>
#include <numbers>
#include <span>
#include <type_traits>
#include <vector>

#include "fuzzyfrac/error.hpp"

namespace fuzzyfrac {

enum class QuadratureScheme { graded_gauss, product_trapezoid };

struct QuadratureSpec {
    QuadratureScheme scheme = QuadratureScheme::graded_gauss;
    std::size_t nodes_per_unit = 256;  // product-trapezoid and sampled layers
    double tolerance = 1e-8;           // absolute
    std::size_t gauss_points = 16;
    double grading_ratio = 0.15;
    std::size_t grading_levels = 40;
    std::size_t max_nodes = std::size_t{1} << 17;

    void check() const {
        if (nodes_per_unit < 2) throw DomainError("quadrature needs at least 2 nodes per unit");
        if (!(tolerance > 0.0)) throw DomainError("quadrature tolerance must be positive");
        if (gauss_points < 2) throw DomainError("need at least 2 Gauss points");
        if (!(grading_ratio > 0.0 && grading_ratio < 1.0)) throw DomainError("grading ratio must lie in (0,1)");
    }
};

/// Default spec with FFSOLVE_QUAD_NODES applied when set.
inline QuadratureSpec quadrature_from_environment(QuadratureSpec base = {}) {
    if (const char* env = std::getenv("FFSOLVE_QUAD_NODES")) {
        char* end = nullptr;
        const long n = std::strtol(env, &end, 10);
        if (end != env && n >= 2) base.nodes_per_unit = static_cast<std::size_t>(n);
    }
    return base;
}

// ---------------------------------------------------------------------------
// Gauss-Legendre rule on [-1, 1]

struct GaussRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};

inline GaussRule compute_gauss_legendre(std::size_t n) {
    GaussRule rule;
    rule.nodes.resize(n);
    rule.weights.resize(n);
    const std::size_t half = (n + 1) / 2;
    for (std::size_t i = 0; i < half; ++i) {
        double x = std::cos(std::numbers::pi * (static_cast<double>(i) + 0.75) / (static_cast<double>(n) + 0.5));
        double dp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = x;
            for (std::size_t k = 2; k <= n; ++k) {
                const double kd = static_cast<double>(k);
                const double p2 = ((2.0 * kd - 1.0) * x * p1 - (kd - 1.0) * p0) / kd;
                p0 = p1;
                p1 = p2;
            }
            dp = static_cast<double>(n) * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-16) break;
        }
        rule.nodes[i] = -x;
        rule.nodes[n - 1 - i] = x;
        const double w = 2.0 / ((1.0 - x * x) * dp * dp);
        rule.weights[i] = w;
        rule.weights[n - 1 - i] = w;
    }
    return rule;
}

inline const GaussRule& gauss_legendre(std::size_t n) {
    static std::mutex mu;
    static std::map<std::size_t, GaussRule> cache;
    std::lock_guard lock(mu);
    auto it = cache.find(n);
    if (it == cache.end()) it = cache.emplace(n, compute_gauss_legendre(n)).first;
    return it->second;
}

// ---------------------------------------------------------------------------
// scalar / vector accumulation helpers

namespace detail {

template <class R>
void accumulate(R& acc, double w, const R& v) {
    if constexpr (std::is_same_v<R, double>) {
        acc += w * v;
    } else {
        if (acc.empty()) acc.assign(v.size(), 0.0);
        for (std::size_t i = 0; i < v.size(); ++i) acc[i] += w * v[i];
    }
}

template <class R>
R zero_like(const R& v) {
    if constexpr (std::is_same_v<R, double>) {
        (void)v;
        return 0.0;
    } else {
        return R(v.size(), 0.0);
    }
}

template <class R>
double sup_norm(const R& v) {
    if constexpr (std::is_same_v<R, double>) {
        return std::abs(v);
    } else {
        double m = 0.0;
        for (double x : v) m = std::max(m, std::abs(x));
        return m;
    }
}

template <class R>
R combine(double wa, const R& a, double wb, const R& b) {
    if constexpr (std::is_same_v<R, double>) {
        return wa * a + wb * b;
    } else {
        R out(a.size());
        for (std::size_t i = 0; i < a.size(); ++i) out[i] = wa * a[i] + wb * b[i];
        return out;
    }
}

template <class R>
R scaled(double k, R v) {
    if constexpr (std::is_same_v<R, double>) {
        return k * v;
    } else {
        for (auto& x : v) x *= k;
        return v;
    }
}

}  // namespace detail

struct Panel {
    double lo;
    double hi;
};

/// Offsets d_0 = len > d_1 > ... > d_L shrinking by `ratio`, stopping before
/// they drop below the floating-point spacing of `scale`.
inline std::vector<double> geometric_offsets(double len, double ratio, std::size_t levels, double scale) {
    const double floor = 1024.0 * std::numeric_limits<double>::epsilon() * std::max(scale, len);
    std::vector<double> off{len};
    while (off.size() <= levels && off.back() * ratio > floor) off.push_back(off.back() * ratio);
    return off;
}

/// Gauss-Legendre over a list of panels of the integrand f.
template <class F>
auto integrate_panels(F&& f, const std::vector<Panel>& panels, std::size_t n) {
    using R = std::decay_t<decltype(f(0.0))>;
    const GaussRule& rule = gauss_legendre(n);
    R acc{};
    bool first = true;
    for (const auto& p : panels) {
        const double c = 0.5 * (p.lo + p.hi);
        const double h = 0.5 * (p.hi - p.lo);
        for (std::size_t i = 0; i < n; ++i) {
            const R v = f(c + h * rule.nodes[i]);
            if (first) {
                acc = detail::zero_like(v);
                first = false;
            }
            detail::accumulate(acc, h * rule.weights[i], v);
        }
    }
    return acc;
}

// ---------------------------------------------------------------------------
// product trapezoid moments

/// Moments of (t - s)^beta on [s0, s1] against the hat functions: returns
/// {w0, w1} with int (t-s)^beta L(s) ds = w0 L(s0) + w1 L(s1). Closed form
/// next to the singularity; Gauss-Legendre once the interval is at least
/// four widths from t, where the closed form loses digits to cancellation.
inline std::array<double, 2> trapezoid_moments(double s0, double s1, double t, double beta) {
    const double d = s1 - s0;
    const double u0 = t - s0;
    const double u1 = std::max(t - s1, 0.0);
    if (u1 >= 4.0 * d) {
        const GaussRule& rule = gauss_legendre(8);
        double w0 = 0.0, w1 = 0.0;
        for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
            const double x = 0.5 * (1.0 + rule.nodes[i]);  // position in [0, 1]
            const double k = 0.5 * rule.weights[i] * d * std::pow(u0 - x * d, beta);
            w0 += k * (1.0 - x);
            w1 += k * x;
        }
        return {w0, w1};
    }
    const double b1 = beta + 1.0;
    const double b2 = beta + 2.0;
    const double m0 = (std::pow(u0, b1) - std::pow(u1, b1)) / b1;
    // int (t-s)^beta (s - s0) ds with s - s0 = u0 - u
    const double m1 = u0 * m0 - (std::pow(u0, b2) - std::pow(u1, b2)) / b2;
    const double w1 = m1 / d;
    return {m0 - w1, w1};
}

/// int_{nodes.front()}^{t} (t - s)^beta L(s) ds where L interpolates the
/// samples linearly; t must lie in [nodes.front(), nodes.back()].
template <class R>
R product_trapezoid_sampled(std::span<const double> nodes, std::span<const R> values, double t, double beta) {
    if (nodes.size() != values.size() || nodes.size() < 2)
        throw DomainError("product trapezoid needs matching node/value arrays");
    R acc = detail::zero_like(values[0]);
    for (std::size_t j = 0; j + 1 < nodes.size(); ++j) {
        const double s0 = nodes[j];
        if (s0 >= t) break;
        double s1 = nodes[j + 1];
        R v1 = values[j + 1];
        if (s1 > t) {
            const double w = (t - s0) / (s1 - s0);
            v1 = detail::combine(1.0 - w, values[j], w, values[j + 1]);
            s1 = t;
        }
        const auto w = trapezoid_moments(s0, s1, t, beta);
        detail::accumulate(acc, w[0], values[j]);
        detail::accumulate(acc, w[1], v1);
    }
    return acc;
}

template <class F>
auto product_trapezoid_uniform(F&& phi, double a, double t, double beta, std::size_t n) {
    using R = std::decay_t<decltype(phi(a))>;
    std::vector<double> s(n + 1);
    std::vector<R> v;
    v.reserve(n + 1);
    for (std::size_t j = 0; j <= n; ++j) {
        s[j] = a + (t - a) * static_cast<double>(j) / static_cast<double>(n);
        if (j == n) s[j] = t;
        v.push_back(phi(s[j]));
    }
    return product_trapezoid_sampled<R>(s, v, t, beta);
}

// ---------------------------------------------------------------------------
// drivers

/// int_lo^hi (t - s)^beta phi(s) ds with t >= hi by Gauss-Legendre on
/// geometrically graded panels. Grading toward hi works in the distance
/// variable u = t - s so the kernel is evaluated without cancellation; the
/// innermost sliver at a graded end uses the midpoint value of phi against
/// the exact kernel moment.
template <class F>
auto graded_kernel_integral(F&& phi, double lo, double hi, double t, double beta, bool grade_lo, bool grade_hi,
                            const QuadratureSpec& q) {
    using R = std::decay_t<decltype(phi(lo))>;
    const GaussRule& rule = gauss_legendre(q.gauss_points);
    const double b1 = beta + 1.0;
    R acc = detail::zero_like(phi(0.5 * (lo + hi)));
    if (!(hi > lo)) return acc;

    // Gauss on u in [u0, u1], s = t - u
    auto gauss_u = [&](double u0, double u1) {
        const double c = 0.5 * (u0 + u1);
        const double h = 0.5 * (u1 - u0);
        for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
            const double u = c + h * rule.nodes[i];
            detail::accumulate(acc, h * rule.weights[i] * std::pow(u, beta), phi(t - u));
        }
    };
    auto moment_u = [&](double u0, double u1) { return (std::pow(u1, b1) - std::pow(u0, b1)) / b1; };

    double split_lo = lo, split_hi = hi;
    if (grade_lo && grade_hi) split_lo = split_hi = 0.5 * (lo + hi);
    else if (grade_lo) split_lo = hi;
    else if (grade_hi) split_hi = lo;
    // ungraded remainder, if any
    if (!grade_lo && !grade_hi) gauss_u(t - hi, t - lo);

    if (grade_lo) {
        const auto off = geometric_offsets(split_lo - lo, q.grading_ratio, q.grading_levels, std::abs(lo));
        for (std::size_t i = 0; i + 1 < off.size(); ++i) gauss_u(t - lo - off[i], t - lo - off[i + 1]);
        const double e = off.back();
        detail::accumulate(acc, moment_u(t - lo - e, t - lo), phi(lo + 0.5 * e));
    }
    if (grade_hi) {
        const double u0 = t - hi;
        const auto offs = geometric_offsets(hi - split_hi, q.grading_ratio, q.grading_levels, u0);
        for (std::size_t i = 0; i + 1 < offs.size(); ++i) gauss_u(u0 + offs[i + 1], u0 + offs[i]);
        const double e = offs.back();
        detail::accumulate(acc, moment_u(u0, u0 + e), phi(t - u0 - 0.5 * e));
    }
    return acc;
}

/// int_a^t (t - s)^beta phi(s) ds for a closed-form integrand.
template <class F>
auto singular_kernel_integral(F&& phi, double a, double t, double beta, const QuadratureSpec& q) {
    using R = std::decay_t<decltype(phi(a))>;
    if (!(beta > -1.0)) throw DomainError("kernel exponent must exceed -1");
    if (t < a) throw DomainError("upper limit below lower limit");
    if (t == a) return detail::zero_like(phi(a));

    if (q.scheme == QuadratureScheme::product_trapezoid) {
        std::size_t n = std::max<std::size_t>(8, static_cast<std::size_t>(std::ceil(q.nodes_per_unit * (t - a))));
        R coarse = product_trapezoid_uniform(phi, a, t, beta, n);
        R best = coarse;
        bool have_extrapolated = false;
        while (2 * n <= q.max_nodes) {
            n *= 2;
            R fine = product_trapezoid_uniform(phi, a, t, beta, n);
            R extrapolated = detail::combine(4.0 / 3.0, fine, -1.0 / 3.0, coarse);
            if (have_extrapolated) {
                const double change = detail::sup_norm(detail::combine(1.0, extrapolated, -1.0, best));
                best = extrapolated;
                if (change < q.tolerance) return best;
            } else {
                best = extrapolated;
                have_extrapolated = true;
            }
            coarse = fine;
        }
        return best;
    }

    return graded_kernel_integral(phi, a, t, t, beta, true, true, q);
}

}  // namespace fuzzyfrac
