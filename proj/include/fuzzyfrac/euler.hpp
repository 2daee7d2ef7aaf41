#pragma once

// Generalized fuzzy Euler method for ^C D^alpha y = f(t, y) under a
// differentiability plan, and the error / stability analysis around it.
//
// The solver carries two branch sequences A, B per level (A starts at the
// lower endpoint). A case (i) step adds f^- to the lower branch and f^+ to
// the upper one; case (ii) crosses them. At a type II switching point the
// width passes through zero and the branches exchange roles, so the branch
// that used to be lower keeps receiving the same endpoint of f.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "fuzzyfrac/error.hpp"
#include "fuzzyfrac/frac_calc.hpp"
#include "fuzzyfrac/fuzzy_frac.hpp"
#include "fuzzyfrac/fuzzy_function.hpp"
#include "fuzzyfrac/fuzzy_number.hpp"

namespace fuzzyfrac {

/// Right-hand side evaluated per level: lower/upper are f^-(t, y; r) and
/// f^+(t, y; r).
using Rhs = std::function<EndpointValues(double t, const FuzzyNumber& y)>;

struct FFIVP {
    double alpha = 1.0;
    Rhs rhs;
    FuzzyNumber y0 = FuzzyNumber::singleton(0.0);
    double t0 = 0.0;
    double T = 1.0;
    std::optional<DiffPlan> plan;           // empty: classify automatically
    std::optional<FuzzyFunction> exact;
    std::optional<double> lipschitz;        // estimated by sampling when absent
    double caputo_base = 0.0;               // lower terminal of the derivative
    std::optional<double> d2alpha_bound;    // sup_t H(D^{2 alpha} y, 0)

    void check() const {
        detail::check_order(alpha);
        if (!rhs) throw DomainError("problem has no right-hand side");
        if (!(T > t0)) throw DomainError("problem interval is empty");
        if (auto rep = validate(y0); !rep) throw DomainError("initial value is not a fuzzy number: " + rep.reason);
    }
};

enum class StepRule {
    local,   // y_{k+1} = y_k ⊕ c f(t_k, y_k), c = h^alpha / Gamma(alpha + 1)
    memory,  // y_{n+1} = y_0 ⊕ sum_j w_{n,j} f(t_j, y_j), fractional rectangle weights
};

inline const char* to_string(StepRule r) { return r == StepRule::local ? "local" : "memory"; }

struct SolveOptions {
    StepRule rule = StepRule::local;
    bool enforce_validity = true;  // false: run formally, storing raw branches
    std::size_t plan_samples = 200;
    QuadratureSpec quadrature = {};
};

struct FuzzyTrajectory {
    double h = 0.0;
    std::vector<double> t;
    std::vector<FuzzyNumber> y;
    std::vector<GhCase> step_case;  // case used by the step leaving t_k
    DiffPlan plan;

    std::size_t size() const noexcept { return t.size(); }
};

inline std::size_t step_count(double t0, double T, double h) {
    if (!(h > 0.0)) throw DomainError("step size must be positive");
    const double n = std::round((T - t0) / h);
    if (n < 1.0 || std::abs(n * h - (T - t0)) > 1e-12 * std::max(1.0, std::abs(T)))
        throw DomainError("step size must divide the interval");
    return static_cast<std::size_t>(n);
}

inline double euler_coefficient(double h, double alpha) { return std::pow(h, alpha) / gamma_fn(alpha + 1.0); }

namespace detail {

inline constexpr int kCrisp = 2;

/// Order of the branches: +1 when A <= B at every level, -1 when A >= B,
/// kCrisp when they coincide, 0 when levels disagree.
inline int branch_order(const std::vector<double>& A, const std::vector<double>& B, double slack) {
    bool le = true, ge = true;
    for (std::size_t j = 0; j < A.size(); ++j) {
        if (A[j] > B[j] + slack) le = false;
        if (A[j] < B[j] - slack) ge = false;
    }
    if (le && ge) return kCrisp;
    if (le) return +1;
    if (ge) return -1;
    return 0;
}

inline double branch_slack(const std::vector<double>& A, const std::vector<double>& B) {
    double s = 1.0;
    for (std::size_t j = 0; j < A.size(); ++j) s = std::max({s, std::abs(A[j]), std::abs(B[j])});
    return 64.0 * std::numeric_limits<double>::epsilon() * s;
}

}  // namespace detail

DiffPlan resolve_plan(const FFIVP& p, double h, const SolveOptions& opt);

/// Core stepping loop on a resolved plan.
inline FuzzyTrajectory solve_with_plan(const FFIVP& p, double h, const DiffPlan& plan, const SolveOptions& opt) {
    p.check();
    const std::size_t n = step_count(p.t0, p.T, h);
    if (opt.rule == StepRule::memory && p.t0 != p.caputo_base)
        throw UnsupportedError("the memory rule needs the history from the lower terminal; set t0 to it");

    const auto& levels = p.y0.levels();
    const std::size_t m = levels.size();
    const double c = euler_coefficient(h, p.alpha);

    // each type II switching point licenses one crossing of the branches
    // between its neighbouring switching points
    const auto switches = plan.switching_points();
    std::vector<bool> licence_used(switches.size(), false);
    auto find_licence = [&](double tk, double tk1) -> std::optional<std::size_t> {
        for (std::size_t s = 0; s < switches.size(); ++s) {
            if (switches[s].type != SwitchType::type_II || licence_used[s]) continue;
            const double lo = s > 0 ? switches[s - 1].t : -std::numeric_limits<double>::infinity();
            const double hi = s + 1 < switches.size() ? switches[s + 1].t : std::numeric_limits<double>::infinity();
            if (tk1 > lo && tk < hi) return s;
        }
        return std::nullopt;
    };

    FuzzyTrajectory traj;
    traj.h = h;
    traj.plan = plan;
    traj.t.reserve(n + 1);
    traj.y.reserve(n + 1);
    traj.t.push_back(p.t0);
    traj.y.push_back(p.y0);

    std::vector<double> A = p.y0.lower(), B = p.y0.upper();
    const std::vector<double> A0 = A, B0 = B;
    std::vector<std::vector<double>> histA, histB;  // memory rule increments
    std::vector<double> weight;                     // w_i = (i+1)^alpha - i^alpha
    bool swapped = false;
    // +1 / -1 once the branches have separated, 0 while the value is crisp
    int order = detail::branch_order(A, B, detail::branch_slack(A, B)) == detail::kCrisp ? 0 : +1;

    for (std::size_t k = 0; k < n; ++k) {
        const double tk = p.t0 + static_cast<double>(k) * h;
        const double tk1 = k + 1 == n ? p.T : p.t0 + static_cast<double>(k + 1) * h;
        const GhCase gh = plan.case_at(tk);
        traj.step_case.push_back(gh);

        const EndpointValues f = p.rhs(tk, traj.y.back());
        if (f.lower.size() != m || f.upper.size() != m) throw DomainError("right-hand side returned the wrong level count");
        const bool lower_to_A = (gh == GhCase::case_i) != swapped;
        const auto& incA = lower_to_A ? f.lower : f.upper;
        const auto& incB = lower_to_A ? f.upper : f.lower;

        if (opt.rule == StepRule::local) {
            for (std::size_t j = 0; j < m; ++j) {
                A[j] += c * incA[j];
                B[j] += c * incB[j];
            }
        } else {
            histA.push_back(incA);
            histB.push_back(incB);
            weight.push_back(std::pow(static_cast<double>(k + 1), p.alpha) - std::pow(static_cast<double>(k), p.alpha));
            A = A0;
            B = B0;
            for (std::size_t i = 0; i <= k; ++i) {
                const double w = c * weight[k - i];
                for (std::size_t j = 0; j < m; ++j) {
                    A[j] += w * histA[i][j];
                    B[j] += w * histB[i][j];
                }
            }
        }

        // the switching point falls in (t_k, t_{k+1}]: later steps use the new regime
        for (const auto& s : switches)
            if (s.type == SwitchType::type_II && s.t > tk && s.t <= tk1) swapped = !swapped;

        if (!opt.enforce_validity) {
            traj.t.push_back(tk1);
            traj.y.emplace_back(levels, A, B);
            continue;
        }

        const int now = detail::branch_order(A, B, detail::branch_slack(A, B));
        if (now == 0)
            throw StepInvalidError(tk, k, "step from t = " + std::to_string(tk) +
                                              " gives crossed endpoints on some levels only (h too large or wrong plan)");
        if (now == detail::kCrisp) {
            // width passes through zero: nothing to compare yet
        } else if (order == 0) {
            order = now;
        } else if (now != order) {
            const auto lic = find_licence(tk, tk1);
            if (!lic)
                throw StepInvalidError(tk, k, "step from t = " + std::to_string(tk) +
                                                  " drives the width below zero (h too large or wrong plan)");
            licence_used[*lic] = true;
            order = now;
        }
        std::vector<double> lo(m), hi(m);
        for (std::size_t j = 0; j < m; ++j) {
            lo[j] = std::min(A[j], B[j]);
            hi[j] = std::max(A[j], B[j]);
        }
        FuzzyNumber next(levels, std::move(lo), std::move(hi));
        if (auto rep = validate(next); !rep)
            throw StepInvalidError(tk, k, "step from t = " + std::to_string(tk) + " breaks nested level sets: " + rep.reason);
        traj.t.push_back(tk1);
        traj.y.push_back(std::move(next));
    }
    return traj;
}

/// Declared plan, or one classified from the exact solution, or from a
/// formal case (i) predictor pass when no exact solution is known.
inline DiffPlan resolve_plan(const FFIVP& p, double h, const SolveOptions& opt) {
    if (p.plan) return *p.plan;
    ClassifyOptions co;
    co.samples = opt.plan_samples;
    if (p.exact) return classify_differentiability(*p.exact, p.caputo_base, p.t0, p.T, p.alpha, opt.quadrature, co);

    SolveOptions formal = opt;
    formal.enforce_validity = false;
    auto pred = solve_with_plan(p, h, DiffPlan::single(p.t0, p.T), formal);
    std::vector<FuzzyNumber> sorted;
    for (const auto& y : pred.y) {
        std::vector<double> lo(y.size()), hi(y.size());
        for (std::size_t j = 0; j < y.size(); ++j) {
            lo[j] = std::min(y.lower()[j], y.upper()[j]);
            hi[j] = std::max(y.lower()[j], y.upper()[j]);
        }
        sorted.emplace_back(y.levels(), std::move(lo), std::move(hi));
    }
    const auto F = FuzzyFunction::sampled(pred.t, sorted);
    return classify_differentiability(F, p.t0, p.t0, p.T, p.alpha, opt.quadrature, co);
}

inline FuzzyTrajectory solve(const FFIVP& p, double h, const SolveOptions& opt = {}) {
    p.check();
    step_count(p.t0, p.T, h);
    return solve_with_plan(p, h, resolve_plan(p, h, opt), opt);
}

// ---------------------------------------------------------------------------
// error analysis

/// e_k = H(y(t_k), y_k).
inline std::vector<double> global_error(const FuzzyTrajectory& traj, const FuzzyFunction& exact) {
    std::vector<double> e(traj.size());
    for (std::size_t k = 0; k < traj.size(); ++k) e[k] = hausdorff_distance(exact(traj.t[k]), traj.y[k]);
    return e;
}

inline double max_of(const std::vector<double>& v) {
    double m = 0.0;
    for (double x : v) m = std::max(m, x);
    return m;
}

/// H(D^{2 alpha} y(t), 0) for the exact solution, as two chained Caputo
/// derivatives; a closed-form first link is used when attached.
inline double second_caputo_magnitude(const FuzzyFunction& exact, double a, double t, double alpha,
                                      const QuadratureSpec& q = {}) {
    if (exact.kind() == FuzzyFunction::Kind::product) {
        const auto& g = exact.crisp();
        const double hi = g.hi;
        std::function<double(double)> first;
        if (exact.known_caputo(alpha, a, t)) {
            first = [&exact, alpha, a](double s) { return *exact.known_caputo(alpha, a, s); };
        } else {
            // D^alpha g at s = a is the limit from the right
            first = [&g, a, alpha, q, hi](double s) {
                const double eps = 1e-9 * std::max(1.0, std::abs(hi - a));
                return caputo_derivative(g, a, std::max(s, a + eps), alpha, q);
            };
        }
        const double d2 = caputo_derivative(CrispFunction(first, {}, a, hi), a, t, alpha, q);
        return std::abs(d2) * magnitude(exact.factor());
    }
    const std::size_t m = exact.levels().size();
    const double eps = 1e-9 * std::max(1.0, std::abs(exact.hi() - a));
    auto first = [&](double s) {
        const auto e = caputo_endpoints(exact, a, std::max(s, a + eps), alpha, q);
        std::vector<double> out(e.lower);
        out.insert(out.end(), e.upper.begin(), e.upper.end());
        return out;
    };
    const auto second = caputo_vector(first, a, t, alpha, q, exact.hi());
    return magnitude(unpack_endpoints(m, second));
}

/// Memoised D^{2 alpha} magnitudes of the exact solution along the nodes.
class SecondDerivativeSampler {
public:
    SecondDerivativeSampler(const FFIVP& p, QuadratureSpec q) : p_(p), q_(q) {}

    double at(double t) {
        if (!p_.exact) {
            if (p_.d2alpha_bound) return *p_.d2alpha_bound;
            throw UnsupportedError("no exact solution and no bound on the 2 alpha derivative");
        }
        auto it = cache_.find(t);
        if (it != cache_.end()) return it->second;
        const double eps = 1e-6 * (p_.T - p_.t0);
        const double ts = t > p_.caputo_base ? t : p_.caputo_base + eps;
        const double v = second_caputo_magnitude(*p_.exact, p_.caputo_base, ts, p_.alpha, q_);
        cache_.emplace(t, v);
        return v;
    }

private:
    const FFIVP& p_;
    QuadratureSpec q_;
    std::map<double, double> cache_;
};

/// tau_k = h^{2 alpha - 1} / Gamma(2 alpha + 1) * M_k, with M_k the larger
/// of H(D^{2 alpha} y, 0) at t_k and t_{k+1}.
inline std::vector<double> local_truncation_error(const FFIVP& p, const FuzzyTrajectory& traj,
                                                  const QuadratureSpec& q = {}) {
    if (!p.exact && !p.d2alpha_bound)
        throw UnsupportedError("truncation error needs the exact solution or a bound on its 2 alpha derivative");
    SecondDerivativeSampler d2(p, q);
    const double k = std::pow(traj.h, 2.0 * p.alpha - 1.0) / gamma_fn(2.0 * p.alpha + 1.0);
    std::vector<double> tau;
    tau.reserve(traj.size() - 1);
    for (std::size_t i = 0; i + 1 < traj.size(); ++i) tau.push_back(k * std::max(d2.at(traj.t[i]), d2.at(traj.t[i + 1])));
    return tau;
}

// ---------------------------------------------------------------------------
// Lipschitz constant

struct LipschitzOptions {
    std::size_t pairs = 200;
    double inflation = 1.2;
    double radius = 0.1;  // relative ball radius around each node value
    std::uint64_t seed = 0;
};

/// max over nodes and random pairs (y, z) near y_k of
/// H(f(t_k, y), f(t_k, z)) / H(y, z), inflated.
inline double estimate_lipschitz(const FFIVP& p, const FuzzyTrajectory& traj, LipschitzOptions opt = {}) {
    std::mt19937_64 rng(opt.seed);
    std::uniform_real_distribution<double> unit(-1.0, 1.0);
    double best = 0.0;
    for (std::size_t k = 0; k < traj.size(); ++k) {
        const auto& yk = traj.y[k];
        const double rho = opt.radius * std::max(1.0, magnitude(yk));
        auto perturb = [&]() {
            double v[3] = {rho * unit(rng), rho * unit(rng), rho * unit(rng)};
            std::sort(v, v + 3);
            return add(yk, FuzzyNumber::triangular(v[0], v[1], v[2], yk.levels()));
        };
        for (std::size_t i = 0; i < opt.pairs; ++i) {
            const auto y = perturb();
            const auto z = perturb();
            const double d = hausdorff_distance(y, z);
            if (d <= 0.0) continue;
            const double df = endpoint_distance(p.rhs(traj.t[k], y), p.rhs(traj.t[k], z));
            best = std::max(best, df / d);
        }
    }
    return opt.inflation * best;
}

// ---------------------------------------------------------------------------
// convergence and stability

/// Global error bound h^alpha Gamma(alpha+1) / (l Gamma(2 alpha+1)) *
/// (exp(l T / Gamma(alpha+1)) - 1) * M, with its l -> 0 limit.
inline double convergence_bound(double h, double alpha, double ell, double length, double M) {
    const double g1 = gamma_fn(alpha + 1.0);
    const double g2 = gamma_fn(2.0 * alpha + 1.0);
    const double growth = ell > 0.0 ? g1 / ell * std::expm1(ell * length / g1) : length;
    return std::pow(h, alpha) / g2 * growth * M;
}

inline double stability_constant(double alpha, double ell, double length) {
    return std::exp(ell * length / gamma_fn(alpha + 1.0));
}

struct ConvergenceRow {
    double h;
    double max_error;
    double ratio;  // previous row's error over this one; NaN on the first row
    double bound;
    bool holds;
};

struct ConvergenceTable {
    double lipschitz;
    double d2alpha_sup;
    std::vector<ConvergenceRow> rows;
};

inline ConvergenceTable convergence_study(const FFIVP& p, const std::vector<double>& h_list,
                                          const SolveOptions& opt = {}, LipschitzOptions lip = {}) {
    if (!p.exact) throw UnsupportedError("convergence study needs the exact solution");
    for (std::size_t i = 1; i < h_list.size(); ++i)
        if (!(h_list[i] < h_list[i - 1])) throw DomainError("step sizes must decrease");
    ConvergenceTable table{0.0, 0.0, {}};
    SecondDerivativeSampler d2(p, opt.quadrature);
    std::vector<FuzzyTrajectory> runs;
    for (double h : h_list) runs.push_back(solve(p, h, opt));

    // l and sup |D^{2 alpha} y| from the finest run's nodes
    const auto& fine = runs.back();
    table.lipschitz = p.lipschitz ? *p.lipschitz : estimate_lipschitz(p, fine, lip);
    for (const auto& t : runs.front().t) table.d2alpha_sup = std::max(table.d2alpha_sup, d2.at(t));
    const double length = p.T - p.t0;

    double prev = std::numeric_limits<double>::quiet_NaN();
    for (std::size_t i = 0; i < runs.size(); ++i) {
        const double err = max_of(global_error(runs[i], *p.exact));
        const double bound = convergence_bound(h_list[i], p.alpha, table.lipschitz, length, table.d2alpha_sup);
        table.rows.push_back({h_list[i], err, prev / err, bound, err <= bound});
        prev = err;
    }
    return table;
}

struct StabilityResult {
    double max_ratio;  // max_k H(z_k, y_k) / delta
    double bound;      // exp(l T / Gamma(alpha + 1))
    double lipschitz;
    bool contractive;  // every step shrank the perturbation (case (ii) analogue)
    bool holds;
};

inline StabilityResult stability_experiment(const FFIVP& p, double h, const FuzzyNumber& delta0, double delta,
                                            const SolveOptions& opt = {}, LipschitzOptions lip = {}) {
    if (!(delta >= 0.0)) throw DomainError("perturbation size must be non-negative");
    if (magnitude(delta0) > delta * (1.0 + 1e-12)) throw DomainError("perturbation exceeds the stated size");
    const DiffPlan plan = resolve_plan(p, h, opt);
    const auto base = solve_with_plan(p, h, plan, opt);
    FFIVP q = p;
    q.y0 = add(p.y0, delta0);
    const auto pert = solve_with_plan(q, h, plan, opt);

    StabilityResult out{0.0, 1.0, 0.0, true, true};
    out.lipschitz = p.lipschitz ? *p.lipschitz : estimate_lipschitz(p, base, lip);
    out.bound = stability_constant(p.alpha, out.lipschitz, p.T - p.t0);
    double previous = hausdorff_distance(pert.y[0], base.y[0]);
    for (std::size_t k = 0; k < base.size(); ++k) {
        const double d = hausdorff_distance(pert.y[k], base.y[k]);
        if (delta > 0.0) out.max_ratio = std::max(out.max_ratio, d / delta);
        if (d > previous * (1.0 + 1e-12) + 1e-15) out.contractive = false;
        previous = d;
    }
    const double slack = 1e-12 * std::max(1.0, out.bound);
    out.holds = out.max_ratio <= out.bound + slack;
    return out;
}

// ---------------------------------------------------------------------------
// report

struct SolveReport {
    FuzzyTrajectory trajectory;
    std::vector<double> error;  // empty without an exact solution
    std::vector<double> lte;    // empty when neither exact solution nor bound is known
};

inline SolveReport solve_and_report(const FFIVP& p, double h, const SolveOptions& opt = {}) {
    SolveReport r{solve(p, h, opt), {}, {}};
    if (p.exact) r.error = global_error(r.trajectory, *p.exact);
    if (p.exact || p.d2alpha_bound) r.lte = local_truncation_error(p, r.trajectory, opt.quadrature);
    return r;
}

}  // namespace fuzzyfrac
