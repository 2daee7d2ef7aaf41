#pragma once

// Level-set fuzzy numbers on R: every value is a finite grid of membership
// levels 0 = r_0 < ... < r_{M-1} = 1 with the interval [lower_i, upper_i]
// stored per level. Triangular numbers also keep their closed form so that
// arithmetic that stays linear in r can return closed forms again.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <iomanip>
#include <istream>
#include <limits>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "fuzzyfrac/error.hpp"

namespace fuzzyfrac {

inline constexpr std::size_t kDefaultLevelCount = 11;

/// Branch of a generalized Hukuhara difference / derivative.
enum class GhCase { case_i, case_ii };

constexpr GhCase opposite(GhCase c) noexcept {
    return c == GhCase::case_i ? GhCase::case_ii : GhCase::case_i;
}

constexpr std::string_view to_string(GhCase c) noexcept {
    return c == GhCase::case_i ? "i" : "ii";
}

/// Uniform membership grid r_j = j/(M-1).
inline std::vector<double> uniform_levels(std::size_t m = kDefaultLevelCount) {
    if (m < 2) throw DomainError("level grid needs at least two levels");
    std::vector<double> r(m);
    for (std::size_t j = 0; j < m; ++j) r[j] = static_cast<double>(j) / static_cast<double>(m - 1);
    r.back() = 1.0;
    return r;
}

struct Triangle {
    double a;
    double b;
    double c;
};

/// Per-level endpoint values that need not be ordered (derivative data,
/// right-hand sides evaluated endpoint-wise).
struct EndpointValues {
    std::vector<double> lower;
    std::vector<double> upper;
};

class FuzzyNumber {
public:
    /// Sampled form. Only the grid is checked here; use validate() for the
    /// fuzzy-number invariants.
    FuzzyNumber(std::vector<double> levels, std::vector<double> lower, std::vector<double> upper)
        : levels_(std::move(levels)), lower_(std::move(lower)), upper_(std::move(upper)) {
        check_grid(levels_);
        if (lower_.size() != levels_.size() || upper_.size() != levels_.size())
            throw DomainError("endpoint arrays must match the level grid");
    }

    static FuzzyNumber triangular(double a, double b, double c, std::vector<double> levels) {
        if (!(a <= b && b <= c))
            throw DomainError("triangular fuzzy number requires a <= b <= c");
        check_grid(levels);
        std::vector<double> lo(levels.size()), hi(levels.size());
        for (std::size_t j = 0; j < levels.size(); ++j) {
            lo[j] = a + (b - a) * levels[j];
            hi[j] = c - (c - b) * levels[j];
        }
        FuzzyNumber u(std::move(levels), std::move(lo), std::move(hi), Triangle{a, b, c});
        return u;
    }

    static FuzzyNumber triangular(double a, double b, double c, std::size_t m = kDefaultLevelCount) {
        return triangular(a, b, c, uniform_levels(m));
    }

    static FuzzyNumber singleton(double k, std::vector<double> levels) {
        return triangular(k, k, k, std::move(levels));
    }

    static FuzzyNumber singleton(double k, std::size_t m = kDefaultLevelCount) {
        return triangular(k, k, k, uniform_levels(m));
    }

    const std::vector<double>& levels() const noexcept { return levels_; }
    const std::vector<double>& lower() const noexcept { return lower_; }
    const std::vector<double>& upper() const noexcept { return upper_; }
    std::size_t size() const noexcept { return levels_.size(); }
    const std::optional<Triangle>& triangle() const noexcept { return triangle_; }
    bool is_triangular() const noexcept { return triangle_.has_value(); }

    double lower_at(double r) const {
        if (triangle_) return triangle_->a + (triangle_->b - triangle_->a) * r;
        return interpolate(lower_, r);
    }

    double upper_at(double r) const {
        if (triangle_) return triangle_->c - (triangle_->c - triangle_->b) * r;
        return interpolate(upper_, r);
    }

    /// Midpoint of the r = 1 level (the peak for triangular numbers).
    double core() const noexcept { return 0.5 * (lower_.back() + upper_.back()); }
    double width(std::size_t j) const { return upper_[j] - lower_[j]; }

    /// Re-express on another grid; level functions are linearly interpolated
    /// (exact for triangular numbers).
    FuzzyNumber resample(const std::vector<double>& levels) const {
        if (levels == levels_) return *this;
        if (triangle_) return triangular(triangle_->a, triangle_->b, triangle_->c, levels);
        check_grid(levels);
        std::vector<double> lo(levels.size()), hi(levels.size());
        for (std::size_t j = 0; j < levels.size(); ++j) {
            lo[j] = lower_at(levels[j]);
            hi[j] = upper_at(levels[j]);
        }
        return FuzzyNumber(levels, std::move(lo), std::move(hi));
    }

    EndpointValues endpoints() const { return {lower_, upper_}; }

    friend bool operator==(const FuzzyNumber& u, const FuzzyNumber& v) {
        return u.levels_ == v.levels_ && u.lower_ == v.lower_ && u.upper_ == v.upper_;
    }

private:
    FuzzyNumber(std::vector<double> levels, std::vector<double> lower, std::vector<double> upper,
                Triangle tri)
        : levels_(std::move(levels)), lower_(std::move(lower)), upper_(std::move(upper)), triangle_(tri) {}

    static void check_grid(const std::vector<double>& r) {
        if (r.size() < 2) throw DomainError("level grid needs at least two levels");
        if (r.front() != 0.0 || r.back() != 1.0)
            throw DomainError("level grid must start at 0 and end at 1");
        for (std::size_t j = 1; j < r.size(); ++j)
            if (!(r[j] > r[j - 1])) throw DomainError("level grid must be strictly increasing");
    }

    double interpolate(const std::vector<double>& v, double r) const {
        if (r <= 0.0) return v.front();
        if (r >= 1.0) return v.back();
        auto it = std::upper_bound(levels_.begin(), levels_.end(), r);
        std::size_t j = static_cast<std::size_t>(it - levels_.begin());
        double w = (r - levels_[j - 1]) / (levels_[j] - levels_[j - 1]);
        return v[j - 1] + w * (v[j] - v[j - 1]);
    }

    std::vector<double> levels_;
    std::vector<double> lower_;
    std::vector<double> upper_;
    std::optional<Triangle> triangle_;
};

inline FuzzyNumber triangular(double a, double b, double c, std::size_t m = kDefaultLevelCount) {
    return FuzzyNumber::triangular(a, b, c, m);
}

// ---------------------------------------------------------------------------
// validation

struct ValidationReport {
    bool ok = true;
    std::size_t level_index = 0;  // first violating level when !ok
    double level = 0.0;
    std::string reason;

    explicit operator bool() const noexcept { return ok; }
};

/// Slack used for rounding when checking nesting and ordering.
inline double validation_slack(const FuzzyNumber& u) {
    double scale = 1.0;
    for (std::size_t j = 0; j < u.size(); ++j)
        scale = std::max({scale, std::abs(u.lower()[j]), std::abs(u.upper()[j])});
    return 64.0 * std::numeric_limits<double>::epsilon() * scale;
}

inline ValidationReport validate(const FuzzyNumber& u, double slack = -1.0) {
    if (slack < 0.0) slack = validation_slack(u);
    const auto& r = u.levels();
    const auto& lo = u.lower();
    const auto& hi = u.upper();
    for (std::size_t j = 0; j < u.size(); ++j) {
        if (!std::isfinite(lo[j]) || !std::isfinite(hi[j]))
            return {false, j, r[j], "non-finite endpoint"};
        if (lo[j] > hi[j] + slack) return {false, j, r[j], "lower endpoint exceeds upper endpoint"};
        if (j > 0 && lo[j] + slack < lo[j - 1])
            return {false, j, r[j], "lower endpoint decreases with level"};
        if (j > 0 && hi[j] > hi[j - 1] + slack)
            return {false, j, r[j], "upper endpoint increases with level"};
    }
    return {};
}

// ---------------------------------------------------------------------------
// grid alignment

inline std::vector<double> union_levels(const std::vector<double>& a, const std::vector<double>& b) {
    std::vector<double> out;
    out.reserve(a.size() + b.size());
    std::merge(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

/// Both operands on a common grid (the union when they differ).
inline std::pair<FuzzyNumber, FuzzyNumber> align(const FuzzyNumber& u, const FuzzyNumber& v) {
    if (u.levels() == v.levels()) return {u, v};
    auto grid = union_levels(u.levels(), v.levels());
    return {u.resample(grid), v.resample(grid)};
}

// ---------------------------------------------------------------------------
// arithmetic

inline FuzzyNumber add(const FuzzyNumber& u0, const FuzzyNumber& v0) {
    auto [u, v] = align(u0, v0);
    if (u.is_triangular() && v.is_triangular()) {
        const auto& p = *u.triangle();
        const auto& q = *v.triangle();
        return FuzzyNumber::triangular(p.a + q.a, p.b + q.b, p.c + q.c, u.levels());
    }
    std::vector<double> lo(u.size()), hi(u.size());
    for (std::size_t j = 0; j < u.size(); ++j) {
        lo[j] = u.lower()[j] + v.lower()[j];
        hi[j] = u.upper()[j] + v.upper()[j];
    }
    return FuzzyNumber(u.levels(), std::move(lo), std::move(hi));
}

inline FuzzyNumber scalar_mul(double k, const FuzzyNumber& u) {
    if (u.is_triangular()) {
        const auto& p = *u.triangle();
        if (k >= 0.0) return FuzzyNumber::triangular(k * p.a, k * p.b, k * p.c, u.levels());
        return FuzzyNumber::triangular(k * p.c, k * p.b, k * p.a, u.levels());
    }
    std::vector<double> lo(u.size()), hi(u.size());
    for (std::size_t j = 0; j < u.size(); ++j) {
        if (k >= 0.0) {
            lo[j] = k * u.lower()[j];
            hi[j] = k * u.upper()[j];
        } else {
            lo[j] = k * u.upper()[j];
            hi[j] = k * u.lower()[j];
        }
    }
    return FuzzyNumber(u.levels(), std::move(lo), std::move(hi));
}

inline FuzzyNumber operator+(const FuzzyNumber& u, const FuzzyNumber& v) { return add(u, v); }
inline FuzzyNumber operator*(double k, const FuzzyNumber& u) { return scalar_mul(k, u); }

struct GhResult {
    FuzzyNumber value;
    GhCase which;
};

/// u ⊖_gH v. Case (i) is preferred whenever it is valid.
inline GhResult gh_difference(const FuzzyNumber& u0, const FuzzyNumber& v0) {
    auto [u, v] = align(u0, v0);
    const std::size_t m = u.size();
    std::vector<double> lo(m), hi(m);
    for (std::size_t j = 0; j < m; ++j) {
        lo[j] = u.lower()[j] - v.lower()[j];
        hi[j] = u.upper()[j] - v.upper()[j];
    }
    FuzzyNumber first(u.levels(), lo, hi);
    if (validate(first)) {
        if (u.is_triangular() && v.is_triangular()) {
            const auto& p = *u.triangle();
            const auto& q = *v.triangle();
            double a = p.a - q.a, b = p.b - q.b, c = p.c - q.c;
            if (a <= b && b <= c) return {FuzzyNumber::triangular(a, b, c, u.levels()), GhCase::case_i};
        }
        return {std::move(first), GhCase::case_i};
    }
    FuzzyNumber second(u.levels(), std::move(hi), std::move(lo));
    if (validate(second)) {
        if (u.is_triangular() && v.is_triangular()) {
            const auto& p = *u.triangle();
            const auto& q = *v.triangle();
            double a = p.c - q.c, b = p.b - q.b, c = p.a - q.a;
            if (a <= b && b <= c) return {FuzzyNumber::triangular(a, b, c, u.levels()), GhCase::case_ii};
        }
        return {std::move(second), GhCase::case_ii};
    }
    throw GhDifferenceError("gH-difference does not exist: neither case gives nested level sets");
}

/// Interval product per level (standard interval-arithmetic lifting).
inline FuzzyNumber multiply(const FuzzyNumber& u0, const FuzzyNumber& v0) {
    auto [u, v] = align(u0, v0);
    std::vector<double> lo(u.size()), hi(u.size());
    for (std::size_t j = 0; j < u.size(); ++j) {
        const double p[4] = {u.lower()[j] * v.lower()[j], u.lower()[j] * v.upper()[j],
                             u.upper()[j] * v.lower()[j], u.upper()[j] * v.upper()[j]};
        lo[j] = *std::min_element(p, p + 4);
        hi[j] = *std::max_element(p, p + 4);
    }
    return FuzzyNumber(u.levels(), std::move(lo), std::move(hi));
}

/// Image of u under a function that is monotone on the support of u.
/// The direction is read off the support endpoints.
template <class F>
FuzzyNumber apply_monotone(F&& f, const FuzzyNumber& u) {
    const bool increasing = f(u.lower().front()) <= f(u.upper().front());
    std::vector<double> lo(u.size()), hi(u.size());
    for (std::size_t j = 0; j < u.size(); ++j) {
        const double a = f(u.lower()[j]);
        const double b = f(u.upper()[j]);
        lo[j] = increasing ? a : b;
        hi[j] = increasing ? b : a;
    }
    return FuzzyNumber(u.levels(), std::move(lo), std::move(hi));
}

inline double hausdorff_distance(const FuzzyNumber& u0, const FuzzyNumber& v0) {
    auto [u, v] = align(u0, v0);
    double d = 0.0;
    for (std::size_t j = 0; j < u.size(); ++j)
        d = std::max({d, std::abs(u.lower()[j] - v.lower()[j]), std::abs(u.upper()[j] - v.upper()[j])});
    return d;
}

/// H(u, 0): largest endpoint magnitude.
inline double magnitude(const FuzzyNumber& u) {
    double d = 0.0;
    for (std::size_t j = 0; j < u.size(); ++j)
        d = std::max({d, std::abs(u.lower()[j]), std::abs(u.upper()[j])});
    return d;
}

inline double magnitude(const EndpointValues& e) {
    double d = 0.0;
    for (std::size_t j = 0; j < e.lower.size(); ++j)
        d = std::max({d, std::abs(e.lower[j]), std::abs(e.upper[j])});
    return d;
}

/// Sup-distance between endpoint arrays (Hausdorff form without ordering).
inline double endpoint_distance(const EndpointValues& a, const EndpointValues& b) {
    double d = 0.0;
    for (std::size_t j = 0; j < a.lower.size(); ++j)
        d = std::max({d, std::abs(a.lower[j] - b.lower[j]), std::abs(a.upper[j] - b.upper[j])});
    return d;
}

// ---------------------------------------------------------------------------
// CSV fragment: one "r,lower,upper" row per level, six decimals.

inline void write_csv(std::ostream& os, const FuzzyNumber& u) {
    std::ostringstream s;
    s << std::fixed << std::setprecision(6);
    for (std::size_t j = 0; j < u.size(); ++j)
        s << u.levels()[j] << ',' << u.lower()[j] << ',' << u.upper()[j] << '\n';
    os << s.str();
}

inline std::string to_csv(const FuzzyNumber& u) {
    std::ostringstream os;
    write_csv(os, u);
    return os.str();
}

/// Parses rows written by write_csv. Lines that do not start with a number
/// (headers, comments) are skipped.
inline FuzzyNumber read_csv(std::istream& is) {
    std::vector<double> r, lo, hi;
    std::string line;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        const char c = line.front();
        if (!(std::isdigit(static_cast<unsigned char>(c)) || c == '-' || c == '.' || c == '+')) continue;
        std::istringstream row(line);
        double a = 0, b = 0, d = 0;
        char s1 = 0, s2 = 0;
        if (!(row >> a >> s1 >> b >> s2 >> d) || s1 != ',' || s2 != ',')
            throw DomainError("malformed fuzzy-number CSV row: " + line);
        r.push_back(a);
        lo.push_back(b);
        hi.push_back(d);
    }
    return FuzzyNumber(std::move(r), std::move(lo), std::move(hi));
}

inline FuzzyNumber from_csv(const std::string& text) {
    std::istringstream is(text);
    return read_csv(is);
}

inline std::ostream& operator<<(std::ostream& os, const FuzzyNumber& u) {
    return os << '(' << u.lower().front() << ", " << u.core() << ", " << u.upper().front() << ')';
}

}  // namespace fuzzyfrac
