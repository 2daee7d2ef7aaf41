#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <optional>
#include <utility>
#include <vector>

#include "fuzzyfrac/error.hpp"
#include "fuzzyfrac/frac_calc.hpp"
#include "fuzzyfrac/fuzzy_number.hpp"

namespace fuzzyfrac {

/// Closed form of D^alpha g for a fixed order and lower terminal.
struct KnownCaputo {
    double alpha;
    double base;
    std::function<double(double)> value;
};

/// Fuzzy-valued function of time in one of three forms:
///  * closed:  t -> FuzzyNumber
///  * sampled: nodes t_k with FuzzyNumbers, linear in t per endpoint
///  * product: u ⊙ g(t) with u fuzzy and g crisp
class FuzzyFunction {
public:
    enum class Kind { closed, sampled, product };

    static FuzzyFunction closed(std::function<FuzzyNumber(double)> f,
                                double lo = -std::numeric_limits<double>::infinity(),
                                double hi = std::numeric_limits<double>::infinity()) {
        FuzzyFunction F(Kind::closed, lo, hi);
        F.closed_ = std::move(f);
        return F;
    }

    static FuzzyFunction sampled(std::vector<double> times, std::vector<FuzzyNumber> values) {
        if (times.size() < 2 || times.size() != values.size())
            throw DomainError("sampled fuzzy function needs at least two matching nodes");
        for (std::size_t k = 1; k < times.size(); ++k)
            if (!(times[k] > times[k - 1])) throw DomainError("sample times must be strictly increasing");
        const auto levels = values.front().levels();
        for (auto& v : values) {
            if (v.levels() != levels) v = v.resample(levels);
            if (!validate(v)) throw DomainError("sampled fuzzy function holds an invalid fuzzy number");
        }
        FuzzyFunction F(Kind::sampled, times.front(), times.back());
        F.times_ = std::move(times);
        F.values_ = std::move(values);
        return F;
    }

    static FuzzyFunction product(FuzzyNumber u, CrispFunction g) {
        FuzzyFunction F(Kind::product, g.lo, g.hi);
        F.factor_ = std::move(u);
        F.g_ = std::move(g);
        return F;
    }

    /// Attach a closed-form Caputo derivative of the crisp factor.
    FuzzyFunction& with_caputo(KnownCaputo d) {
        if (kind_ != Kind::product) throw DomainError("closed-form Caputo data only applies to product forms");
        known_.push_back(std::move(d));
        return *this;
    }

    Kind kind() const noexcept { return kind_; }
    double lo() const noexcept { return lo_; }
    double hi() const noexcept { return hi_; }
    const FuzzyNumber& factor() const { return *factor_; }
    const CrispFunction& crisp() const { return g_; }
    const std::vector<double>& times() const { return times_; }
    const std::vector<FuzzyNumber>& values() const { return values_; }

    FuzzyNumber operator()(double t) const {
        switch (kind_) {
            case Kind::closed: {
                FuzzyNumber v = closed_(t);
                if (auto rep = validate(v); !rep)
                    throw DomainError("fuzzy function value at t invalid: " + rep.reason);
                return v;
            }
            case Kind::product:
                return scalar_mul(g_(t), *factor_);
            case Kind::sampled:
                break;
        }
        if (t < times_.front() || t > times_.back()) throw DomainError("sampled fuzzy function evaluated outside its grid");
        auto it = std::upper_bound(times_.begin(), times_.end(), t);
        std::size_t k = static_cast<std::size_t>(it - times_.begin());
        if (k >= times_.size()) k = times_.size() - 1;
        const std::size_t k0 = k - 1;
        const double w = (t - times_[k0]) / (times_[k] - times_[k0]);
        const auto& a = values_[k0];
        const auto& b = values_[k];
        std::vector<double> lo(a.size()), hi(a.size());
        for (std::size_t j = 0; j < a.size(); ++j) {
            lo[j] = (1.0 - w) * a.lower()[j] + w * b.lower()[j];
            hi[j] = (1.0 - w) * a.upper()[j] + w * b.upper()[j];
        }
        return FuzzyNumber(a.levels(), std::move(lo), std::move(hi));
    }

    /// Endpoints of all levels packed as [lower..., upper...].
    std::vector<double> packed(double t) const {
        const FuzzyNumber v = (*this)(t);
        std::vector<double> out(v.lower());
        out.insert(out.end(), v.upper().begin(), v.upper().end());
        return out;
    }

    std::vector<double> levels() const {
        switch (kind_) {
            case Kind::product: return factor_->levels();
            case Kind::sampled: return values_.front().levels();
            case Kind::closed: break;
        }
        // an interior point: some closed forms are singular at the ends
        double t = 0.0;
        if (std::isfinite(lo_) && std::isfinite(hi_)) t = 0.5 * (lo_ + hi_);
        else if (std::isfinite(lo_)) t = lo_ + 1.0;
        else if (std::isfinite(hi_)) t = hi_ - 1.0;
        return closed_(t).levels();
    }

    /// D^alpha g(t) from attached closed forms, when one matches.
    std::optional<double> known_caputo(double alpha, double base, double t) const {
        for (const auto& d : known_)
            if (d.alpha == alpha && d.base == base) return d.value(t);
        return std::nullopt;
    }

private:
    FuzzyFunction(Kind k, double lo, double hi) : kind_(k), lo_(lo), hi_(hi) {}

    Kind kind_;
    double lo_;
    double hi_;
    std::function<FuzzyNumber(double)> closed_;
    std::vector<double> times_;
    std::vector<FuzzyNumber> values_;
    std::optional<FuzzyNumber> factor_;
    CrispFunction g_;
    std::vector<KnownCaputo> known_;
};

inline FuzzyNumber unpack(const std::vector<double>& levels, const std::vector<double>& packed) {
    const std::size_t m = levels.size();
    return FuzzyNumber(levels, std::vector<double>(packed.begin(), packed.begin() + static_cast<std::ptrdiff_t>(m)),
                       std::vector<double>(packed.begin() + static_cast<std::ptrdiff_t>(m), packed.end()));
}

inline EndpointValues unpack_endpoints(std::size_t m, const std::vector<double>& packed) {
    return {std::vector<double>(packed.begin(), packed.begin() + static_cast<std::ptrdiff_t>(m)),
            std::vector<double>(packed.begin() + static_cast<std::ptrdiff_t>(m), packed.end())};
}

}  // namespace fuzzyfrac
