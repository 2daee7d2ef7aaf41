#pragma once

#include <cmath>
#include <cstddef>
#include <limits>
#include <vector>

#include "fuzzyfrac/error.hpp"

namespace fuzzyfrac {

/// Gamma function. glibc's tgamma is correctly rounded to a few ulp on
/// (0, 20], well inside the 1e-12 relative budget the solver needs.
inline double gamma_fn(double x) { return std::tgamma(x); }

struct SeriesControl {
    double relative_tolerance = 1e-15;
    std::size_t max_terms = 1000;
};

/// E_alpha(z) = sum_k z^k / Gamma(alpha k + 1) for real z, 0 < alpha <= 1.
/// Holds a lazily grown log-gamma table so repeated evaluation at one order
/// is cheap; give each thread its own instance.
class MittagLeffler {
public:
    explicit MittagLeffler(double alpha, double z_max = 5.0, SeriesControl ctl = {})
        : alpha_(alpha), z_max_(z_max), ctl_(ctl) {
        if (!(alpha > 0.0 && alpha <= 1.0)) throw DomainError("mittag_leffler: alpha must lie in (0, 1]");
        log_gamma_.reserve(64);
    }

    double alpha() const noexcept { return alpha_; }

    double operator()(double z) const {
        if (std::abs(z) > z_max_) throw DomainError("mittag_leffler: |z| beyond the supported range");
        if (z == 0.0) return 1.0;

        const double log_abs_z = std::log(std::abs(z));
        const bool alternating = z < 0.0;
        double sum = 1.0;
        double largest = 1.0;
        double previous_log_term = 0.0;
        for (std::size_t k = 1; k < ctl_.max_terms; ++k) {
            const double kd = static_cast<double>(k);
            const double log_term = kd * log_abs_z - log_gamma(k);
            const bool decreasing = log_term < previous_log_term;
            previous_log_term = log_term;
            if (log_term > 700.0) throw RangeError("mittag_leffler: term growth overflows");
            double term = std::exp(log_term);
            largest = std::max(largest, term);
            if (alternating && (k % 2 == 1)) term = -term;
            sum += term;
            if (decreasing && std::abs(term) < ctl_.relative_tolerance * (1.0 + std::abs(sum))) {
                // cancellation: the largest partial term bounds the rounding error
                const double rounding = largest * std::numeric_limits<double>::epsilon() * kd;
                if (rounding > 1e-9 * std::max(1.0, std::abs(sum)))
                    throw RangeError("mittag_leffler: cancellation destroys accuracy for this argument");
                return sum;
            }
        }
        throw RangeError("mittag_leffler: series did not converge within the term cap");
    }

private:
    double log_gamma(std::size_t k) const {
        while (log_gamma_.size() <= k)
            log_gamma_.push_back(std::lgamma(alpha_ * static_cast<double>(log_gamma_.size()) + 1.0));
        return log_gamma_[k];
    }

    double alpha_;
    double z_max_;
    SeriesControl ctl_;
    mutable std::vector<double> log_gamma_;
};

inline double mittag_leffler(double alpha, double z, double z_max = 5.0, SeriesControl ctl = {}) {
    return MittagLeffler(alpha, z_max, ctl)(z);
}

inline bool is_nonpositive_integer(double b) {
    return b <= 0.0 && std::floor(b) == b;
}

/// 1F2(1; b1, b2; z) = sum_k (1)_k / ((b1)_k (b2)_k) z^k / k!.
inline double hyp_1f2(double b1, double b2, double z, SeriesControl ctl = {}) {
    if (is_nonpositive_integer(b1) || is_nonpositive_integer(b2))
        throw DomainError("hyp_1f2: lower parameter is a pole");
    double term = 1.0;
    double sum = 1.0;
    double largest = 1.0;
    for (std::size_t k = 0; k + 1 < ctl.max_terms; ++k) {
        const double kd = static_cast<double>(k);
        // (1)_{k+1}/(k+1)! = 1, so the ratio only involves the lower parameters
        term *= z / ((b1 + kd) * (b2 + kd));
        sum += term;
        largest = std::max(largest, std::abs(term));
        if (!std::isfinite(sum)) throw RangeError("hyp_1f2: overflow");
        const bool decreasing = std::abs(z) < std::abs((b1 + kd + 1.0) * (b2 + kd + 1.0));
        if (decreasing && std::abs(term) < ctl.relative_tolerance * (1.0 + std::abs(sum))) {
            const double rounding = largest * std::numeric_limits<double>::epsilon() * (kd + 1.0);
            if (rounding > 1e-9 * std::max(1.0, std::abs(sum)))
                throw RangeError("hyp_1f2: cancellation destroys accuracy for this argument");
            return sum;
        }
    }
    throw RangeError("hyp_1f2: series did not converge within the term cap");
}

}  // namespace fuzzyfrac
