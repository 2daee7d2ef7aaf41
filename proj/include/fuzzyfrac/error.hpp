#pragma once

#include <stdexcept>
#include <string>

namespace fuzzyfrac {

/// Argument outside the mathematical domain of an operation.
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Series or iteration left its safe numeric range.
class RangeError : public std::range_error {
public:
    using std::range_error::range_error;
};

/// Neither branch of the generalized Hukuhara difference yields a fuzzy number.
class GhDifferenceError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A Caputo gH-derivative was requested under a case that does not hold.
class WrongCaseError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A Taylor term could not be attached without breaking level-set nesting.
class ExpansionInvalidError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Bisection bracket without a sign change.
class NoRootError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Missing data required by an analysis routine.
class UnsupportedError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// An Euler step produced an invalid fuzzy number.
class StepInvalidError : public std::runtime_error {
public:
    StepInvalidError(double t, std::size_t step, const std::string& what)
        : std::runtime_error(what), t_(t), step_(step) {}

    /// Node time t_k at which the failing step started.
    double time() const noexcept { return t_; }
    std::size_t step() const noexcept { return step_; }

private:
    double t_;
    std::size_t step_;
};

}  // namespace fuzzyfrac
