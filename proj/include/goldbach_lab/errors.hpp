#pragma once

#include <stdexcept>
#include <string>

namespace goldbach_lab {

/// Precondition on a mathematical argument failed (odd n where even is
/// required, 0 in a divisor interval, overlapping arcs, ...).
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Requested size exceeds the configured memory or time budget.
class ResourceError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Operation is not defined for the given smoothing kind.
class UnsupportedError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

/// A numerical procedure could not reach its accuracy target. The best
/// error estimate achieved is carried along.
class PrecisionError : public std::runtime_error {
public:
    PrecisionError(const std::string& what, double achieved)
        : std::runtime_error(what + " (achieved error " + std::to_string(achieved) + ")"),
          achieved_(achieved) {}

    double achieved() const noexcept { return achieved_; }

private:
    double achieved_;
};

/// A mathematical claim that must hold did not (e.g. no binary Goldbach
/// decomposition found). Always a hard failure.
class VerificationFailure : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace goldbach_lab
