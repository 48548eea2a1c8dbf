#pragma once

#include "betamedian/special_functions.hpp"

namespace betamedian {

/// Shape pair (a, b) of a Beta distribution; both finite and positive.
class BetaParams {
public:
    /// Throws DomainError naming the offending shape.
    BetaParams(Real a, Real b);

    Real a() const noexcept { return a_; }
    Real b() const noexcept { return b_; }

    /// Distribution mean a / (a + b).
    Probability mean() const noexcept { return a_ / (a_ + b_); }

    /// The mirrored distribution Beta(b, a).
    BetaParams swapped() const noexcept { return BetaParams(b_, a_, Unchecked{}); }

    friend bool operator==(const BetaParams&, const BetaParams&) = default;

private:
    struct Unchecked {};
    BetaParams(Real a, Real b, Unchecked) noexcept : a_(a), b_(b) {}

    Real a_;
    Real b_;
};

}  // namespace betamedian
