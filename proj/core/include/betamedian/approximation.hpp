#pragma once

// Closed-form median approximations for the Beta distribution and the
// unit-scale Gamma distribution, together with the exact special cases,
// the mean and the mode.

#include "betamedian/beta_params.hpp"

#include <optional>

namespace betamedian {

/// The double nearest 1/3.
inline constexpr Real kOneThird = 1.0 / 3.0;

/// Shift d of the family m(a, b; d) = (a - d) / (a + b - 2d), 0 <= d < 1.
///
/// d = 0 reproduces the mean, d -> 1 the mode, and d = 1/3 the recommended
/// median approximation.
class Offset {
public:
    /// Throws DomainError unless 0 <= d < 1.
    explicit Offset(Real d);

    static Offset one_third() noexcept { return Offset(kOneThird, Unchecked{}); }
    static Offset zero() noexcept { return Offset(0.0, Unchecked{}); }

    Real value() const noexcept { return d_; }

    friend bool operator==(const Offset&, const Offset&) = default;

private:
    struct Unchecked {};
    Offset(Real d, Unchecked) noexcept : d_(d) {}

    Real d_;
};

/// (a - d) / (a + b - 2d). Requires min(a, b) > d; throws DomainError otherwise.
Probability approx_median(const BetaParams& params, Offset d);

/// approx_median with d = 1/3: (a - 1/3) / (a + b - 2/3).
Probability approx_median_default(const BetaParams& params);

/// Exact median where one is known in closed form: 2^{-1/a} when b = 1,
/// 1 - 2^{-1/b} when a = 1, 1/2 when a = b. Matching uses exact equality.
std::optional<Probability> exact_median_special(const BetaParams& params);

Probability beta_mean(const BetaParams& params);

/// (a - 1) / (a + b - 2); the density has no interior mode unless a, b > 1.
Probability beta_mode(const BetaParams& params);

/// Asymptotic median a - 1/3 of the unit-scale Gamma(a) distribution; a > 1/3.
Real gamma_median_approx(Real a);

}  // namespace betamedian
