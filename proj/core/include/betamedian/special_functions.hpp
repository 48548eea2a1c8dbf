#pragma once

// Real-valued special functions backing the median oracles.
//
// All functions are pure and reentrant. Domain violations throw
// betamedian::DomainError; exhausted iteration budgets throw
// betamedian::ConvergenceError.

namespace betamedian {

using Real = double;
using Probability = double;

/// Base continued-fraction iteration cap (modified Lentz); the effective cap
/// adds 2 sqrt(max shape) so that shapes up to ~1e6 converge near the mean.
inline constexpr int kContinuedFractionMaxIterations = 500;
/// Floor used in the Lentz recurrence in place of exact zeros.
inline constexpr double kLentzTiny = 1e-300;

/// ln Gamma(x) for x > 0.
///
/// Taylor series about 2 on [0.5, 2.5) (so the zeros at 1 and 2 keep full
/// relative accuracy), downward recurrence below 0.5, upward recurrence on
/// [2.5, 10) and the Stirling series from 10 on.
Real log_gamma(Real x);

/// ln B(a, b) = ln Gamma(a) + ln Gamma(b) - ln Gamma(a + b), free of the
/// cancellation the naive sum suffers when either shape is large.
Real log_beta(Real a, Real b);

/// Regularized incomplete beta I_x(a, b). Exact 0 at x = 0 and 1 at x = 1.
Probability reg_inc_beta(Probability x, Real a, Real b);

/// Beta(a, b) density at x in (0, 1); 0 outside the open interval unless
/// the density is unbounded at the endpoint, in which case +infinity.
Real beta_density(Real x, Real a, Real b);

/// Regularized lower incomplete gamma P(a, x).
Probability reg_inc_gamma_p(Real a, Real x);

/// Unit-scale Gamma(a) density at x >= 0.
Real gamma_density(Real x, Real a);

/// Standard normal quantile Phi^{-1}(p) for p in (0, 1).
Real normal_quantile(Probability p);

namespace detail {

/// ln(1 + u) - u, accurate for small |u|.
Real log1pmx(Real u);

/// Stirling remainder: ln Gamma(z) - [(z - 1/2) ln z - z + ln(2 pi)/2], z >= 10.
Real stirling_correction(Real z);

/// ln[x^a (1-x)^b / B(a, b)], the common factor of the incomplete beta
/// continued fraction and of the density.
Real log_beta_power_terms(Real x, Real a, Real b);

/// ln[x^a e^{-x} / Gamma(a)].
Real log_gamma_power_terms(Real a, Real x);

/// I_x(a, b) - level, subtracted before the tail that was evaluated directly
/// is folded into [0, 1]; resolves residuals below the spacing of doubles
/// near `level`.
Real reg_inc_beta_minus(Probability x, Real a, Real b, Real level);

/// P(a, x) - level, with the same treatment.
Real reg_inc_gamma_p_minus(Real a, Real x, Real level);

/// Phi^{-1}(1/2 + offset) for offset in (-1/2, 1/2), keeping full relative
/// accuracy when |offset| is tiny.
Real normal_quantile_from_half(Real offset);

}  // namespace detail

}  // namespace betamedian
