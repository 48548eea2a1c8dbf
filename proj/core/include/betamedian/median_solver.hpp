#pragma once

// Exact-median oracles: safeguarded Newton iteration on the CDF, with the
// density as derivative and a maintained sign-change bracket.

#include "betamedian/beta_params.hpp"

namespace betamedian {

struct SolverConfig {
    /// Target |CDF(m) - 1/2|.
    Real cdf_tolerance = 1e-13;
    /// Bracket width, relative to the upper end of the bracket.
    Real x_tolerance = 1e-15;
    int max_iterations = 200;

    /// Throws DomainError on a nonpositive tolerance or iteration budget.
    void validate() const;
};

/// Median m of Beta(a, b): |I_m(a, b) - 1/2| <= cdf_tolerance, or the bracket
/// has collapsed below x_tolerance. Throws ConvergenceError (carrying the
/// final bracket) when neither happens within max_iterations, including the
/// case where the median is not representable inside (0, 1). Returns exactly
/// 1/2 when a == b.
Probability beta_median_exact(const BetaParams& params, const SolverConfig& cfg = {});

/// Median M(a) of the unit-scale Gamma(a) distribution.
Real gamma_median_exact(Real a, const SolverConfig& cfg = {});

}  // namespace betamedian
