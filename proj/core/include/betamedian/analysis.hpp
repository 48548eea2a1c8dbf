#pragma once

// Grid evaluations of the median approximation against the exact oracle:
// relative-error curves at fixed means, relative error across all means,
// log scaled absolute error for several offsets, tail probabilities at the
// approximate median, and the empirical convergence-rate fit.
//
// Rows are independent and may be evaluated on several threads; output
// order and content never depend on the thread count.

#include "betamedian/approximation.hpp"
#include "betamedian/median_solver.hpp"

#include <optional>
#include <span>
#include <vector>

namespace betamedian {

struct GridSpec {
    std::vector<Probability> p_values;  // distribution means, each in (0, 1)
    std::vector<Real> shape_values;     // values of a; positive, strictly increasing
    std::vector<Offset> d_values;

    /// Throws DomainError when a list is empty or holds an invalid value.
    void validate() const;
};

/// n log-spaced points from lo to hi inclusive.
std::vector<Real> log_spaced(Real lo, Real hi, int n);

/// Log-spaced points from lo to hi inclusive with `per_decade` intervals per
/// factor of ten (rounded up so the spacing never exceeds that density).
std::vector<Real> log_spaced_per_decade(Real lo, Real hi, int per_decade);

/// n equally spaced means i / (n + 1), i = 1..n.
std::vector<Probability> interior_means(int n);

/// Means plotted in the fixed-mean relative error figure.
std::vector<Probability> figure_mean_values();

/// Fixed-mean relative error grid: means from figure_mean_values(), a
/// log-spaced over [1, 1024] at 25 points per decade, d = 1/3.
GridSpec default_relative_error_grid();

/// Offsets compared in the scaled absolute error figure.
std::vector<Offset> figure_offsets();

/// One grid row. Metric fields a given evaluation does not produce stay empty.
struct ErrorRecord {
    Real a = 0.0;
    Real b = 0.0;
    Probability p = 0.0;
    Real d = 0.0;
    std::optional<Probability> approx;
    std::optional<Probability> exact;
    std::optional<Real> rel_err;             // (approx - exact) / exact
    std::optional<Real> log_scaled_abs_err;  // ln(|approx - exact| / p)
    std::optional<Probability> tail_prob;    // I_approx(a, b)
    std::optional<bool> underflow;           // approx == exact in floating point
};

struct AnalysisOptions {
    SolverConfig solver{};
    /// Worker threads; 0 selects std::thread::hardware_concurrency().
    unsigned threads = 0;
};

/// One row per (d, p, a) in that nesting order, with b = a (1 - p) / p.
std::vector<ErrorRecord> relative_error_curves(const GridSpec& grid,
                                               const AnalysisOptions& options = {});

/// For p <= 0.5: a = min_shape, b = a (1 - p) / p; for p > 0.5: b = min_shape,
/// a = b p / (1 - p). One row per p.
std::vector<ErrorRecord> relative_error_over_means(Real min_shape,
                                                   std::span<const Probability> p_grid, Offset d,
                                                   const AnalysisOptions& options = {});

/// Fixed mean p < 0.5, rows ordered by (d, a). Rows whose error is exactly
/// zero carry underflow = true and no log error.
std::vector<ErrorRecord> scaled_abs_error_curves(Probability p, std::span<const Real> shape_values,
                                                 std::span<const Offset> d_values,
                                                 const AnalysisOptions& options = {});

/// Tail probability I_m(a, b) at m = approx_median_default(a, b). shape_values
/// hold the smaller shape; the larger follows from p as in
/// relative_error_over_means. Rows ordered by (shape, p).
std::vector<ErrorRecord> tail_probability_grid(std::span<const Real> shape_values,
                                               std::span<const Probability> p_values,
                                               const AnalysisOptions& options = {});

/// Error measure regressed against ln a.
enum class RateMetric {
    /// |z| with z = Phi^{-1}(I_approx(a, b)): the approximate median expressed
    /// as a standard normal deviate of the true distribution.
    standardized,
    /// |approx - exact|.
    absolute,
};

const char* to_string(RateMetric metric) noexcept;

struct RateFitResult {
    Offset d = Offset::zero();
    Probability p = 0.0;
    RateMetric metric = RateMetric::standardized;
    Real slope = 0.0;
    Real intercept = 0.0;
    Real max_abs_residual = 0.0;
    int points_used = 0;
    /// Error measure at the largest a, or empty if it underflowed.
    std::optional<Real> error_at_a_max;
};

/// Least-squares fit of ln(error) against ln a over n_points log-spaced a in
/// [a_min, a_max] with b = a (1 - p) / p. Zero errors are dropped; throws
/// FitError if fewer than five points remain.
RateFitResult rate_fit(Probability p, Real a_min, Real a_max, int n_points, Offset d,
                       RateMetric metric = RateMetric::standardized,
                       const AnalysisOptions& options = {});

}  // namespace betamedian
