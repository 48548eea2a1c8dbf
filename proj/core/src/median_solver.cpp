#include "betamedian/median_solver.hpp"

#include "betamedian/approximation.hpp"
#include "betamedian/errors.hpp"
#include "betamedian/special_functions.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <string>

namespace betamedian {

namespace {

constexpr double kGuessClamp = 1e-15;
constexpr int kPolishSteps = 4;

std::string num(double v) {
    std::ostringstream os;
    os.precision(17);
    os << v;
    return os.str();
}

struct Point {
    double x;
    double f;  // CDF(x) - 1/2
};

// Safeguarded Newton for an increasing function f with f(lo) < 0 < f(hi).
//
// `residual` returns f(x); `slope` returns f'(x). `unit_interval` enables
// geometric bisection towards 1 as well as towards 0 (needed when the root
// sits within a few ulps of 1 - something only the Beta case has).
template <class Residual, class Slope>
double safeguarded_newton(Residual residual, Slope slope, Point lo, Point hi, double guess,
                          const SolverConfig& cfg, bool unit_interval, const std::string& what) {
    const double domain_lo = lo.x;
    const double domain_hi = hi.x;

    const auto bisect = [&](double l, double h) {
        if (l > 0.0 && h > 2.0 * l) return std::sqrt(l) * std::sqrt(h);
        if (unit_interval && h < 1.0 && (1.0 - l) > 2.0 * (1.0 - h)) {
            return 1.0 - std::sqrt(1.0 - l) * std::sqrt(1.0 - h);
        }
        return l + 0.5 * (h - l);
    };
    const auto inside = [&](double x) { return std::isfinite(x) && x > lo.x && x < hi.x; };
    const auto better = [](const Point& p, const Point& q) { return std::fabs(p.f) < std::fabs(q.f); };

    // Newton from the best point, then walk ulp by ulp while |f| shrinks.
    const auto polish = [&](Point best) {
        for (int k = 0; k < kPolishSteps; ++k) {
            const double df = slope(best.x);
            if (!(df > 0.0) || !std::isfinite(df)) break;
            const double xn = best.x - best.f / df;
            if (!(xn > domain_lo && xn < domain_hi) || xn == best.x) break;
            const Point cand{xn, residual(xn)};
            if (!better(cand, best)) break;
            best = cand;
        }
        for (const double dir : {domain_hi, domain_lo}) {
            for (int k = 0; k < kPolishSteps; ++k) {
                const double xn = std::nextafter(best.x, dir);
                if (!(xn > domain_lo && xn < domain_hi)) break;
                const Point cand{xn, residual(xn)};
                if (!better(cand, best)) break;
                best = cand;
            }
        }
        return best.x;
    };

    double x = inside(guess) ? guess : bisect(lo.x, hi.x);
    double previous_abs_f = std::numeric_limits<double>::infinity();
    Point best = better(lo, hi) ? lo : hi;

    for (int it = 1; it <= cfg.max_iterations; ++it) {
        const Point cur{x, residual(x)};
        if (better(cur, best) || !(best.x > domain_lo && best.x < domain_hi)) best = cur;
        if (std::fabs(cur.f) <= cfg.cdf_tolerance) return polish(cur);

        if (cur.f < 0.0) {
            lo = cur;
        } else {
            hi = cur;
        }
        const bool collapsed = std::nextafter(lo.x, hi.x) >= hi.x;
        if (collapsed || hi.x - lo.x <= cfg.x_tolerance * hi.x) {
            const Point end = better(lo, hi) ? lo : hi;
            if (end.x > domain_lo && end.x < domain_hi) return polish(better(end, best) ? end : best);
            break;
        }

        const double df = slope(x);
        const double newton = x - cur.f / df;
        // Bisect when Newton leaves the bracket or stalls.
        if (inside(newton) && df > 0.0 && std::fabs(cur.f) <= 0.5 * previous_abs_f) {
            x = newton;
        } else if (inside(newton) && df > 0.0 && it == 1) {
            x = newton;
        } else {
            x = bisect(lo.x, hi.x);
        }
        previous_abs_f = std::fabs(cur.f);
    }
    throw ConvergenceError(what + ": no convergence within " + std::to_string(cfg.max_iterations) +
                               " iterations; final bracket [" + num(lo.x) + ", " + num(hi.x) + "]",
                           lo.x, hi.x, cfg.max_iterations);
}

}  // namespace

void SolverConfig::validate() const {
    if (!(cdf_tolerance > 0.0) || !std::isfinite(cdf_tolerance)) {
        throw DomainError("SolverConfig: cdf_tolerance must be finite and > 0, got " + num(cdf_tolerance));
    }
    if (!(x_tolerance > 0.0) || !std::isfinite(x_tolerance)) {
        throw DomainError("SolverConfig: x_tolerance must be finite and > 0, got " + num(x_tolerance));
    }
    if (max_iterations < 1) {
        throw DomainError("SolverConfig: max_iterations must be >= 1, got " +
                          std::to_string(max_iterations));
    }
}

Probability beta_median_exact(const BetaParams& params, const SolverConfig& cfg) {
    cfg.validate();
    const double a = params.a();
    const double b = params.b();
    const std::string what = "beta_median_exact(a=" + num(a) + ", b=" + num(b) + ")";

    const auto residual = [&](double x) { return detail::reg_inc_beta_minus(x, a, b, 0.5); };
    const auto slope = [&](double x) { return beta_density(x, a, b); };

    // Extreme representable endpoints; the median must lie strictly between.
    const Point lo{std::numeric_limits<double>::denorm_min(),
                   residual(std::numeric_limits<double>::denorm_min())};
    const double top = std::nextafter(1.0, 0.0);
    const Point hi{top, residual(top)};
    if (lo.f >= 0.0 || hi.f <= 0.0) {
        const bool below = lo.f >= 0.0;
        throw ConvergenceError(what + ": median is not representable inside (0, 1); it lies " +
                                   (below ? "below " + num(lo.x) : "above " + num(hi.x)),
                               below ? 0.0 : hi.x, below ? lo.x : 1.0, 0);
    }
    // Symmetric case: the median is exactly 1/2, which CDF rounding noise
    // could otherwise move by an ulp.
    if (a == b) return 0.5;
    if (lo.f > -cfg.cdf_tolerance || hi.f < cfg.cdf_tolerance) {
        // Degenerate bracket endpoints already satisfy the tolerance.
        return std::fabs(lo.f) < std::fabs(hi.f) ? lo.x : hi.x;
    }

    double guess = 0.5;
    if (const auto closed_form = exact_median_special(params)) {
        guess = *closed_form;
    } else if (std::min(a, b) > kOneThird) {
        guess = std::clamp(approx_median_default(params), kGuessClamp, 1.0 - kGuessClamp);
    }
    return safeguarded_newton(residual, slope, lo, hi, guess, cfg, true, what);
}

Real gamma_median_exact(Real a, const SolverConfig& cfg) {
    cfg.validate();
    if (!std::isfinite(a) || a <= 0.0) {
        throw DomainError("gamma_median_exact: shape a must be finite and > 0, got " + num(a));
    }
    const std::string what = "gamma_median_exact(a=" + num(a) + ")";
    const auto residual = [&](double x) { return detail::reg_inc_gamma_p_minus(a, x, 0.5); };
    const auto slope = [&](double x) { return gamma_density(x, a); };

    double lo_x = std::max(1e-300, a / 1e6);
    double hi_x = a + 40.0 * std::sqrt(a) + 40.0;
    double lo_f = residual(lo_x);
    while (lo_f > 0.0) {
        if (lo_x == std::numeric_limits<double>::denorm_min()) {
            throw ConvergenceError(what + ": median is below the smallest positive double", 0.0,
                                   lo_x, 0);
        }
        lo_x = std::max(lo_x * 1e-3, std::numeric_limits<double>::denorm_min());
        lo_f = residual(lo_x);
    }
    double hi_f = residual(hi_x);
    while (hi_f < 0.0) {
        lo_x = hi_x;
        lo_f = hi_f;
        hi_x *= 2.0;
        hi_f = residual(hi_x);
    }
    if (lo_f == 0.0) return lo_x;
    if (hi_f == 0.0) return hi_x;

    const double guess = a > kOneThird ? gamma_median_approx(a) : std::sqrt(lo_x) * std::sqrt(hi_x);
    return safeguarded_newton(residual, slope, Point{lo_x, lo_f}, Point{hi_x, hi_f}, guess, cfg, false,
                              what);
}

}  // namespace betamedian
