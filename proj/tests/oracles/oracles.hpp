#pragma once

// Reference implementations used only by the tests. They share no code with
// the library and trade speed for simplicity: finite sums, brute-force
// quadrature and plain bisection, all in long double.

#include <cmath>
#include <functional>

namespace oracle {

using Ld = long double;

// I_x(a, b) for integer shapes: P(Binomial(a + b - 1, x) >= a).
inline Ld inc_beta_integer(Ld x, int a, int b) {
    const int n = a + b - 1;
    Ld sum = 0.0L;
    for (int j = a; j <= n; ++j) {
        const Ld log_term = std::lgamma(static_cast<Ld>(n + 1)) - std::lgamma(static_cast<Ld>(j + 1)) -
                            std::lgamma(static_cast<Ld>(n - j + 1)) + j * std::log(x) +
                            (n - j) * std::log1p(-x);
        sum += std::exp(log_term);
    }
    return sum;
}

namespace detail {

template <class F>
Ld simpson(F& f, Ld lo, Ld hi, Ld flo, Ld fmid, Ld fhi, Ld whole, Ld tol, int depth) {
    const Ld mid = 0.5L * (lo + hi);
    const Ld lm = 0.5L * (lo + mid);
    const Ld rm = 0.5L * (mid + hi);
    const Ld flm = f(lm);
    const Ld frm = f(rm);
    const Ld left = (mid - lo) / 6.0L * (flo + 4.0L * flm + fmid);
    const Ld right = (hi - mid) / 6.0L * (fmid + 4.0L * frm + fhi);
    const Ld diff = left + right - whole;
    if (depth <= 0 || std::fabs(diff) <= 15.0L * tol) return left + right + diff / 15.0L;
    return simpson(f, lo, mid, flo, flm, fmid, left, 0.5L * tol, depth - 1) +
           simpson(f, mid, hi, fmid, frm, fhi, right, 0.5L * tol, depth - 1);
}

}  // namespace detail

// Adaptive Simpson integral of f over [lo, hi].
template <class F>
Ld integrate(F f, Ld lo, Ld hi, Ld tol = 1e-18L) {
    const Ld flo = f(lo);
    const Ld fhi = f(hi);
    const Ld fmid = f(0.5L * (lo + hi));
    const Ld whole = (hi - lo) / 6.0L * (flo + 4.0L * fmid + fhi);
    return detail::simpson(f, lo, hi, flo, fmid, fhi, whole, tol, 40);
}

// I_x(a, b) by quadrature of the density; intended for a, b >= 1.
inline Ld inc_beta_quadrature(Ld x, Ld a, Ld b) {
    const Ld log_beta = std::lgamma(a) + std::lgamma(b) - std::lgamma(a + b);
    const auto density = [&](Ld t) -> Ld {
        if (t <= 0.0L) return a == 1.0L ? std::exp(-log_beta) : 0.0L;
        if (t >= 1.0L) return b == 1.0L ? std::exp(-log_beta) : 0.0L;
        return std::exp((a - 1.0L) * std::log(t) + (b - 1.0L) * std::log1p(-t) - log_beta);
    };
    // Integrate over the shorter side and reflect for accuracy.
    if (x <= 0.5L) return integrate(density, 0.0L, x);
    return 1.0L - integrate(density, x, 1.0L);
}

// Lower regularized incomplete gamma P(a, x) from its power series, whose
// terms are all positive.
inline Ld gamma_p_series(Ld a, Ld x) {
    if (x <= 0.0L) return 0.0L;
    Ld term = 1.0L / a;
    Ld sum = term;
    for (int n = 1; n < 100000; ++n) {
        term *= x / (a + n);
        sum += term;
        if (term < sum * 1e-21L) break;
    }
    return std::exp(a * std::log(x) - x - std::lgamma(a)) * sum;
}

// Root of an increasing function on [lo, hi] by plain bisection.
inline Ld bisect(const std::function<Ld(Ld)>& f, Ld lo, Ld hi, int iterations = 200) {
    for (int i = 0; i < iterations; ++i) {
        const Ld mid = 0.5L * (lo + hi);
        if (mid == lo || mid == hi) break;
        if (f(mid) < 0.0L) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    return 0.5L * (lo + hi);
}

inline Ld beta_median_integer(int a, int b) {
    return bisect([&](Ld x) { return inc_beta_integer(x, a, b) - 0.5L; }, 0.0L, 1.0L);
}

inline Ld gamma_median(Ld a) {
    return bisect([&](Ld x) { return gamma_p_series(a, x) - 0.5L; }, 0.0L, 2.0L * a + 10.0L);
}

}  // namespace oracle
