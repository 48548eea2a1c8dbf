#pragma once

// Unevaluated sum hi + lo of two doubles (~106-bit significand), used where a
// recurrence amplifies coefficient rounding. Built on the Dekker/Knuth
// error-free transforms; no FMA or compiler extension required.

#include <cmath>

namespace betamedian::detail {

struct DoubleDouble {
    double hi = 0.0;
    double lo = 0.0;

    constexpr DoubleDouble() = default;
    constexpr DoubleDouble(double h) : hi(h), lo(0.0) {}  // NOLINT(google-explicit-constructor)
    constexpr DoubleDouble(double h, double l) : hi(h), lo(l) {}

    explicit constexpr operator double() const { return hi + lo; }
};

namespace dd_impl {

inline DoubleDouble quick_two_sum(double a, double b) {
    const double s = a + b;
    return {s, b - (s - a)};
}

inline DoubleDouble two_sum(double a, double b) {
    const double s = a + b;
    const double bb = s - a;
    return {s, (a - (s - bb)) + (b - bb)};
}

inline void split(double a, double& hi, double& lo) {
    constexpr double kSplitter = 134217729.0;  // 2^27 + 1
    const double t = kSplitter * a;
    hi = t - (t - a);
    lo = a - hi;
}

inline DoubleDouble two_prod(double a, double b) {
    const double p = a * b;
    double ah, al, bh, bl;
    split(a, ah, al);
    split(b, bh, bl);
    const double err = ((ah * bh - p) + ah * bl + al * bh) + al * bl;
    return {p, err};
}

}  // namespace dd_impl

inline DoubleDouble operator+(DoubleDouble x, DoubleDouble y) {
    DoubleDouble s = dd_impl::two_sum(x.hi, y.hi);
    DoubleDouble t = dd_impl::two_sum(x.lo, y.lo);
    s.lo += t.hi;
    s = dd_impl::quick_two_sum(s.hi, s.lo);
    s.lo += t.lo;
    return dd_impl::quick_two_sum(s.hi, s.lo);
}

inline DoubleDouble operator-(DoubleDouble x) { return {-x.hi, -x.lo}; }

inline DoubleDouble operator-(DoubleDouble x, DoubleDouble y) { return x + (-y); }

inline DoubleDouble operator*(DoubleDouble x, DoubleDouble y) {
    DoubleDouble p = dd_impl::two_prod(x.hi, y.hi);
    p.lo += x.hi * y.lo + x.lo * y.hi;
    return dd_impl::quick_two_sum(p.hi, p.lo);
}

inline DoubleDouble operator/(DoubleDouble x, DoubleDouble y) {
    const double q1 = x.hi / y.hi;
    DoubleDouble r = x - y * DoubleDouble(q1);
    const double q2 = r.hi / y.hi;
    r = r - y * DoubleDouble(q2);
    const double q3 = r.hi / y.hi;
    return dd_impl::quick_two_sum(q1, q2) + DoubleDouble(q3);
}

inline DoubleDouble fabs(DoubleDouble x) { return x.hi < 0.0 ? -x : x; }

/// 1 - x carried exactly.
inline DoubleDouble one_minus(double x) { return dd_impl::two_sum(1.0, -x); }

}  // namespace betamedian::detail
