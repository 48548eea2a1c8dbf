#include "betamedian/approximation.hpp"

#include "betamedian/errors.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace betamedian {

namespace {

std::string num(double v) {
    std::ostringstream os;
    os.precision(17);
    os << v;
    return os.str();
}

}  // namespace

BetaParams::BetaParams(Real a, Real b) : a_(a), b_(b) {
    if (!std::isfinite(a) || a <= 0.0) {
        throw DomainError("BetaParams: shape a must be finite and > 0, got " + num(a));
    }
    if (!std::isfinite(b) || b <= 0.0) {
        throw DomainError("BetaParams: shape b must be finite and > 0, got " + num(b));
    }
}

Offset::Offset(Real d) : d_(d) {
    if (!std::isfinite(d) || d < 0.0 || d >= 1.0) {
        throw DomainError("Offset: d must satisfy 0 <= d < 1, got " + num(d));
    }
}

Probability approx_median(const BetaParams& params, Offset d) {
    const double a = params.a();
    const double b = params.b();
    const double shift = d.value();
    if (std::min(a, b) <= shift) {
        throw DomainError("approx_median: requires min(a, b) > d, got a=" + num(a) + ", b=" + num(b) +
                          ", d=" + num(shift));
    }
    // Written as u / (u + v) so that swapping a and b gives exactly 1 - m
    // up to a single rounding.
    const double u = a - shift;
    const double v = b - shift;
    return u / (u + v);
}

Probability approx_median_default(const BetaParams& params) {
    return approx_median(params, Offset::one_third());
}

std::optional<Probability> exact_median_special(const BetaParams& params) {
    const double a = params.a();
    const double b = params.b();
    if (a == b) return 0.5;
    if (b == 1.0) return std::exp2(-1.0 / a);
    // 1 - 2^{-1/b} without cancellation for large b.
    if (a == 1.0) return -std::expm1(-std::log(2.0) / b);
    return std::nullopt;
}

Probability beta_mean(const BetaParams& params) { return params.mean(); }

Probability beta_mode(const BetaParams& params) {
    const double a = params.a();
    const double b = params.b();
    if (a <= 1.0 || b <= 1.0) {
        throw DomainError("beta_mode: no interior mode unless a > 1 and b > 1, got a=" + num(a) +
                          ", b=" + num(b));
    }
    return (a - 1.0) / (a + b - 2.0);
}

Real gamma_median_approx(Real a) {
    if (!std::isfinite(a) || a <= kOneThird) {
        throw DomainError("gamma_median_approx: requires a > 1/3, got a=" + num(a));
    }
    return a - kOneThird;
}

}  // namespace betamedian
