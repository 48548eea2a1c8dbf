#include "betamedian/special_functions.hpp"

#include "betamedian/errors.hpp"
#include "double_double.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>
#include <string>

namespace betamedian {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr double kHalfLogTwoPi = 0.91893853320467274178032973640561764;
constexpr double kStirlingThreshold = 10.0;

// zeta(k) - 1 for k = 2..40; coefficients of the Taylor series of
// ln Gamma(2 + z) = (1 - euler_gamma) z + sum_k (-1)^k (zeta(k) - 1) z^k / k.
constexpr std::array<double, 39> kZetaMinusOne = {
    0.64493406684822643647,     0.2020569031595942854,      0.082323233711138191516,
    0.036927755143369926331,    0.017343061984449139715,    0.0083492773819228268398,
    0.0040773561979443393787,   0.0020083928260822144179,   0.00099457512781808533715,
    0.0004941886041194645587,   0.00024608655330804829864,  0.00012271334757848914675,
    6.1248135058704829259e-05,  3.0588236307020493552e-05,  1.5282259408651871733e-05,
    7.6371976378997622736e-06,  3.8172932649998398565e-06,  1.9082127165539389257e-06,
    9.5396203387279611315e-07,  4.7693298678780646312e-07,  2.3845050272773299e-07,
    1.1921992596531107307e-07,  5.9608189051259479612e-08,  2.9803503514652280186e-08,
    1.4901554828365041235e-08,  7.450711789835429492e-09,   3.7253340247884570548e-09,
    1.8626597235130490064e-09,  9.3132743241966818287e-10,  4.656629065033784073e-10,
    2.328311833676505492e-10,   1.1641550172700519776e-10,  5.8207720879027008892e-11,
    2.9103850444970996869e-11,  1.4551921891041984236e-11,  7.2759598350574810145e-12,
    3.6379795473786511902e-12,  1.8189896503070659476e-12,  9.0949478402638892825e-13,
};

// ln Gamma(2 + z) for |z| <= 0.5.
double log_gamma_two_plus(double z) {
    double acc = 0.0;
    for (std::size_t i = kZetaMinusOne.size(); i-- > 0;) {
        const double k = static_cast<double>(i + 2);
        const double coeff = ((i % 2 == 0) ? 1.0 : -1.0) * kZetaMinusOne[i] / k;
        acc = coeff + z * acc;
    }
    return z * ((1.0 - std::numbers::egamma) + z * acc);
}

void require_finite(double v, const char* name, const char* op) {
    if (!std::isfinite(v)) {
        std::ostringstream os;
        os << op << ": " << name << " must be finite, got " << v;
        throw DomainError(os.str());
    }
}

[[noreturn]] void domain_fail(const char* op, const std::string& detail) {
    throw DomainError(std::string(op) + ": " + detail);
}

std::string fmt(double v) {
    std::ostringstream os;
    os.precision(17);
    os << v;
    return os.str();
}

// Near the orientation switch the Lentz iterations scale like sqrt(shape).
int continued_fraction_cap(double shape) {
    return kContinuedFractionMaxIterations + static_cast<int>(std::ceil(2.0 * std::sqrt(shape)));
}

// Continued fraction for I_x(a, b) * a * B(a, b) / (x^a (1-x)^b), modified
// Lentz. The value can be large (one shape much bigger than the other with x
// near 1), and its relative rounding error grows with it; carrying the
// recurrence in double-double keeps the result accurate to double precision.
double beta_continued_fraction(detail::DoubleDouble x, double a, double b) {
    using detail::DoubleDouble;
    const DoubleDouble one(1.0);
    const DoubleDouble tiny(kLentzTiny);
    const auto floor_tiny = [&](DoubleDouble v) { return fabs(v).hi < kLentzTiny ? tiny : v; };

    const DoubleDouble da(a);
    const DoubleDouble qab = da + DoubleDouble(b);
    const DoubleDouble qap = da + one;
    const DoubleDouble qam = da - one;
    DoubleDouble c = one;
    DoubleDouble d = floor_tiny(one - qab * x / qap);
    d = one / d;
    DoubleDouble h = d;
    const int cap = continued_fraction_cap(std::max(a, b));
    for (int m = 1; m <= cap; ++m) {
        const DoubleDouble md(static_cast<double>(m));
        const DoubleDouble m2(2.0 * static_cast<double>(m));
        DoubleDouble aa = md * (DoubleDouble(b) - md) * x / ((qam + m2) * (da + m2));
        d = floor_tiny(one + aa * d);
        c = floor_tiny(one + aa / c);
        d = one / d;
        h = h * d * c;
        aa = -((da + md) * (qab + md) * x) / ((da + m2) * (qap + m2));
        d = floor_tiny(one + aa * d);
        c = floor_tiny(one + aa / c);
        d = one / d;
        const DoubleDouble del = d * c;
        h = h * del;
        if (std::fabs(static_cast<double>(del - one)) <= kEps) return static_cast<double>(h);
    }
    const double xd = static_cast<double>(x);
    throw ConvergenceError("reg_inc_beta: continued fraction did not converge for x=" + fmt(xd) +
                               ", a=" + fmt(a) + ", b=" + fmt(b),
                           xd, xd, cap);
}

int gamma_series_cap(double a) {
    return kContinuedFractionMaxIterations + static_cast<int>(std::ceil(20.0 * std::sqrt(a)));
}

// sum_{n>=0} x^n / (a (a+1) ... (a+n)); P(a, x) = this * x^a e^{-x} / Gamma(a).
double gamma_series(double a, double x) {
    double ap = a;
    double del = 1.0 / a;
    double sum = del;
    const int cap = gamma_series_cap(a);
    for (int n = 1; n <= cap; ++n) {
        ap += 1.0;
        del *= x / ap;
        sum += del;
        if (std::fabs(del) < std::fabs(sum) * kEps) return sum;
    }
    throw ConvergenceError("reg_inc_gamma_p: series did not converge for a=" + fmt(a) +
                               ", x=" + fmt(x),
                           x, x, cap);
}

// Continued fraction for Q(a, x) * Gamma(a) / (x^a e^{-x}).
double gamma_continued_fraction(double a, double x) {
    double b = x + 1.0 - a;
    double c = 1.0 / kLentzTiny;
    double d = 1.0 / b;
    double h = d;
    const int cap = continued_fraction_cap(a);
    for (int i = 1; i <= cap; ++i) {
        const double id = static_cast<double>(i);
        const double an = -id * (id - a);
        b += 2.0;
        d = an * d + b;
        if (std::fabs(d) < kLentzTiny) d = kLentzTiny;
        c = b + an / c;
        if (std::fabs(c) < kLentzTiny) c = kLentzTiny;
        d = 1.0 / d;
        const double del = d * c;
        h *= del;
        if (std::fabs(del - 1.0) <= kEps) return h;
    }
    throw ConvergenceError("reg_inc_gamma_p: continued fraction did not converge for a=" +
                               fmt(a) + ", x=" + fmt(x),
                           x, x, cap);
}

void check_shapes(double a, double b, const char* op) {
    require_finite(a, "a", op);
    require_finite(b, "b", op);
    if (a <= 0.0) domain_fail(op, "shape a must be > 0, got " + fmt(a));
    if (b <= 0.0) domain_fail(op, "shape b must be > 0, got " + fmt(b));
}

}  // namespace

namespace detail {

Real log1pmx(Real u) {
    if (u <= -1.0) {
        if (u == -1.0) return -std::numeric_limits<double>::infinity();
        return std::numeric_limits<double>::quiet_NaN();
    }
    if (std::fabs(u) >= 0.25) return std::log1p(u) - u;
    // -u^2/2 + u^3/3 - u^4/4 + ...
    double power = u * u;
    double sum = -0.5 * power;
    for (int k = 3; k < 64; ++k) {
        power *= -u;
        const double term = -power / static_cast<double>(k);
        sum += term;
        if (std::fabs(term) <= std::fabs(sum) * kEps * 0.5) break;
    }
    return sum;
}

Real stirling_correction(Real z) {
    const double r = 1.0 / z;
    const double r2 = r * r;
    // Bernoulli terms B_2k / (2k (2k-1)), k = 1..8.
    constexpr double c1 = 1.0 / 12.0;
    constexpr double c2 = -1.0 / 360.0;
    constexpr double c3 = 1.0 / 1260.0;
    constexpr double c4 = -1.0 / 1680.0;
    constexpr double c5 = 1.0 / 1188.0;
    constexpr double c6 = -691.0 / 360360.0;
    constexpr double c7 = 1.0 / 156.0;
    constexpr double c8 = -3617.0 / 122400.0;
    return r * (c1 + r2 * (c2 + r2 * (c3 + r2 * (c4 + r2 * (c5 + r2 * (c6 + r2 * (c7 + r2 * c8)))))));
}

Real log_beta_power_terms(Real x, Real a, Real b) {
    // t = x (a + b) - a with a + b held exactly; a log1p(t/a) + b log1p(-t/b)
    // then cancels to first order without a rounding residue.
    const DoubleDouble c_exact = DoubleDouble(a) + DoubleDouble(b);
    const double t = static_cast<double>(DoubleDouble(x) * c_exact - DoubleDouble(a));
    const double c = c_exact.hi;
    const bool a_large = a >= kStirlingThreshold;
    const bool b_large = b >= kStirlingThreshold;
    if (a_large && b_large) {
        return a * log1pmx(t / a) + b * log1pmx(-t / b) +
               0.5 * std::log(a * (b / c)) - kHalfLogTwoPi -
               stirling_correction(a) - stirling_correction(b) + stirling_correction(c);
    }
    if (b_large) {
        const double xc = static_cast<double>(DoubleDouble(x) * c_exact);
        return a * std::log(xc) - xc + b * log1pmx(-t / b) - 0.5 * std::log1p(a / b) -
               log_gamma(a) - stirling_correction(b) + stirling_correction(c);
    }
    if (a_large) {
        const double yc = static_cast<double>(one_minus(x) * c_exact);
        return b * std::log(yc) - yc + a * log1pmx(t / a) - 0.5 * std::log1p(b / a) -
               log_gamma(b) - stirling_correction(a) + stirling_correction(c);
    }
    return a * std::log(x) + b * std::log1p(-x) - log_beta(a, b);
}

Real log_gamma_power_terms(Real a, Real x) {
    if (a >= kStirlingThreshold) {
        return a * log1pmx((x - a) / a) + 0.5 * std::log(a) - kHalfLogTwoPi -
               stirling_correction(a);
    }
    return a * std::log(x) - x - log_gamma(a);
}

}  // namespace detail

Real log_gamma(Real x) {
    constexpr const char* op = "log_gamma";
    require_finite(x, "x", op);
    if (x <= 0.0) domain_fail(op, "x must be > 0, got " + fmt(x));
    if (x == 1.0 || x == 2.0) return 0.0;

    if (x < 0.5) return log_gamma_two_plus(x) - std::log1p(x) - std::log(x);
    if (x < 1.5) return log_gamma_two_plus(x - 1.0) - std::log1p(x - 1.0);
    if (x < 2.5) return log_gamma_two_plus(x - 2.0);
    if (x < kStirlingThreshold) {
        double y = x;
        double product = 1.0;
        while (y >= 2.5) {
            y -= 1.0;
            product *= y;
        }
        return log_gamma_two_plus(y - 2.0) + std::log(product);
    }
    return (x - 0.5) * std::log(x) - x + kHalfLogTwoPi + detail::stirling_correction(x);
}

Real log_beta(Real a, Real b) {
    check_shapes(a, b, "log_beta");
    const double small = std::min(a, b);
    const double large = std::max(a, b);
    const double c = a + b;
    if (small >= kStirlingThreshold) {
        return kHalfLogTwoPi + small * std::log(small / c) + large * std::log(large / c) -
               0.5 * (std::log(small) + std::log(large) - std::log(c)) +
               detail::stirling_correction(small) + detail::stirling_correction(large) -
               detail::stirling_correction(c);
    }
    if (large >= kStirlingThreshold) {
        // ln Gamma(large) - ln Gamma(large + small) without cancellation.
        const double ratio = -(large - 0.5) * std::log1p(small / large) - small * std::log(c) +
                             small + detail::stirling_correction(large) -
                             detail::stirling_correction(c);
        return log_gamma(small) + ratio;
    }
    return log_gamma(a) + log_gamma(b) - log_gamma(c);
}

namespace detail {

Real reg_inc_beta_minus(Probability x, Real a, Real b, Real level) {
    constexpr const char* op = "reg_inc_beta";
    check_shapes(a, b, op);
    require_finite(x, "x", op);
    if (x < 0.0 || x > 1.0) domain_fail(op, "x must lie in [0, 1], got " + fmt(x));
    if (x == 0.0) return -level;
    if (x == 1.0) return 1.0 - level;

    const double front = std::exp(log_beta_power_terms(x, a, b));
    if (x < (a + 1.0) / (a + b + 2.0)) {
        return front * beta_continued_fraction(DoubleDouble(x), a, b) / a - level;
    }
    const double complement = front * beta_continued_fraction(one_minus(x), b, a) / b;
    return (1.0 - level) - complement;
}

}  // namespace detail

Probability reg_inc_beta(Probability x, Real a, Real b) {
    return detail::reg_inc_beta_minus(x, a, b, 0.0);
}

Real beta_density(Real x, Real a, Real b) {
    constexpr const char* op = "beta_density";
    check_shapes(a, b, op);
    require_finite(x, "x", op);
    if (x <= 0.0) {
        if (x == 0.0 && a < 1.0) return std::numeric_limits<double>::infinity();
        if (x == 0.0 && a == 1.0) return std::exp(-log_beta(a, b));
        return 0.0;
    }
    if (x >= 1.0) {
        if (x == 1.0 && b < 1.0) return std::numeric_limits<double>::infinity();
        if (x == 1.0 && b == 1.0) return std::exp(-log_beta(a, b));
        return 0.0;
    }
    return std::exp(detail::log_beta_power_terms(x, a, b) - std::log(x) - std::log1p(-x));
}

namespace detail {

Real reg_inc_gamma_p_minus(Real a, Real x, Real level) {
    constexpr const char* op = "reg_inc_gamma_p";
    require_finite(a, "a", op);
    require_finite(x, "x", op);
    if (a <= 0.0) domain_fail(op, "shape a must be > 0, got " + fmt(a));
    if (x < 0.0) domain_fail(op, "x must be >= 0, got " + fmt(x));
    if (x == 0.0) return -level;

    const double front = std::exp(log_gamma_power_terms(a, x));
    // Past a + 1 the continued fraction needs O(sqrt(a)) terms; the series is
    // cheaper until about one standard deviation beyond the mean.
    if (x < a + 1.0 + std::sqrt(a)) return front * gamma_series(a, x) - level;
    return (1.0 - level) - front * gamma_continued_fraction(a, x);
}

}  // namespace detail

Probability reg_inc_gamma_p(Real a, Real x) { return detail::reg_inc_gamma_p_minus(a, x, 0.0); }

Real gamma_density(Real x, Real a) {
    constexpr const char* op = "gamma_density";
    require_finite(a, "a", op);
    require_finite(x, "x", op);
    if (a <= 0.0) domain_fail(op, "shape a must be > 0, got " + fmt(a));
    if (x < 0.0) return 0.0;
    if (x == 0.0) {
        if (a < 1.0) return std::numeric_limits<double>::infinity();
        return a == 1.0 ? 1.0 : 0.0;
    }
    return std::exp(detail::log_gamma_power_terms(a, x) - std::log(x));
}

namespace {

constexpr double kSqrtTwo = 1.41421356237309504880168872420969808;
constexpr double kSqrtTwoPi = 2.50662827463100050241576528481104525;

// Acklam's rational approximation (relative error ~1e-9), refined below.
double normal_quantile_initial(double p) {
    constexpr double a[] = {-3.969683028665376e+01, 2.209460984245205e+02, -2.759285104469687e+02,
                            1.383577518672690e+02,  -3.066479806614716e+01, 2.506628277459239e+00};
    constexpr double b[] = {-5.447609879822406e+01, 1.615858368580409e+02, -1.556989798598866e+02,
                            6.680131188771972e+01,  -1.328068155288572e+01};
    constexpr double c[] = {-7.784894002430293e-03, -3.223964580411365e-01, -2.400758277161838e+00,
                            -2.549732539343734e+00, 4.374664141464968e+00,  2.938163982698783e+00};
    constexpr double d[] = {7.784695709041462e-03, 3.224671290700398e-01, 2.445134137142996e+00,
                            3.754408661907416e+00};
    constexpr double p_low = 0.02425;
    if (p < p_low) {
        const double q = std::sqrt(-2.0 * std::log(p));
        return (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
               ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
    }
    if (p > 1.0 - p_low) {
        const double q = std::sqrt(-2.0 * std::log1p(-p));
        return -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
               ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
    }
    const double q = p - 0.5;
    const double r = q * q;
    return (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
           (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
}

}  // namespace

Real normal_quantile(Probability p) {
    constexpr const char* op = "normal_quantile";
    require_finite(p, "p", op);
    if (p <= 0.0 || p >= 1.0) domain_fail(op, "p must lie in (0, 1), got " + fmt(p));
    if (p == 0.5) return 0.0;
    double z = normal_quantile_initial(p);
    // Halley steps on Phi(z) - p, with the smaller tail evaluated directly.
    for (int k = 0; k < 3; ++k) {
        const double err = z < 0.0 ? 0.5 * std::erfc(-z / kSqrtTwo) - p
                                   : (1.0 - p) - 0.5 * std::erfc(z / kSqrtTwo);
        const double u = err * kSqrtTwoPi * std::exp(0.5 * z * z);
        z -= u / (1.0 + 0.5 * z * u);
    }
    return z;
}

namespace detail {

Real normal_quantile_from_half(Real offset) {
    if (!(offset > -0.5 && offset < 0.5)) {
        domain_fail("normal_quantile_from_half", "offset must lie in (-1/2, 1/2), got " + fmt(offset));
    }
    if (offset == 0.0) return 0.0;
    if (std::fabs(offset) > 0.25) return normal_quantile(0.5 + offset);
    // Newton on erf(z / sqrt 2) / 2 = offset, which is well conditioned near 0.
    double z = normal_quantile(0.5 + offset);
    if (z == 0.0) z = offset * kSqrtTwoPi;
    for (int k = 0; k < 3; ++k) {
        const double err = 0.5 * std::erf(z / kSqrtTwo) - offset;
        z -= err * kSqrtTwoPi * std::exp(0.5 * z * z);
    }
    return z;
}

}  // namespace detail

}  // namespace betamedian
