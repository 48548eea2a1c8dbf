#include <doctest.h>

#include "betamedian/approximation.hpp"
#include "betamedian/errors.hpp"
#include "betamedian/median_solver.hpp"
#include "betamedian/special_functions.hpp"

#include "oracles/oracles.hpp"

#include <algorithm>
#include <cmath>
#include <random>

using namespace betamedian;

TEST_CASE("Beta(2, 5) median against bisection on the binomial sum") {
    const double ref = static_cast<double>(oracle::beta_median_integer(2, 5));
    CHECK(ref == doctest::Approx(0.26444998329566).epsilon(1e-13));
    CHECK(std::fabs(beta_median_exact(BetaParams(2.0, 5.0)) - ref) <= 1e-14);
}

TEST_CASE("integer shapes against bisection on the binomial sum") {
    for (int a = 1; a <= 30; a += 4) {
        for (int b = 1; b <= 30; b += 3) {
            const double ref = static_cast<double>(oracle::beta_median_integer(a, b));
            INFO("a = " << a << ", b = " << b);
            CHECK(std::fabs(beta_median_exact(BetaParams(a, b)) - ref) <= 1e-13);
        }
    }
}

TEST_CASE("closed-form cases") {
    CHECK(beta_median_exact(BetaParams(4.0, 1.0)) == 0.8408964152537145);
    for (double s : {0.5, 1.0, 2.0, 5.0, 10.0, 300.0}) {
        INFO("shape = " << s);
        CHECK(std::fabs(beta_median_exact(BetaParams(s, 1.0)) - std::exp2(-1.0 / s)) <= 1e-15);
        CHECK(std::fabs(beta_median_exact(BetaParams(1.0, s)) - (1.0 - std::exp2(-1.0 / s))) <= 1e-15);
        CHECK(beta_median_exact(BetaParams(s, s)) == doctest::Approx(0.5).epsilon(1e-15));
    }
}

TEST_CASE("CDF round trip and mirror symmetry") {
    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> e(-1.0, 4.0);
    for (int i = 0; i < 400; ++i) {
        const double a = std::pow(10.0, e(rng));
        const double b = std::pow(10.0, e(rng));
        const double m = beta_median_exact(BetaParams(a, b));
        INFO("a = " << a << ", b = " << b << ", m = " << m);
        // Near 1 a single ulp step in m can move the CDF by more than 1e-12.
        const double ulp_step = beta_density(m, a, b) * (std::nextafter(m, 2.0) - m);
        CHECK(std::fabs(reg_inc_beta(m, a, b) - 0.5) <= std::max(1e-12, ulp_step));
        const double mirror = beta_median_exact(BetaParams(b, a));
        CHECK(std::fabs(m + mirror - 1.0) <= 1e-12);
    }
}

TEST_CASE("median lies between mode and mean for 1 < a < b") {
    std::mt19937_64 rng(19);
    std::uniform_real_distribution<double> u(1.0, 60.0);
    for (int i = 0; i < 200; ++i) {
        double a = u(rng);
        double b = u(rng);
        if (a > b) std::swap(a, b);
        if (a == b || a == 1.0) continue;
        const BetaParams p(a, b);
        const double m = beta_median_exact(p);
        CHECK(m >= beta_mode(p) - 1e-12);
        CHECK(m <= beta_mean(p) + 1e-12);
    }
}

TEST_CASE("gamma median against bisection on the series") {
    CHECK(gamma_median_exact(1.0) == doctest::Approx(std::log(2.0)).epsilon(1e-15));
    const double ten = static_cast<double>(oracle::gamma_median(10.0L));
    CHECK(ten == doctest::Approx(9.66871461471413).epsilon(1e-13));
    for (double a : {0.05, 0.5, 1.0, 2.0, 5.0, 10.0, 50.0, 100.0, 700.0}) {
        const double ref = static_cast<double>(oracle::gamma_median(a));
        INFO("a = " << a);
        CHECK(gamma_median_exact(a) == doctest::Approx(ref).epsilon(1e-13));
    }
}

TEST_CASE("gamma median for extreme shapes") {
    for (double a : {1e-3, 1e5, 1e8}) {
        const double m = gamma_median_exact(a);
        INFO("a = " << a);
        CHECK(std::fabs(reg_inc_gamma_p(a, m) - 0.5) <= 1e-12);
    }
    CHECK_THROWS_AS(gamma_median_exact(0.0), DomainError);
    CHECK_THROWS_AS(gamma_median_exact(-2.0), DomainError);
}

TEST_CASE("unrepresentable median reports the bracket") {
    // The median 2^{-10000} of Beta(1e-4, 1) underflows.
    try {
        (void)beta_median_exact(BetaParams(1e-4, 1.0));
        FAIL("expected ConvergenceError");
    } catch (const ConvergenceError& e) {
        CHECK(e.bracket_lo() == 0.0);
        CHECK(e.bracket_hi() > 0.0);
    }
}

TEST_CASE("iteration budget exhaustion reports the bracket") {
    SolverConfig cfg;
    cfg.max_iterations = 1;
    try {
        (void)beta_median_exact(BetaParams(2.0, 5.0), cfg);
        FAIL("expected ConvergenceError");
    } catch (const ConvergenceError& e) {
        CHECK(e.iterations() == 1);
        CHECK(e.bracket_lo() < e.bracket_hi());
        CHECK(e.bracket_lo() <= 0.26444998329566);
        CHECK(e.bracket_hi() >= 0.26444998329566);
    }
}

TEST_CASE("SolverConfig validation") {
    SolverConfig cfg;
    cfg.cdf_tolerance = 0.0;
    CHECK_THROWS_AS(beta_median_exact(BetaParams(2.0, 3.0), cfg), DomainError);
    cfg = SolverConfig{};
    cfg.max_iterations = 0;
    CHECK_THROWS_AS(gamma_median_exact(2.0, cfg), DomainError);
}
