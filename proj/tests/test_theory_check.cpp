#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <chrono>
#include <cmath>

#include "vortexlab/theory_check.hpp"

using namespace vortexlab;

namespace {

// Direct long-double evaluation of log(rhs) - log(lhs) for (A).
long double sum_slack_oracle(int big_m, long double s) {
    long double term = 1.0L, lhs = 1.0L;
    for (int m = 1; m <= big_m; ++m) {
        term *= s * big_m / m;
        lhs += term;
    }
    return big_m * std::log1p(std::exp(1.0L) * s) - std::log(lhs);
}

// Direct long-double evaluation of log(rhs) - log(lhs) for (B).
long double falling_slack_oracle(int big_m, int m) {
    long double log_falling = 0.0L;
    for (int k = 0; k < m; ++k) log_falling += std::log(static_cast<long double>(big_m - k));
    return log_falling + m - m * std::log(static_cast<long double>(big_m));
}

}  // namespace

TEST_CASE("M = 1: 1 + s <= 1 + e s") {
    for (double s : {1e-3, 0.1, 1.0, 10.0}) {
        CHECK(sum_bound_slack(1, s) == doctest::Approx(std::log1p(M_E * s) - std::log1p(s)).epsilon(1e-12));
        CHECK(sum_bound_slack(1, s) > 0.0);
    }
}

TEST_CASE("M = 2, s = 1: 5 <= (1 + e)^2") {
    CHECK(sum_bound_slack(2, 1.0) == doctest::Approx(2.0 * std::log1p(M_E) - std::log(5.0)).epsilon(1e-12));
    CHECK(std::exp(sum_bound_slack(2, 1.0)) * 5.0 == doctest::Approx((1.0 + M_E) * (1.0 + M_E)).epsilon(1e-12));
}

TEST_CASE("m = M = 4: 256 <= 24 e^4") {
    CHECK(falling_bound_slack(4, 4) == doctest::Approx(std::log(24.0) + 4.0 - std::log(256.0)).epsilon(1e-12));
    CHECK(std::exp(falling_bound_slack(4, 4)) * 256.0 == doctest::Approx(1310.35).epsilon(1e-5));
}

TEST_CASE("m = 0 is an equality") {
    for (int M = 1; M <= 60; ++M) CHECK(falling_bound_slack(M, 0) == 0.0);
}

TEST_CASE("slacks agree with a long-double oracle") {
    for (int M = 1; M <= 60; M += 7) {
        for (double s : {1e-3, 3e-2, 0.5, 2.0, 10.0}) {
            CHECK(sum_bound_slack(M, s) ==
                  doctest::Approx(static_cast<double>(sum_slack_oracle(M, s))).epsilon(1e-10).scale(1.0));
        }
        for (int m = 0; m <= M; ++m) {
            CHECK(falling_bound_slack(M, m) ==
                  doctest::Approx(static_cast<double>(falling_slack_oracle(M, m))).epsilon(1e-10).scale(1.0));
        }
    }
}

TEST_CASE("full scan passes within one second") {
    const auto t0 = std::chrono::steady_clock::now();
    const TheoryCheckReport r = check_theory();
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    CHECK(r.passed());
    CHECK(r.sum_bound.violations == 0);
    CHECK(r.falling_bound.violations == 0);
    CHECK(r.sum_bound.evaluations == 60 * 64);
    CHECK(r.falling_bound.evaluations == 60 * 61 / 2);
    CHECK(r.trivial_equalities == 60);
    CHECK(r.sum_bound.min_slack > 0.0);
    CHECK(r.falling_bound.min_slack > 0.0);
    CHECK(secs <= 1.0);
}

TEST_CASE("scan reports the grid minimum") {
    TheoryCheckOptions o;
    o.max_m = 5;
    o.s_points = 4;
    const TheoryCheckReport r = check_theory(o);
    double best = INFINITY;
    for (int M = 1; M <= 5; ++M) {
        for (int m = 1; m <= M; ++m) best = std::min(best, falling_bound_slack(M, m));
    }
    CHECK(r.falling_bound.min_slack == doctest::Approx(best).epsilon(1e-14));
}
