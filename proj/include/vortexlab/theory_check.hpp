#pragma once

#include <string>
#include <vector>

namespace vortexlab {

// Numeric scan of two elementary inequalities:
//   (A)  sum_{m=0}^{M} (s M)^m / m!  <=  (1 + e s)^M
//   (B)  M^m  <=  M! / (M - m)! * e^m,   0 <= m <= M
// Slack is log(rhs) - log(lhs), evaluated with 50-digit binary floats.

struct TheoryCheckOptions {
    int max_m = 60;
    int s_points = 64;  ///< log grid on (s_min, s_max]
    double s_min = 1e-3;
    double s_max = 10.0;
};

struct InequalitySummary {
    std::string name;
    long evaluations = 0;
    long violations = 0;
    double min_slack = 0.0;
    int worst_M = 0;
    double worst_param = 0.0;  ///< s for (A), m for (B)
};

struct TheoryCheckReport {
    InequalitySummary sum_bound;     ///< (A)
    InequalitySummary falling_bound; ///< (B) over m >= 1
    long trivial_equalities = 0;     ///< (B) at m = 0, where both sides equal 1
    bool passed() const;
};

TheoryCheckReport check_theory(const TheoryCheckOptions& options = {});

/// log(rhs) - log(lhs) of (A) for one (M, s).
double sum_bound_slack(int big_m, double s);
/// log(rhs) - log(lhs) of (B) for one (M, m).
double falling_bound_slack(int big_m, int m);

}  // namespace vortexlab
