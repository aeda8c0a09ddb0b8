#include "vortexlab/theory_check.hpp"

#include <boost/multiprecision/cpp_bin_float.hpp>

#include <cmath>
#include <limits>

namespace vortexlab {

namespace {

using Real = boost::multiprecision::cpp_bin_float_50;

Real euler_e() {
    static const Real e = boost::multiprecision::exp(Real(1));
    return e;
}

Real sum_bound_slack_hp(int big_m, const Real& s) {
    const Real x = s * big_m;
    Real term = 1;
    Real lhs = 1;
    for (int m = 1; m <= big_m; ++m) {
        term *= x / m;
        lhs += term;
    }
    const Real rhs = boost::multiprecision::pow(1 + euler_e() * s, big_m);
    return boost::multiprecision::log(rhs) - boost::multiprecision::log(lhs);
}

Real falling_bound_slack_hp(int big_m, int m) {
    // log(M!/(M-m)!) + m - m log M
    Real log_rhs = m;
    for (int k = big_m - m + 1; k <= big_m; ++k) log_rhs += boost::multiprecision::log(Real(k));
    const Real log_lhs = m * boost::multiprecision::log(Real(big_m));
    return log_rhs - log_lhs;
}

}  // namespace

double sum_bound_slack(int big_m, double s) {
    return sum_bound_slack_hp(big_m, Real(s)).convert_to<double>();
}

double falling_bound_slack(int big_m, int m) {
    return falling_bound_slack_hp(big_m, m).convert_to<double>();
}

bool TheoryCheckReport::passed() const {
    return sum_bound.violations == 0 && falling_bound.violations == 0 &&
           sum_bound.min_slack > 0.0 && falling_bound.min_slack > 0.0;
}

TheoryCheckReport check_theory(const TheoryCheckOptions& options) {
    TheoryCheckReport rep;
    rep.sum_bound.name = "sum_{m<=M} (sM)^m/m! <= (1+es)^M";
    rep.falling_bound.name = "M^m <= M!/(M-m)! e^m";
    rep.sum_bound.min_slack = std::numeric_limits<double>::infinity();
    rep.falling_bound.min_slack = std::numeric_limits<double>::infinity();

    const double log_lo = std::log10(options.s_min);
    const double log_hi = std::log10(options.s_max);
    for (int big_m = 1; big_m <= options.max_m; ++big_m) {
        for (int k = 1; k <= options.s_points; ++k) {
            const double s = std::pow(10.0, log_lo + (log_hi - log_lo) * k / options.s_points);
            const double slack = sum_bound_slack_hp(big_m, Real(s)).convert_to<double>();
            ++rep.sum_bound.evaluations;
            if (slack < 0.0) ++rep.sum_bound.violations;
            if (slack < rep.sum_bound.min_slack) {
                rep.sum_bound.min_slack = slack;
                rep.sum_bound.worst_M = big_m;
                rep.sum_bound.worst_param = s;
            }
        }
        for (int m = 0; m <= big_m; ++m) {
            const Real slack_hp = falling_bound_slack_hp(big_m, m);
            if (m == 0) {
                ++rep.trivial_equalities;
                if (slack_hp < 0) ++rep.falling_bound.violations;
                continue;
            }
            const double slack = slack_hp.convert_to<double>();
            ++rep.falling_bound.evaluations;
            if (slack < 0.0) ++rep.falling_bound.violations;
            if (slack < rep.falling_bound.min_slack) {
                rep.falling_bound.min_slack = slack;
                rep.falling_bound.worst_M = big_m;
                rep.falling_bound.worst_param = m;
            }
        }
    }
    return rep;
}

}  // namespace vortexlab
