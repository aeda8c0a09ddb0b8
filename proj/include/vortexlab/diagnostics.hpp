#pragma once

#include <limits>
#include <map>
#include <span>
#include <vector>

#include "vortexlab/field.hpp"
#include "vortexlab/ns_solver.hpp"
#include "vortexlab/point_vortex.hpp"

namespace vortexlab {

// All moments use the minimal-image displacement on the torus and midpoint
// cell sums, so they are the R^2 moments of the periodic surrogate as long as
// the component stays localized (see localization_leak).

/// h^2 * sum(values).
double intensity(const ScalarField& component);

/// Center of vorticity X = (1/a) int x omega. Circular mean per axis of
/// |omega| as a seed, refined by the weighted mean minimal-image displacement.
/// Result lies in [0, L)^2.
Vec2 centroid(const ScalarField& component, double a);

/// W2(omega/a, delta_p): the square root of the second moment about p.
double w2_to_point(const ScalarField& component, double a, const Vec2& p);

/// Normalized mass at minimal-image distance >= L/4 from p.
double localization_leak(const ScalarField& component, double a, const Vec2& p);

/// m(R) = (1/a) h^2 sum over cells at distance >= R from center.
double outer_mass(const ScalarField& component, double a, const Vec2& center, double radius);

/// (h^2 sum |v|^p)^(1/p); p = infinity gives max |v|. Throws for p < 1.
double lp_norm(const ScalarField& field, double p);

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

/// |a_i| (1/a_i) int |x - Y_i| omega_i for one component.
double first_moment_about(const ScalarField& component, double a, const Vec2& y);

/// sum_i |a_i| int |x - Y_i| omega_i / a_i: an upper bound for
/// W1(omega, sum a_i delta_{Y_i}).
double w1_upper_bound(const ComponentSet& components, const PVState& pv);

struct ComponentDiagnostics {
    double t = 0.0;
    int index = 0;
    double a = 0.0;
    Vec2 centroid;
    double w2 = 0.0;          ///< about the centroid
    double w2_about_y = 0.0;  ///< about the paired point vortex
    std::vector<std::pair<double, double>> outer_mass;  ///< (R, m(R))
    std::map<double, double> lp;                        ///< p -> ||omega_i||_p
    double dist_to_y = 0.0;
    double w1_contribution = 0.0;
    double leak = 0.0;
};

struct DiagnosticsRecord {
    double t = 0.0;
    std::vector<ComponentDiagnostics> components;
    PVState pv;
};

struct DiagnosticsSeries {
    std::vector<DiagnosticsRecord> records;
};

struct MetricsSpec {
    std::vector<double> radii{0.1};
    std::vector<double> exponents{1.0, 2.0, 4.0, kInfinity};
};

/// Measures every component of `state` against the paired point vortices.
DiagnosticsRecord measure(const ComponentSet& state, const PVState& pv, const MetricsSpec& metrics);

/// dX_i/dt by centered differences on uniformly spaced records (second-order
/// one-sided at the ends). Differences use minimal images.
std::vector<Vec2> centroid_velocity_fd(const DiagnosticsSeries& series, int index, double length);

struct RateFit {
    double exponent = 0.0;
    double prefactor = 0.0;
    double max_relative_residual = 0.0;
};

/// Least squares for log W = q log s + log C over (s, W) pairs.
RateFit rate_fit(std::span<const std::pair<double, double>> samples);

}  // namespace vortexlab
