#pragma once

#include <string>
#include <vector>

#include "vortexlab/field.hpp"
#include "vortexlab/ns_solver.hpp"
#include "vortexlab/point_vortex.hpp"

namespace vortexlab {

/// Lamb-Oseen profile Gamma(xi) = exp(-|xi|^2 / 4) / (4 pi).
double lamb_oseen_profile(double xi_squared);

/// (a / sigma^2) Gamma((x - center) / sigma) with sigma = eps / 2, so the
/// continuum W2 about the center is eps. Renormalized to intensity a.
ScalarField gaussian_component(const Vec2& center, double eps, double a, const Grid& grid);

/// Anisotropic Gaussian with axis ratio `aspect` >= 1 along direction `angle`,
/// scaled so that its continuum W2 about the center is still eps.
ScalarField stretched_gaussian_component(const Vec2& center, double eps, double a, double aspect,
                                         double angle, const Grid& grid);

/// Uniform disc of radius eps, density a/(pi eps^2), with a smooth radial
/// transition of width `mollify_width` centered on r = eps. Renormalized to a.
ScalarField disc_component(const Vec2& center, double eps, double a, const Grid& grid,
                           double mollify_width);

/// a (1/(nu t)) Gamma((x - center) / sqrt(nu t)), sampled without renormalization.
ScalarField lamb_oseen_exact(double t, double nu, double a, const Vec2& center, const Grid& grid);

/// Periodic Lamb-Oseen solution projected onto the grid's Fourier modes:
/// coefficients (a / L^2) exp(-nu t |k|^2 - i k.center), cosine-only at Nyquist.
/// Heat flow maps this family into itself exactly, so it serves as the
/// aliasing-free oracle for the viscous solver. Intensity is a exactly.
ScalarField lamb_oseen_band_limited(double t, double nu, double a, const Vec2& center, const Grid& grid);

enum class Profile { Gaussian, Disc, StretchedGaussian };

Profile parse_profile(const std::string& name);
std::string profile_name(Profile p);

struct BlobSpec {
    Vec2 center;
    double eps = 0.05;
    double a = 1.0;
    Profile profile = Profile::Gaussian;
    double mollify_width = 0.0;  ///< disc only; 0 selects eps / 8
    double aspect = 1.0;         ///< stretched Gaussian only
    double angle = 0.0;          ///< stretched Gaussian only

    friend bool operator==(const BlobSpec&, const BlobSpec&) = default;
};

struct Configuration {
    ComponentSet set;
    std::vector<Vec2> centers;
    std::vector<double> eps;
    double min_distance = 0.0;  ///< d; infinity for a single component
};

/// Builds one component per blob. Throws ConfigError naming every overlapping
/// pair (distance <= 2 max eps) and every blob too close to the boundary.
Configuration assemble_configuration(const std::vector<BlobSpec>& layout, const Grid& grid);

struct ComponentAssumptions {
    double w2_to_y = 0.0;
    double eps = 0.0;
    bool w2_ok = false;
    double lp = 0.0;        ///< ||omega_i||_p
    double gamma_min = 0.0; ///< smallest gamma with ||omega_i||_p <= eps^-gamma
    double outer_mass = 0.0;
    double beta_max = 0.0;  ///< largest beta with m_i(0, R) <= eps^beta
    bool outer_ok = false;
};

struct AssumptionReport {
    double eps = 0.0;
    double gamma = 0.0;
    double beta = 0.0;
    double radius = 0.0;
    double p = 0.0;
    double total_lp = 0.0;
    double gamma_min = 0.0;  ///< for the summed field
    double gamma_floor = 0.0; ///< 2 - 2/p, implied by W2 <= eps together with the Lp bound
    bool concentration_ok = false;
    bool lp_ok = false;
    bool outer_ok = false;
    double beta_max = 0.0;    ///< min over components
    std::vector<ComponentAssumptions> components;

    bool all_ok() const { return concentration_ok && lp_ok && outer_ok; }
};

/// Report-only check of W2(omega_i/a_i, delta_{Y_i}) <= eps, ||omega||_p <= eps^-gamma
/// and m_i(0, R) <= eps^beta.
AssumptionReport verify_assumptions(const ComponentSet& set, const PVState& pv0, double eps,
                                    double gamma, double beta, double radius, double p);

}  // namespace vortexlab
