#include "vortexlab/initial_data.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "vortexlab/diagnostics.hpp"
#include "vortexlab/errors.hpp"
#include "vortexlab/spectral.hpp"

namespace vortexlab {

namespace {

void require_positive(double v, const char* what) {
    if (!(v > 0.0) || !std::isfinite(v)) {
        throw ConfigError(std::string(what) + " must be positive and finite");
    }
}

void require_interior(const Vec2& c, double extent, const Grid& g, const char* what) {
    const double l = g.length();
    if (c.x - extent < 0.0 || c.x + extent > l || c.y - extent < 0.0 || c.y + extent > l) {
        std::ostringstream msg;
        msg << what << " at (" << c.x << ", " << c.y << ") lies within " << extent
            << " of the domain boundary";
        throw ConfigError(msg.str());
    }
}

template <class Profile>
ScalarField sample(const Grid& g, const Vec2& center, Profile&& profile) {
    ScalarField f(g);
    const int n = g.size();
    for (int i2 = 0; i2 < n; ++i2) {
        const double dy = g.wrap_displacement(g.coord(i2) - center.y);
        for (int i1 = 0; i1 < n; ++i1) {
            const double dx = g.wrap_displacement(g.coord(i1) - center.x);
            f(i1, i2) = profile(dx, dy);
        }
    }
    return f;
}

void renormalize(ScalarField& f, double a) {
    const double current = intensity(f);
    if (current == 0.0) throw ConfigError("blob is not resolved by the grid (zero mass)");
    f *= a / current;
}

/// C-infinity step: 0 for x <= 0, 1 for x >= 1.
double smooth_step(double x) {
    if (x <= 0.0) return 0.0;
    if (x >= 1.0) return 1.0;
    const double f0 = std::exp(-1.0 / x);
    const double f1 = std::exp(-1.0 / (1.0 - x));
    return f0 / (f0 + f1);
}

double blob_extent(const BlobSpec& b) {
    switch (b.profile) {
        case Profile::Gaussian:
            return 2.0 * b.eps;  // 4 sigma
        case Profile::StretchedGaussian:
            return 4.0 * std::max(b.aspect, 1.0) * b.eps / std::sqrt(2.0 * (1.0 + b.aspect * b.aspect));
        case Profile::Disc:
            return b.eps + (b.mollify_width > 0.0 ? b.mollify_width : b.eps / 8.0);
    }
    return b.eps;
}

}  // namespace

double lamb_oseen_profile(double xi_squared) {
    return std::exp(-0.25 * xi_squared) / (4.0 * M_PI);
}

ScalarField gaussian_component(const Vec2& center, double eps, double a, const Grid& grid) {
    require_positive(eps, "eps");
    const double sigma = 0.5 * eps;
    require_interior(center, 4.0 * sigma, grid, "gaussian blob");
    const double inv_s2 = 1.0 / (sigma * sigma);
    ScalarField f = sample(grid, center, [&](double dx, double dy) {
        return a * inv_s2 * lamb_oseen_profile((dx * dx + dy * dy) * inv_s2);
    });
    renormalize(f, a);
    return f;
}

ScalarField stretched_gaussian_component(const Vec2& center, double eps, double a, double aspect,
                                         double angle, const Grid& grid) {
    require_positive(eps, "eps");
    if (!(aspect >= 1.0)) throw ConfigError("aspect ratio must be >= 1");
    const double s = eps / std::sqrt(2.0 * (1.0 + aspect * aspect));
    const double major = aspect * s;
    const double minor = s;
    require_interior(center, 4.0 * major, grid, "stretched gaussian blob");
    const double c = std::cos(angle), sn = std::sin(angle);
    const double amp = a / (4.0 * M_PI * major * minor);
    ScalarField f = sample(grid, center, [&](double dx, double dy) {
        const double along = c * dx + sn * dy;
        const double across = -sn * dx + c * dy;
        return amp * std::exp(-0.25 * (along * along / (major * major) +
                                       across * across / (minor * minor)));
    });
    renormalize(f, a);
    return f;
}

ScalarField disc_component(const Vec2& center, double eps, double a, const Grid& grid,
                           double mollify_width) {
    require_positive(eps, "eps");
    if (!(mollify_width > 0.0 && mollify_width <= 0.25 * eps)) {
        throw ConfigError("disc mollify_width must lie in (0, eps/4]");
    }
    require_interior(center, eps + mollify_width, grid, "disc blob");
    const double inner = eps - 0.5 * mollify_width;
    const double density = a / (M_PI * eps * eps);
    ScalarField f = sample(grid, center, [&](double dx, double dy) {
        const double r = std::hypot(dx, dy);
        return density * (1.0 - smooth_step((r - inner) / mollify_width));
    });
    renormalize(f, a);
    return f;
}

ScalarField lamb_oseen_exact(double t, double nu, double a, const Vec2& center, const Grid& grid) {
    const double nut = nu * t;
    if (!(nut > 0.0) || !std::isfinite(nut)) {
        throw ConfigError("lamb_oseen_exact: nu * t must be positive (atomic datum not representable)");
    }
    const double inv = 1.0 / nut;
    return sample(grid, center, [&](double dx, double dy) {
        return a * inv * lamb_oseen_profile((dx * dx + dy * dy) * inv);
    });
}

ScalarField lamb_oseen_band_limited(double t, double nu, double a, const Vec2& center, const Grid& grid) {
    const double nut = nu * t;
    if (!(nut > 0.0) || !std::isfinite(nut)) {
        throw ConfigError("lamb_oseen_band_limited: nu * t must be positive");
    }
    const int n = grid.size();
    const double x0 = grid.coord(0);
    auto factors = [&](double c) {
        std::vector<Complex> g(n);
        for (int j = 0; j < n; ++j) {
            const double k = grid.wavenumber(j);
            const double phase = -k * (c - x0);
            const double decay = std::exp(-nut * k * k);
            g[j] = (j == n / 2) ? Complex(decay * std::cos(phase), 0.0) : decay * std::polar(1.0, phase);
        }
        return g;
    };
    const auto g1 = factors(center.x);
    const auto g2 = factors(center.y);
    const double scale = a / (grid.length() * grid.length());
    Spectrum s(grid);
    for (int j2 = 0; j2 < n; ++j2) {
        for (int j1 = 0; j1 < s.columns(); ++j1) s.at(j1, j2) = scale * g1[j1] * g2[j2];
    }
    return to_field(s);
}

Profile parse_profile(const std::string& name) {
    if (name == "gaussian") return Profile::Gaussian;
    if (name == "disc") return Profile::Disc;
    if (name == "stretched_gaussian") return Profile::StretchedGaussian;
    throw ConfigError("unknown blob profile '" + name + "'");
}

std::string profile_name(Profile p) {
    switch (p) {
        case Profile::Gaussian: return "gaussian";
        case Profile::Disc: return "disc";
        case Profile::StretchedGaussian: return "stretched_gaussian";
    }
    return "gaussian";
}

Configuration assemble_configuration(const std::vector<BlobSpec>& layout, const Grid& grid) {
    if (layout.empty()) throw ConfigError("layout must contain at least one blob");
    double max_eps = 0.0;
    for (const auto& b : layout) {
        require_positive(b.eps, "eps");
        max_eps = std::max(max_eps, b.eps);
    }
    std::ostringstream problems;
    Configuration cfg;
    cfg.min_distance = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < layout.size(); ++i) {
        for (std::size_t j = i + 1; j < layout.size(); ++j) {
            const double d = norm(layout[i].center - layout[j].center);
            cfg.min_distance = std::min(cfg.min_distance, d);
            if (d <= 2.0 * max_eps) {
                problems << " overlap(" << i << "," << j << ": distance " << d << ")";
            }
        }
        const Vec2 c = layout[i].center;
        const double ext = blob_extent(layout[i]);
        const double l = grid.length();
        if (c.x - ext < 0.0 || c.x + ext > l || c.y - ext < 0.0 || c.y + ext > l) {
            problems << " boundary(" << i << ")";
        }
    }
    if (!problems.str().empty()) {
        throw ConfigError("invalid layout:" + problems.str());
    }
    for (const auto& b : layout) {
        ScalarField f;
        switch (b.profile) {
            case Profile::Gaussian:
                f = gaussian_component(b.center, b.eps, b.a, grid);
                break;
            case Profile::Disc:
                f = disc_component(b.center, b.eps, b.a, grid,
                                   b.mollify_width > 0.0 ? b.mollify_width : b.eps / 8.0);
                break;
            case Profile::StretchedGaussian:
                f = stretched_gaussian_component(b.center, b.eps, b.a, b.aspect, b.angle, grid);
                break;
        }
        cfg.set.components.push_back(std::move(f));
        cfg.set.intensities.push_back(b.a);
        cfg.centers.push_back(b.center);
        cfg.eps.push_back(b.eps);
    }
    cfg.set.time = 0.0;
    return cfg;
}

AssumptionReport verify_assumptions(const ComponentSet& set, const PVState& pv0, double eps,
                                    double gamma, double beta, double radius, double p) {
    if (set.size() != pv0.size()) {
        throw ConfigError("verify_assumptions: component and point vortex counts differ");
    }
    AssumptionReport rep;
    rep.eps = eps;
    rep.gamma = gamma;
    rep.beta = beta;
    rep.radius = radius;
    rep.p = p;
    rep.gamma_floor = std::isinf(p) ? 2.0 : 2.0 - 2.0 / p;
    const double log_inv_eps = -std::log(eps);
    auto gamma_of = [&](double norm_p) {
        return log_inv_eps > 0.0 ? std::log(norm_p) / log_inv_eps
                                 : std::numeric_limits<double>::quiet_NaN();
    };
    // eps^beta decreases in beta for eps < 1, so log m / log eps is the largest admissible beta
    auto beta_of = [&](double m) {
        if (m <= 0.0) return std::numeric_limits<double>::infinity();
        return log_inv_eps > 0.0 ? std::log(m) / -log_inv_eps
                                 : std::numeric_limits<double>::quiet_NaN();
    };
    // Generated blobs hit W2 = eps in the continuum; allow for quadrature error.
    constexpr double kW2Slack = 1e-3;

    rep.concentration_ok = true;
    rep.outer_ok = true;
    rep.beta_max = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < set.size(); ++i) {
        const auto& c = set.components[i];
        const double a = set.intensities[i];
        ComponentAssumptions ca;
        ca.eps = eps;
        ca.w2_to_y = w2_to_point(c, a, pv0.positions[i]);
        ca.w2_ok = ca.w2_to_y <= eps * (1.0 + kW2Slack);
        ca.lp = lp_norm(c, p);
        ca.gamma_min = gamma_of(ca.lp);
        ca.outer_mass = outer_mass(c, a, centroid(c, a), radius);
        ca.beta_max = beta_of(ca.outer_mass);
        ca.outer_ok = ca.outer_mass <= std::pow(eps, beta);
        rep.concentration_ok = rep.concentration_ok && ca.w2_ok;
        rep.outer_ok = rep.outer_ok && ca.outer_ok;
        rep.beta_max = std::min(rep.beta_max, ca.beta_max);
        rep.components.push_back(ca);
    }
    rep.total_lp = lp_norm(set.total(), p);
    rep.gamma_min = gamma_of(rep.total_lp);
    rep.lp_ok = rep.total_lp <= std::pow(eps, -gamma);
    return rep;
}

}  // namespace vortexlab
