#include "vortexlab/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "vortexlab/errors.hpp"

namespace vortexlab {

namespace {

void require_component(double a) {
    if (!(std::abs(a) > 0.0) || !std::isfinite(a)) {
        throw DegenerateComponent("component intensity must be nonzero and finite");
    }
}

/// Calls fn(displacement, value) for every cell, displacement = min_image(x - p).
template <class Fn>
void for_each_displacement(const ScalarField& f, const Vec2& p, Fn&& fn) {
    const Grid& g = f.grid();
    const int n = g.size();
    std::vector<double> dx(n);
    for (int i1 = 0; i1 < n; ++i1) dx[i1] = g.wrap_displacement(g.coord(i1) - p.x);
    for (int i2 = 0; i2 < n; ++i2) {
        const double dy = g.wrap_displacement(g.coord(i2) - p.y);
        const double* row = f.values().data() + static_cast<std::size_t>(i2) * n;
        for (int i1 = 0; i1 < n; ++i1) fn(dx[i1], dy, row[i1]);
    }
}

}  // namespace

double intensity(const ScalarField& component) {
    return component.grid().cell_area() * accurate_sum(component.values());
}

Vec2 centroid(const ScalarField& component, double a) {
    require_component(a);
    const double total = intensity(component);
    if (std::abs(total) < 1e-14) {
        throw DegenerateComponent("centroid: component intensity below 1e-14");
    }
    const Grid& g = component.grid();
    const int n = g.size();
    const double two_pi_over_l = 2.0 * M_PI / g.length();
    double c1 = 0.0, s1 = 0.0, c2 = 0.0, s2 = 0.0;
    std::vector<double> cos1(n), sin1(n);
    for (int i = 0; i < n; ++i) {
        cos1[i] = std::cos(two_pi_over_l * g.coord(i));
        sin1[i] = std::sin(two_pi_over_l * g.coord(i));
    }
    for (int i2 = 0; i2 < n; ++i2) {
        double row_mass = 0.0;
        for (int i1 = 0; i1 < n; ++i1) {
            const double w = std::abs(component(i1, i2));
            row_mass += w;
            c1 += w * cos1[i1];
            s1 += w * sin1[i1];
        }
        c2 += row_mass * cos1[i2];
        s2 += row_mass * sin1[i2];
    }
    auto phase_to_coord = [&](double s, double c) {
        const double theta = std::atan2(s, c);
        return g.wrap_displacement(theta / two_pi_over_l);
    };
    const Vec2 seed = g.wrap_position({phase_to_coord(s1, c1), phase_to_coord(s2, c2)});

    CompensatedSum m1, m2;
    for_each_displacement(component, seed, [&](double dx, double dy, double v) {
        m1 += dx * v;
        m2 += dy * v;
    });
    const double scale = g.cell_area() / a;
    return g.wrap_position({seed.x + scale * m1.value(), seed.y + scale * m2.value()});
}

double w2_to_point(const ScalarField& component, double a, const Vec2& p) {
    require_component(a);
    CompensatedSum sum;
    for_each_displacement(component, p,
                          [&](double dx, double dy, double v) { sum += (dx * dx + dy * dy) * v; });
    const double variance = component.grid().cell_area() * sum.value() / a;
    if (variance < -1e-12) {
        std::ostringstream msg;
        msg << "w2_to_point: negative variance " << variance;
        throw NumericalError(msg.str());
    }
    return std::sqrt(std::max(variance, 0.0));
}

double localization_leak(const ScalarField& component, double a, const Vec2& p) {
    return outer_mass(component, a, p, 0.25 * component.grid().length());
}

double outer_mass(const ScalarField& component, double a, const Vec2& center, double radius) {
    require_component(a);
    if (!(radius >= 0.0)) throw ConfigError("outer_mass: radius must be >= 0");
    const double r2 = radius * radius;
    CompensatedSum sum;
    for_each_displacement(component, center, [&](double dx, double dy, double v) {
        if (dx * dx + dy * dy >= r2) sum += v;
    });
    return component.grid().cell_area() * sum.value() / a;
}

double lp_norm(const ScalarField& field, double p) {
    if (!(p >= 1.0)) throw ConfigError("lp_norm: exponent must be >= 1");
    if (std::isinf(p)) {
        double m = 0.0;
        for (double v : field.values()) m = std::max(m, std::abs(v));
        return m;
    }
    CompensatedSum sum;
    if (p == 1.0) {
        for (double v : field.values()) sum += std::abs(v);
    } else if (p == 2.0) {
        for (double v : field.values()) sum += v * v;
    } else {
        for (double v : field.values()) sum += std::pow(std::abs(v), p);
    }
    return std::pow(field.grid().cell_area() * sum.value(), 1.0 / p);
}

double first_moment_about(const ScalarField& component, double a, const Vec2& y) {
    require_component(a);
    CompensatedSum sum;
    for_each_displacement(component, y,
                          [&](double dx, double dy, double v) { sum += std::hypot(dx, dy) * v; });
    return std::abs(a) * component.grid().cell_area() * sum.value() / a;
}

double w1_upper_bound(const ComponentSet& components, const PVState& pv) {
    if (components.size() != pv.size()) {
        throw ConfigError("w1_upper_bound: component and point vortex counts differ");
    }
    double total = 0.0;
    for (std::size_t i = 0; i < components.size(); ++i) {
        total += first_moment_about(components.components[i], components.intensities[i],
                                    pv.positions[i]);
    }
    return total;
}

DiagnosticsRecord measure(const ComponentSet& state, const PVState& pv, const MetricsSpec& metrics) {
    if (state.size() != pv.size()) {
        throw ConfigError("measure: component and point vortex counts differ");
    }
    DiagnosticsRecord rec;
    rec.t = state.time;
    rec.pv = pv;
    const Grid& g = state.grid();
    for (std::size_t i = 0; i < state.size(); ++i) {
        const ScalarField& c = state.components[i];
        const double a = state.intensities[i];
        ComponentDiagnostics d;
        d.t = state.time;
        d.index = static_cast<int>(i);
        d.a = a;
        d.centroid = centroid(c, a);
        d.w2 = w2_to_point(c, a, d.centroid);
        d.w2_about_y = w2_to_point(c, a, pv.positions[i]);
        for (double r : metrics.radii) d.outer_mass.emplace_back(r, outer_mass(c, a, d.centroid, r));
        for (double p : metrics.exponents) d.lp[p] = lp_norm(c, p);
        d.dist_to_y = norm(g.min_image(d.centroid - pv.positions[i]));
        d.w1_contribution = first_moment_about(c, a, pv.positions[i]);
        d.leak = localization_leak(c, a, d.centroid);
        rec.components.push_back(std::move(d));
    }
    return rec;
}

std::vector<Vec2> centroid_velocity_fd(const DiagnosticsSeries& series, int index, double length) {
    std::vector<double> t;
    std::vector<Vec2> x;
    for (const auto& r : series.records) {
        for (const auto& c : r.components) {
            if (c.index == index) {
                t.push_back(r.t);
                x.push_back(c.centroid);
            }
        }
    }
    const std::size_t n = t.size();
    if (n < 3) throw ConfigError("centroid_velocity_fd: need at least 3 records");
    const double dt = (t.back() - t.front()) / static_cast<double>(n - 1);
    for (std::size_t k = 1; k < n; ++k) {
        if (std::abs((t[k] - t[k - 1]) - dt) > 1e-9 * std::max(1.0, dt)) {
            throw ConfigError("centroid_velocity_fd: records must be uniformly spaced");
        }
    }
    auto wrap = [length](double d) { return d - length * std::floor(d / length + 0.5); };
    auto diff = [&](std::size_t a, std::size_t b) {
        return Vec2{wrap(x[b].x - x[a].x), wrap(x[b].y - x[a].y)};
    };
    std::vector<Vec2> v(n);
    for (std::size_t k = 1; k + 1 < n; ++k) v[k] = (0.5 / dt) * diff(k - 1, k + 1);
    // second-order one-sided: (-3 x0 + 4 x1 - x2) / (2 dt), written with differences
    v[0] = (0.5 / dt) * (4.0 * diff(0, 1) - diff(0, 2));
    v[n - 1] = (0.5 / dt) * (4.0 * diff(n - 2, n - 1) - diff(n - 3, n - 1));
    return v;
}

RateFit rate_fit(std::span<const std::pair<double, double>> samples) {
    if (samples.size() < 3) throw ConfigError("rate_fit: need at least 3 samples");
    std::vector<double> xs, ys;
    for (const auto& [s, w] : samples) {
        if (!(s > 0.0) || !(w > 0.0)) throw ConfigError("rate_fit: samples must be positive");
        xs.push_back(std::log(s));
        ys.push_back(std::log(w));
    }
    const double n = static_cast<double>(xs.size());
    double mx = 0.0, my = 0.0;
    for (std::size_t k = 0; k < xs.size(); ++k) {
        mx += xs[k];
        my += ys[k];
    }
    mx /= n;
    my /= n;
    double sxx = 0.0, sxy = 0.0;
    for (std::size_t k = 0; k < xs.size(); ++k) {
        sxx += (xs[k] - mx) * (xs[k] - mx);
        sxy += (xs[k] - mx) * (ys[k] - my);
    }
    if (sxx == 0.0) throw ConfigError("rate_fit: scales must not all coincide");
    RateFit fit;
    fit.exponent = sxy / sxx;
    fit.prefactor = std::exp(my - fit.exponent * mx);
    for (const auto& [s, w] : samples) {
        const double model = fit.prefactor * std::pow(s, fit.exponent);
        fit.max_relative_residual = std::max(fit.max_relative_residual, std::abs(model - w) / w);
    }
    return fit;
}

}  // namespace vortexlab
