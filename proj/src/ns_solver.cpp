#include "vortexlab/ns_solver.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "vortexlab/errors.hpp"

namespace vortexlab {

namespace {

constexpr double kSpeedFloor = 1e-12;

void require_finite(const ComponentSet& s, const char* what) {
    for (const auto& c : s.components) {
        if (!c.all_finite()) throw NonFiniteError(std::string(what) + ": non-finite component values");
    }
}

}  // namespace

ScalarField ComponentSet::total() const {
    ScalarField sum(grid());
    for (const auto& c : components) sum += c;
    return sum;
}

void ComponentSet::validate() const {
    if (components.empty()) throw ConfigError("component set must hold at least one component");
    if (components.size() != intensities.size()) {
        throw ConfigError("component/intensity count mismatch");
    }
    for (std::size_t i = 0; i < components.size(); ++i) {
        if (intensities[i] == 0.0 || !std::isfinite(intensities[i])) {
            throw ConfigError("component " + std::to_string(i) + " has zero or non-finite intensity");
        }
        if (!(components[i].grid() == components.front().grid())) {
            throw ConfigError("component grids differ");
        }
    }
}

void SolverParams::validate() const {
    if (!(nu >= 0.0) || !std::isfinite(nu)) throw ConfigError("viscosity must be >= 0");
    if (!(cfl > 0.0 && cfl <= 1.0)) throw ConfigError("cfl must lie in (0, 1]");
    if (!(t_end >= 0.0)) throw ConfigError("t_end must be >= 0");
    if (!(sign_tolerance >= 0.0)) throw ConfigError("sign_tolerance must be >= 0");
}

double sign_violation(const ScalarField& component, double intensity) {
    const double sgn = intensity > 0.0 ? 1.0 : -1.0;
    double worst = 0.0;
    double sup = 0.0;
    for (double v : component.values()) {
        worst = std::min(worst, sgn * v);
        sup = std::max(sup, std::abs(v));
    }
    return sup > 0.0 ? -worst / sup : 0.0;
}

// ---------------------------------------------------------------------------

SpectralIntegrator::SpectralIntegrator(const ComponentSet& initial, const SolverParams& params)
    : ops_(initial.grid()), params_(params), intensities_(initial.intensities),
      time_(initial.time) {
    initial.validate();
    params.validate();
    require_finite(initial, "solver");
    const std::size_t modes = ops_.modes();
    const std::size_t points = ops_.grid().points();
    spectra_.assign(initial.size(), std::vector<Complex>(modes));
    for (std::size_t i = 0; i < initial.size(); ++i) {
        ops_.forward(initial.components[i].values(), spectra_[i]);
        // the state lives on the retained modes; filtered modes would never be advected
        if (params.dealias) {
            for (std::size_t m = 0; m < ops_.modes(); ++m) {
                if (!ops_.keep_23(m)) spectra_[i][m] = 0.0;
            }
        }
    }
    sum_.resize(modes);
    u1_hat_.resize(modes);
    u2_hat_.resize(modes);
    g_hat_.resize(modes);
    u1_.resize(points);
    u2_.resize(points);
    g1_.resize(points);
    g2_.resize(points);
    prod_.resize(points);
    for (Spectra* s : {&k1_, &k2_, &k3_, &k4_, &tmp_}) {
        s->assign(initial.size(), std::vector<Complex>(modes));
    }
    e_half_.resize(modes);
    e_full_.resize(modes);
}

void SpectralIntegrator::nonlinear(const Spectra& in, Spectra& out) {
    const std::size_t modes = ops_.modes();
    const bool dealias = params_.dealias;
    const Complex i(0.0, 1.0);

    std::fill(sum_.begin(), sum_.end(), Complex{});
    for (const auto& w : in) {
        for (std::size_t m = 0; m < modes; ++m) sum_[m] += w[m];
    }
    u1_hat_[0] = u2_hat_[0] = 0.0;
    for (std::size_t m = 1; m < modes; ++m) {
        if (dealias && !ops_.keep_23(m)) {
            u1_hat_[m] = u2_hat_[m] = 0.0;
            continue;
        }
        const Complex psi = sum_[m] / ops_.k_squared(m);
        u1_hat_[m] = i * ops_.dx2(m) * psi;
        u2_hat_[m] = -i * ops_.dx1(m) * psi;
    }
    ops_.inverse(u1_hat_, u1_);
    ops_.inverse(u2_hat_, u2_);

    for (std::size_t c = 0; c < in.size(); ++c) {
        const auto& w = in[c];
        for (std::size_t m = 0; m < modes; ++m) {
            g_hat_[m] = (dealias && !ops_.keep_23(m)) ? Complex{} : i * ops_.dx1(m) * w[m];
        }
        ops_.inverse(g_hat_, g1_);
        for (std::size_t m = 0; m < modes; ++m) {
            g_hat_[m] = (dealias && !ops_.keep_23(m)) ? Complex{} : i * ops_.dx2(m) * w[m];
        }
        ops_.inverse(g_hat_, g2_);
        for (std::size_t p = 0; p < prod_.size(); ++p) {
            prod_[p] = -(u1_[p] * g1_[p] + u2_[p] * g2_[p]);
        }
        auto& o = out[c];
        ops_.forward(prod_, o);
        if (dealias) {
            for (std::size_t m = 0; m < modes; ++m) {
                if (!ops_.keep_23(m)) o[m] = 0.0;
            }
        }
        // -u.grad(w) = -div(u w) has no mean.
        o[0] = 0.0;
    }
}

double SpectralIntegrator::max_speed() {
    const std::size_t modes = ops_.modes();
    const Complex i(0.0, 1.0);
    std::fill(sum_.begin(), sum_.end(), Complex{});
    for (const auto& w : spectra_) {
        for (std::size_t m = 0; m < modes; ++m) sum_[m] += w[m];
    }
    u1_hat_[0] = u2_hat_[0] = 0.0;
    for (std::size_t m = 1; m < modes; ++m) {
        const Complex psi = sum_[m] / ops_.k_squared(m);
        u1_hat_[m] = i * ops_.dx2(m) * psi;
        u2_hat_[m] = -i * ops_.dx1(m) * psi;
    }
    ops_.inverse(u1_hat_, u1_);
    ops_.inverse(u2_hat_, u2_);
    double m2 = 0.0;
    for (std::size_t p = 0; p < u1_.size(); ++p) {
        m2 = std::max(m2, u1_[p] * u1_[p] + u2_[p] * u2_[p]);
    }
    return std::sqrt(m2);
}

double SpectralIntegrator::admissible_dt() {
    return params_.cfl * ops_.grid().spacing() / std::max(max_speed(), kSpeedFloor);
}

void SpectralIntegrator::advance(double dt, double land_at) {
    const std::size_t modes = ops_.modes();
    const std::size_t count = spectra_.size();
    for (std::size_t m = 0; m < modes; ++m) {
        e_half_[m] = std::exp(-0.5 * params_.nu * ops_.k_squared(m) * dt);
        e_full_[m] = e_half_[m] * e_half_[m];
    }
    const double half = 0.5 * dt;

    nonlinear(spectra_, k1_);
    for (std::size_t c = 0; c < count; ++c) {
        for (std::size_t m = 0; m < modes; ++m) {
            tmp_[c][m] = e_half_[m] * (spectra_[c][m] + half * k1_[c][m]);
        }
    }
    nonlinear(tmp_, k2_);
    for (std::size_t c = 0; c < count; ++c) {
        for (std::size_t m = 0; m < modes; ++m) {
            tmp_[c][m] = e_half_[m] * spectra_[c][m] + half * k2_[c][m];
        }
    }
    nonlinear(tmp_, k3_);
    for (std::size_t c = 0; c < count; ++c) {
        for (std::size_t m = 0; m < modes; ++m) {
            tmp_[c][m] = e_full_[m] * spectra_[c][m] + dt * e_half_[m] * k3_[c][m];
        }
    }
    nonlinear(tmp_, k4_);
    const double sixth = dt / 6.0;
    for (std::size_t c = 0; c < count; ++c) {
        auto& w = spectra_[c];
        for (std::size_t m = 0; m < modes; ++m) {
            w[m] = e_full_[m] * w[m] +
                   sixth * (e_full_[m] * k1_[c][m] + 2.0 * e_half_[m] * (k2_[c][m] + k3_[c][m]) +
                            k4_[c][m]);
        }
    }
    time_ = land_at >= 0.0 ? land_at : time_ + dt;
}

ComponentSet SpectralIntegrator::state() const {
    ComponentSet out;
    out.intensities = intensities_;
    out.time = time_;
    out.components.reserve(spectra_.size());
    for (const auto& w : spectra_) {
        ScalarField f(ops_.grid());
        ops_.inverse(w, f.values());
        out.components.push_back(std::move(f));
    }
    return out;
}

std::vector<ScalarField> SpectralIntegrator::rhs(bool include_viscous) {
    nonlinear(spectra_, k1_);
    std::vector<ScalarField> out;
    out.reserve(spectra_.size());
    for (std::size_t c = 0; c < spectra_.size(); ++c) {
        if (include_viscous) {
            for (std::size_t m = 0; m < ops_.modes(); ++m) {
                k1_[c][m] -= params_.nu * ops_.k_squared(m) * spectra_[c][m];
            }
        }
        ScalarField f(ops_.grid());
        ops_.inverse(k1_[c], f.values());
        out.push_back(std::move(f));
    }
    return out;
}

// ---------------------------------------------------------------------------

std::vector<ScalarField> advect_diffuse_rhs(const ComponentSet& state, double nu, bool dealias) {
    SolverParams params;
    params.nu = nu;
    params.dealias = dealias;
    SpectralIntegrator integrator(state, params);
    return integrator.rhs(true);
}

double cfl_dt(const ComponentSet& state, const SolverParams& params) {
    state.validate();
    require_finite(state, "cfl_dt");
    const VectorField u = biot_savart(state.total());
    return params.cfl * state.grid().spacing() / std::max(u.max_speed(), kSpeedFloor);
}

ComponentSet step(const ComponentSet& state, const SolverParams& params, double dt) {
    if (!(dt > 0.0)) throw ConfigError("step: dt must be positive");
    const double admissible = cfl_dt(state, params);
    if (dt > admissible * (1.0 + 1e-12)) {
        std::ostringstream msg;
        msg.precision(17);
        msg << "CFL violation: dt = " << dt << " exceeds admissible dt = " << admissible;
        throw CflError(msg.str(), admissible);
    }
    SpectralIntegrator integrator(state, params);
    integrator.advance(dt);
    return integrator.state();
}

RunStats run(const ComponentSet& initial, const SolverParams& params,
             const std::vector<double>& diag_times, const RunCallbacks& callbacks) {
    params.validate();
    auto check_schedule = [&](const std::vector<double>& times, const char* name) {
        if (!std::is_sorted(times.begin(), times.end())) {
            throw ConfigError(std::string(name) + " schedule must be sorted");
        }
        for (double t : times) {
            if (t < initial.time || t > params.t_end) {
                throw ConfigError(std::string(name) + " time outside [t0, t_end]");
            }
        }
    };
    check_schedule(diag_times, "diagnostic");
    check_schedule(params.snapshot_times, "snapshot");

    struct Event {
        double t;
        bool record;
        bool snapshot;
    };
    std::vector<Event> events;
    auto add = [&events](double t, bool rec, bool snap) {
        for (auto& e : events) {
            if (e.t == t) {
                e.record = e.record || rec;
                e.snapshot = e.snapshot || snap;
                return;
            }
        }
        events.push_back({t, rec, snap});
    };
    add(initial.time, true, false);
    for (double t : diag_times) add(t, true, false);
    for (double t : params.snapshot_times) add(t, false, true);
    std::stable_sort(events.begin(), events.end(),
                     [](const Event& a, const Event& b) { return a.t < b.t; });

    SpectralIntegrator integrator(initial, params);
    RunStats stats;

    auto emit = [&](const Event& e) {
        ComponentSet s = integrator.state();
        if (e.snapshot && callbacks.on_snapshot) callbacks.on_snapshot(s);
        if (e.record && callbacks.on_record) callbacks.on_record(s);
        for (std::size_t c = 0; c < s.size(); ++c) {
            if (!s.components[c].all_finite()) {
                throw NonFiniteError("non-finite vorticity in component " + std::to_string(c));
            }
            const double v = sign_violation(s.components[c], s.intensities[c]);
            if (v > params.sign_tolerance) {
                std::ostringstream msg;
                msg.precision(6);
                msg << "sign violation " << v << " in component " << c << " at t = " << s.time
                    << " exceeds tolerance " << params.sign_tolerance;
                throw SignViolation(msg.str());
            }
        }
        stats.final_state = std::move(s);
    };

    for (const Event& e : events) {
        while (integrator.time() < e.t) {
            const double remaining = e.t - integrator.time();
            const double limit = integrator.admissible_dt();
            const double substeps = std::max(1.0, std::ceil(remaining / limit * (1.0 - 1e-12)));
            const double dt = remaining / substeps;
            integrator.advance(dt, substeps == 1.0 ? e.t : -1.0);
            ++stats.steps;
        }
        emit(e);
    }
    if (events.empty() || events.back().t < params.t_end) {
        while (integrator.time() < params.t_end) {
            const double remaining = params.t_end - integrator.time();
            const double limit = integrator.admissible_dt();
            const double substeps = std::max(1.0, std::ceil(remaining / limit * (1.0 - 1e-12)));
            integrator.advance(remaining / substeps, substeps == 1.0 ? params.t_end : -1.0);
            ++stats.steps;
        }
        stats.final_state = integrator.state();
    }
    return stats;
}

}  // namespace vortexlab
