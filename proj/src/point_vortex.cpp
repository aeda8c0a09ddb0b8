#include "vortexlab/point_vortex.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "vortexlab/errors.hpp"

namespace vortexlab {

Vec2 biot_savart_kernel(const Vec2& z) {
    const double r2 = dot(z, z);
    return (1.0 / (2.0 * M_PI * r2)) * perp(z);
}

double min_pair_distance(const PVState& state) {
    double d = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < state.size(); ++i) {
        for (std::size_t j = i + 1; j < state.size(); ++j) {
            d = std::min(d, norm(state.positions[i] - state.positions[j]));
        }
    }
    return d;
}

std::vector<Vec2> pv_velocities(const PVState& state, double collision_floor) {
    if (state.positions.size() != state.strengths.size()) {
        throw ConfigError("point vortex position/strength count mismatch");
    }
    const std::size_t n = state.size();
    std::vector<Vec2> vel(n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            if (j == i) continue;
            const Vec2 z = state.positions[i] - state.positions[j];
            const double r = norm(z);
            if (r == 0.0 || r < collision_floor) {
                std::ostringstream msg;
                msg.precision(6);
                msg << "point vortex collision: |Y_" << i << " - Y_" << j << "| = " << r
                    << " below floor " << collision_floor << " at t = " << state.time;
                throw CollisionError(msg.str());
            }
            vel[i] += state.strengths[j] * biot_savart_kernel(z);
        }
    }
    return vel;
}

PVState pv_step_rk4(const PVState& state, double dt, double collision_floor) {
    const std::size_t n = state.size();
    auto shifted = [&](const std::vector<Vec2>& k, double f) {
        PVState s = state;
        for (std::size_t i = 0; i < n; ++i) s.positions[i] += f * k[i];
        return s;
    };
    const auto k1 = pv_velocities(state, collision_floor);
    const auto k2 = pv_velocities(shifted(k1, 0.5 * dt), collision_floor);
    const auto k3 = pv_velocities(shifted(k2, 0.5 * dt), collision_floor);
    const auto k4 = pv_velocities(shifted(k3, dt), collision_floor);
    PVState out = state;
    for (std::size_t i = 0; i < n; ++i) {
        out.positions[i] += (dt / 6.0) * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
    }
    out.time = state.time + dt;
    return out;
}

double hamiltonian(const PVState& state) {
    double h = 0.0;
    for (std::size_t i = 0; i < state.size(); ++i) {
        for (std::size_t j = i + 1; j < state.size(); ++j) {
            const double r = norm(state.positions[i] - state.positions[j]);
            if (r == 0.0) throw CollisionError("hamiltonian: coincident point vortices");
            h += state.strengths[i] * state.strengths[j] * std::log(r);
        }
    }
    // each unordered pair appears twice in the i != j sum
    return -h / (2.0 * M_PI);
}

PVInvariants pv_invariants(const PVState& state) {
    PVInvariants inv;
    for (std::size_t i = 0; i < state.size(); ++i) {
        inv.impulse += state.strengths[i] * state.positions[i];
        inv.angular += state.strengths[i] * dot(state.positions[i], state.positions[i]);
    }
    return inv;
}

namespace {

PVSample sample_of(const PVState& s) {
    return {s, hamiltonian(s), pv_invariants(s)};
}

}  // namespace

void pv_run(const PVState& initial, double t_end, const std::vector<double>& schedule,
            const PVRunOptions& options, const std::function<void(const PVSample&)>& on_sample) {
    if (!(options.dt > 0.0)) throw ConfigError("pv_run: dt must be positive");
    if (!(t_end >= initial.time)) throw ConfigError("pv_run: t_end before initial time");
    if (!std::is_sorted(schedule.begin(), schedule.end())) {
        throw ConfigError("pv_run: schedule must be sorted");
    }
    for (double t : schedule) {
        if (t < initial.time || t > t_end) throw ConfigError("pv_run: schedule outside [t0, t_end]");
    }
    std::vector<double> stops;
    for (double t : schedule) {
        if (t > initial.time && (stops.empty() || t > stops.back())) stops.push_back(t);
    }
    if (stops.empty() || stops.back() < t_end) stops.push_back(t_end);
    const bool sample_end = !schedule.empty() && schedule.back() == t_end;

    PVState state = initial;
    if (on_sample) on_sample(sample_of(state));
    for (std::size_t k = 0; k < stops.size(); ++k) {
        const double target = stops[k];
        const double span = target - state.time;
        if (span <= 0.0) continue;
        const long substeps = std::max(1L, static_cast<long>(std::ceil(span / options.dt - 1e-9)));
        const double h = span / static_cast<double>(substeps);
        const double start = state.time;
        for (long s = 0; s < substeps; ++s) {
            state = pv_step_rk4(state, h, options.collision_floor);
            state.time = start + (s + 1) * h;
        }
        state.time = target;
        const bool is_last = k + 1 == stops.size();
        if (on_sample && (!is_last || sample_end)) on_sample(sample_of(state));
    }
}

std::vector<PVSample> pv_run(const PVState& initial, double t_end,
                             const std::vector<double>& schedule, const PVRunOptions& options) {
    std::vector<PVSample> out;
    pv_run(initial, t_end, schedule, options, [&out](const PVSample& s) { out.push_back(s); });
    return out;
}

}  // namespace vortexlab
