#pragma once

#include <functional>
#include <vector>

#include "vortexlab/field.hpp"

namespace vortexlab {

/// Helmholtz-Kirchhoff point vortices in the plane.
struct PVState {
    std::vector<Vec2> positions;
    std::vector<double> strengths;
    double time = 0.0;

    std::size_t size() const noexcept { return positions.size(); }
};

/// Biot-Savart kernel K(z) = z^perp / (2 pi |z|^2).
Vec2 biot_savart_kernel(const Vec2& z);

double min_pair_distance(const PVState& state);

/// dY_i/dt = sum_{j != i} a_j K(Y_i - Y_j). Throws CollisionError when two
/// vortices coincide or come closer than `collision_floor`.
std::vector<Vec2> pv_velocities(const PVState& state, double collision_floor = 0.0);

/// Classical RK4 step; a negative dt integrates backward in time.
PVState pv_step_rk4(const PVState& state, double dt, double collision_floor = 0.0);

/// H = -(1/4pi) sum_{i != j} a_i a_j log|Y_i - Y_j|.
double hamiltonian(const PVState& state);

struct PVInvariants {
    Vec2 impulse;          ///< P = sum a_i Y_i
    double angular = 0.0;  ///< I = sum a_i |Y_i|^2
};

PVInvariants pv_invariants(const PVState& state);

struct PVSample {
    PVState state;
    double energy = 0.0;
    PVInvariants invariants;
};

struct PVRunOptions {
    double dt = 1e-3;
    double collision_floor = 0.0;
};

/// Fixed-step RK4 from initial.time to t_end. Each interval between
/// consecutive sample times is covered by equal substeps no longer than dt, so
/// samples land exactly. The initial state is always sampled. On collision the
/// samples already delivered stand and CollisionError propagates.
void pv_run(const PVState& initial, double t_end, const std::vector<double>& schedule,
            const PVRunOptions& options, const std::function<void(const PVSample&)>& on_sample);

std::vector<PVSample> pv_run(const PVState& initial, double t_end,
                             const std::vector<double>& schedule, const PVRunOptions& options);

}  // namespace vortexlab
