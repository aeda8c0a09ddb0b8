#pragma once

#include <functional>
#include <vector>

#include "vortexlab/field.hpp"
#include "vortexlab/spectral.hpp"

namespace vortexlab {

/// N definite-sign vorticity components sharing one velocity field.
struct ComponentSet {
    std::vector<ScalarField> components;
    std::vector<double> intensities;
    double time = 0.0;

    std::size_t size() const noexcept { return components.size(); }
    const Grid& grid() const { return components.front().grid(); }
    ScalarField total() const;

    /// Throws ConfigError unless N >= 1, every a_i != 0 and all grids agree.
    void validate() const;
};

struct SolverParams {
    double nu = 0.0;
    double cfl = 0.4;
    double t_end = 0.0;
    std::vector<double> snapshot_times;
    bool dealias = true;
    /// Abort threshold for min(sign(a_i) * omega_i) / ||omega_i||_inf.
    double sign_tolerance = 1e-2;

    void validate() const;
};

/// Largest sign-violating magnitude relative to the sup norm, 0 for a clean field.
double sign_violation(const ScalarField& component, double intensity);

/// Semi-discrete right-hand side -u . grad(omega_i) + nu Lap(omega_i) per component,
/// with u from the summed field. The advective product is dealiased when requested.
std::vector<ScalarField> advect_diffuse_rhs(const ComponentSet& state, double nu,
                                            bool dealias = true);

double cfl_dt(const ComponentSet& state, const SolverParams& params);

/// One integrating-factor RK4 step. Throws CflError if dt exceeds cfl_dt.
ComponentSet step(const ComponentSet& state, const SolverParams& params, double dt);

/// Spectral state of all components and the IF-RK4 machinery behind step/run.
class SpectralIntegrator {
public:
    SpectralIntegrator(const ComponentSet& initial, const SolverParams& params);

    double time() const noexcept { return time_; }
    std::size_t size() const noexcept { return spectra_.size(); }
    const Grid& grid() const noexcept { return ops_.grid(); }

    /// Maximum speed of the full (undealiased) velocity of the current state.
    double max_speed();
    double admissible_dt();
    /// Advances by dt; `land_at` replaces the accumulated time when given.
    void advance(double dt, double land_at = -1.0);

    ComponentSet state() const;
    std::vector<ScalarField> rhs(bool include_viscous);

private:
    using Spectra = std::vector<std::vector<Complex>>;
    void nonlinear(const Spectra& in, Spectra& out);

    SpectralOperators ops_;
    SolverParams params_;
    std::vector<double> intensities_;
    Spectra spectra_;
    double time_ = 0.0;

    // scratch
    std::vector<Complex> sum_, u1_hat_, u2_hat_, g_hat_;
    std::vector<double> u1_, u2_, g1_, g2_, prod_;
    Spectra k1_, k2_, k3_, k4_, tmp_;
    std::vector<double> e_half_, e_full_;
};

struct RunCallbacks {
    std::function<void(const ComponentSet&)> on_record;
    std::function<void(const ComponentSet&)> on_snapshot;
};

struct RunStats {
    long steps = 0;
    ComponentSet final_state;
};

/// Adaptive CFL stepping that lands exactly on every scheduled time. A record
/// is emitted at t = 0 and at each time in `diag_times`; snapshots at
/// params.snapshot_times. Throws SignViolation (after emitting the offending
/// record) when a component's sign violation exceeds params.sign_tolerance.
RunStats run(const ComponentSet& initial, const SolverParams& params,
             const std::vector<double>& diag_times, const RunCallbacks& callbacks);

}  // namespace vortexlab
