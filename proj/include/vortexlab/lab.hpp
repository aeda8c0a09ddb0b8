#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "vortexlab/config.hpp"
#include "vortexlab/diagnostics.hpp"
#include "vortexlab/initial_data.hpp"
#include "vortexlab/point_vortex.hpp"

namespace vortexlab {

inline constexpr const char* kVersion = "0.3.0";

enum ExitCode : int {
    kExitOk = 0,
    kExitConfig = 2,
    kExitNumerical = 3,
    kExitTheory = 4,
};

/// Tracking ratios against eps + sqrt(nu t), maximized over the horizon.
struct TrackingCheck {
    double max_tracking_ratio = 0.0;  ///< max_i |X_i - Y_i| / (eps + sqrt(nu t))
    double max_w1_ratio = 0.0;        ///< W1 bound / (eps + sqrt(nu t))
    bool tracking_ok = false;
    bool w1_ok = false;
};

struct RunOutcome {
    int exit_code = kExitOk;
    std::string status = "ok";
    std::string message;
    long steps = 0;
    double wall_seconds = 0.0;
    DiagnosticsSeries series;
    std::vector<PVSample> pv;
    std::vector<AssumptionReport> assumptions;
    TrackingCheck tracking;
    double min_distance = 0.0;
};

/// Initial point vortices: Y_i(0) = initial centroid, strength a_i.
PVState initial_point_vortices(const ComponentSet& set);

/// Metrics used for a run: configured radii plus d/6 when N >= 2.
MetricsSpec run_metrics(const ExperimentConfig& config, double min_distance);

TrackingCheck evaluate_tracking(const DiagnosticsSeries& series, double eps, double nu,
                                double tracking_ceiling, double w1_ceiling);

/// NS run plus paired point-vortex run. Writes diagnostics.csv, pv.csv,
/// assumptions.json, manifest.json (and VRTX snapshots when enabled) into
/// out_dir. Numerical aborts are reported through the outcome, with partial
/// files left in place; configuration errors throw ConfigError.
RunOutcome cmd_run(const ExperimentConfig& config, const std::filesystem::path& out_dir);

/// Point-vortex-only integration into out_dir/pv.csv.
RunOutcome cmd_pv(const ExperimentConfig& config, const std::filesystem::path& out_dir);

struct SweepMember {
    double eps = 0.0;
    double nu = 0.0;
    std::string dir;
    std::string status;
    int exit_code = 0;
};

struct SweepOutcome {
    std::vector<SweepMember> members;
    int failures = 0;
};

/// Runs every (eps, nu) pair with at most `jobs` concurrent members, then
/// summarizes. Member failures are recorded and the sweep continues.
SweepOutcome cmd_sweep(const ExperimentConfig& config, const std::filesystem::path& out_dir, int jobs);

/// Rebuilds summary.csv and rates.csv from sweep_index.csv and the member
/// diagnostics.csv files under sweep_dir. Pure function of those files.
void summarize_sweep(const std::filesystem::path& sweep_dir, const std::vector<double>& sample_times);

struct LambOseenOptions {
    double nu = 1e-3;
    int n = 256;
    double length = 10.0;
    double t0 = 1.0;
    double t_end = 2.0;
    double a = 1.0;
    int records = 11;
    double cfl = 0.4;
    bool dealias = false;  ///< axisymmetric data carries no aliasing-driven transfer
};

/// The run starts from the band-limited exact solution at t0 and is compared
/// against it at every record; the pointwise-sampled comparison is reported too.
struct LambOseenReport {
    double max_rel_l2_error = 0.0;          ///< vs band-limited exact solution
    double final_rel_l2_error = 0.0;        ///< same, at t_end only
    double max_rel_l2_error_sampled = 0.0;  ///< vs point samples (includes aliasing)
    double max_moment_error = 0.0;  ///< |dW2^2 - 4 nu dt| / (4 nu dt), max over records
    double max_linf_error = 0.0;    ///< |max|w| - a/(4 pi nu t)| relative
    double max_intensity_drift = 0.0;
    long steps = 0;
    std::vector<double> times;
    std::vector<double> w2_squared;
};

LambOseenReport cmd_validate_lamb_oseen(const LambOseenOptions& options);

}  // namespace vortexlab
