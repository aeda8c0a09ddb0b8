#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "vortexlab/initial_data.hpp"

namespace vortexlab {

/// Full description of a run or sweep. File form is JSON; see docs/config.md.
struct ExperimentConfig {
    struct GridSection {
        double length = 10.0;
        int n = 256;
        friend bool operator==(const GridSection&, const GridSection&) = default;
    } grid;

    struct SolverSection {
        double nu = 1e-3;
        double cfl = 0.4;
        double t_end = 1.0;
        std::vector<double> diag_times;  ///< explicit record times
        double diag_every = 0.0;         ///< > 0 adds k * diag_every for all k
        std::vector<double> snapshot_times;
        bool dealias = true;
        double sign_tolerance = 1e-2;
        friend bool operator==(const SolverSection&, const SolverSection&) = default;
    } solver;

    std::vector<BlobSpec> layout;

    struct PvSection {
        double dt = 1e-3;
        double collision_floor = 0.0;  ///< 0 selects 1e-3 * d
        friend bool operator==(const PvSection&, const PvSection&) = default;
    } pv;

    struct MetricsSection {
        std::vector<double> radii{0.1};  ///< d/6 is always appended when N >= 2
        std::vector<double> p{4.0};      ///< exponents checked against eps^-gamma
        double gamma = 2.0;
        double beta = 2.0;
        double assumption_radius = 0.0;  ///< R for m_i(0, R); 0 selects radii[0]
        friend bool operator==(const MetricsSection&, const MetricsSection&) = default;
    } metrics;

    struct TheorySection {
        double tracking_ceiling = 5.0;  ///< bound on |X_i - Y_i| / (eps + sqrt(nu t))
        double w1_ceiling = 10.0;       ///< bound on W1 bound / (eps + sqrt(nu t))
        friend bool operator==(const TheorySection&, const TheorySection&) = default;
    } theory;

    struct SweepSection {
        std::vector<double> eps;
        std::vector<double> nu;
        int jobs = 1;
        std::vector<double> sample_times;  ///< empty: every record time
        friend bool operator==(const SweepSection&, const SweepSection&) = default;
    } sweep;

    struct OutputSection {
        std::string dir = "out";
        bool snapshots = false;
        friend bool operator==(const OutputSection&, const OutputSection&) = default;
    } output;

    std::uint64_t seed = 0;

    friend bool operator==(const ExperimentConfig&, const ExperimentConfig&) = default;

    /// Record times in [0, t_end], sorted and deduplicated.
    std::vector<double> record_times() const;
    /// Largest eps over the layout.
    double max_eps() const;
    /// Throws ConfigError on any value outside the module preconditions.
    void validate() const;
};

std::string to_json_string(const ExperimentConfig& config);
ExperimentConfig config_from_json_string(const std::string& text);
ExperimentConfig load_config(const std::string& path);

}  // namespace vortexlab
