#include "vortexlab/config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "vortexlab/errors.hpp"

namespace vortexlab {

using nlohmann::json;

namespace {

template <class T>
void read_opt(const json& j, const char* key, T& out) {
    if (j.contains(key)) out = j.at(key).get<T>();
}

json blob_to_json(const BlobSpec& b) {
    json j{{"center", {b.center.x, b.center.y}},
           {"eps", b.eps},
           {"a", b.a},
           {"profile", profile_name(b.profile)}};
    if (b.profile == Profile::Disc) j["mollify_width"] = b.mollify_width;
    if (b.profile == Profile::StretchedGaussian) {
        j["aspect"] = b.aspect;
        j["angle"] = b.angle;
    }
    return j;
}

BlobSpec blob_from_json(const json& j) {
    BlobSpec b;
    const auto& c = j.at("center");
    if (!c.is_array() || c.size() != 2) throw ConfigError("blob center must be [x, y]");
    b.center = {c[0].get<double>(), c[1].get<double>()};
    b.eps = j.at("eps").get<double>();
    read_opt(j, "a", b.a);
    if (j.contains("profile")) b.profile = parse_profile(j.at("profile").get<std::string>());
    read_opt(j, "mollify_width", b.mollify_width);
    read_opt(j, "aspect", b.aspect);
    read_opt(j, "angle", b.angle);
    return b;
}

}  // namespace

std::vector<double> ExperimentConfig::record_times() const {
    std::vector<double> times = solver.diag_times;
    if (solver.diag_every > 0.0) {
        const long count = static_cast<long>(std::floor(solver.t_end / solver.diag_every + 1e-9));
        for (long k = 0; k <= count; ++k) times.push_back(std::min(k * solver.diag_every, solver.t_end));
        times.push_back(solver.t_end);
    }
    times.push_back(0.0);
    std::sort(times.begin(), times.end());
    times.erase(std::unique(times.begin(), times.end()), times.end());
    return times;
}

double ExperimentConfig::max_eps() const {
    double e = 0.0;
    for (const auto& b : layout) e = std::max(e, b.eps);
    return e;
}

void ExperimentConfig::validate() const {
    if (!(grid.length > 0.0)) throw ConfigError("grid.L must be positive");
    if (grid.n < 8 || grid.n % 2 != 0) throw ConfigError("grid.n must be even and >= 8");
    if (!(solver.nu >= 0.0)) throw ConfigError("solver.nu must be >= 0");
    if (!(solver.cfl > 0.0 && solver.cfl <= 1.0)) throw ConfigError("solver.cfl must lie in (0, 1]");
    if (!(solver.t_end >= 0.0)) throw ConfigError("solver.t_end must be >= 0");
    if (solver.diag_every < 0.0) throw ConfigError("solver.diag_every must be >= 0");
    for (double t : solver.diag_times) {
        if (t < 0.0 || t > solver.t_end) throw ConfigError("solver.diag_times must lie in [0, t_end]");
    }
    if (!std::is_sorted(solver.snapshot_times.begin(), solver.snapshot_times.end())) {
        throw ConfigError("solver.snapshot_times must be sorted");
    }
    for (double t : solver.snapshot_times) {
        if (t < 0.0 || t > solver.t_end) throw ConfigError("solver.snapshot_times must lie in [0, t_end]");
    }
    if (layout.empty()) throw ConfigError("layout must contain at least one blob");
    for (const auto& b : layout) {
        if (!(b.eps > 0.0)) throw ConfigError("layout eps must be positive");
        if (b.a == 0.0) throw ConfigError("layout intensity a must be nonzero");
    }
    if (!(pv.dt > 0.0)) throw ConfigError("pv.dt must be positive");
    if (pv.collision_floor < 0.0) throw ConfigError("pv.collision_floor must be >= 0");
    for (double r : metrics.radii) {
        if (!(r >= 0.0)) throw ConfigError("metrics.radii must be >= 0");
    }
    for (double p : metrics.p) {
        if (!(p >= 1.0)) throw ConfigError("metrics.p entries must be >= 1");
    }
    if (sweep.jobs < 1) throw ConfigError("sweep.jobs must be >= 1");
    for (double e : sweep.eps) {
        if (!(e > 0.0)) throw ConfigError("sweep.eps entries must be positive");
    }
    for (double v : sweep.nu) {
        if (!(v >= 0.0)) throw ConfigError("sweep.nu entries must be >= 0");
    }
}

std::string to_json_string(const ExperimentConfig& c) {
    json layout = json::array();
    for (const auto& b : c.layout) layout.push_back(blob_to_json(b));
    json j{
        {"grid", {{"L", c.grid.length}, {"n", c.grid.n}}},
        {"solver",
         {{"nu", c.solver.nu},
          {"cfl", c.solver.cfl},
          {"t_end", c.solver.t_end},
          {"diag_times", c.solver.diag_times},
          {"diag_every", c.solver.diag_every},
          {"snapshot_times", c.solver.snapshot_times},
          {"dealias", c.solver.dealias},
          {"sign_tolerance", c.solver.sign_tolerance}}},
        {"layout", layout},
        {"pv", {{"dt", c.pv.dt}, {"collision_floor", c.pv.collision_floor}}},
        {"metrics",
         {{"R", c.metrics.radii},
          {"p", c.metrics.p},
          {"gamma", c.metrics.gamma},
          {"beta", c.metrics.beta},
          {"assumption_radius", c.metrics.assumption_radius}}},
        {"theory",
         {{"tracking_ceiling", c.theory.tracking_ceiling}, {"w1_ceiling", c.theory.w1_ceiling}}},
        {"sweep",
         {{"eps", c.sweep.eps},
          {"nu", c.sweep.nu},
          {"jobs", c.sweep.jobs},
          {"sample_times", c.sweep.sample_times}}},
        {"output", {{"dir", c.output.dir}, {"snapshots", c.output.snapshots}}},
        {"seed", c.seed},
    };
    return j.dump(2) + "\n";
}

ExperimentConfig config_from_json_string(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("config is not valid JSON: ") + e.what());
    }
    ExperimentConfig c;
    try {
        if (j.contains("grid")) {
            const auto& g = j.at("grid");
            read_opt(g, "L", c.grid.length);
            read_opt(g, "n", c.grid.n);
        }
        if (j.contains("solver")) {
            const auto& s = j.at("solver");
            read_opt(s, "nu", c.solver.nu);
            read_opt(s, "cfl", c.solver.cfl);
            read_opt(s, "t_end", c.solver.t_end);
            read_opt(s, "diag_times", c.solver.diag_times);
            read_opt(s, "diag_every", c.solver.diag_every);
            read_opt(s, "snapshot_times", c.solver.snapshot_times);
            read_opt(s, "dealias", c.solver.dealias);
            read_opt(s, "sign_tolerance", c.solver.sign_tolerance);
        }
        if (j.contains("layout")) {
            for (const auto& b : j.at("layout")) c.layout.push_back(blob_from_json(b));
        }
        if (j.contains("pv")) {
            const auto& p = j.at("pv");
            read_opt(p, "dt", c.pv.dt);
            read_opt(p, "collision_floor", c.pv.collision_floor);
        }
        if (j.contains("metrics")) {
            const auto& m = j.at("metrics");
            read_opt(m, "R", c.metrics.radii);
            read_opt(m, "p", c.metrics.p);
            read_opt(m, "gamma", c.metrics.gamma);
            read_opt(m, "beta", c.metrics.beta);
            read_opt(m, "assumption_radius", c.metrics.assumption_radius);
        }
        if (j.contains("theory")) {
            const auto& t = j.at("theory");
            read_opt(t, "tracking_ceiling", c.theory.tracking_ceiling);
            read_opt(t, "w1_ceiling", c.theory.w1_ceiling);
        }
        if (j.contains("sweep")) {
            const auto& s = j.at("sweep");
            read_opt(s, "eps", c.sweep.eps);
            read_opt(s, "nu", c.sweep.nu);
            read_opt(s, "jobs", c.sweep.jobs);
            read_opt(s, "sample_times", c.sweep.sample_times);
        }
        if (j.contains("output")) {
            const auto& o = j.at("output");
            read_opt(o, "dir", c.output.dir);
            read_opt(o, "snapshots", c.output.snapshots);
        }
        read_opt(j, "seed", c.seed);
    } catch (const json::exception& e) {
        throw ConfigError(std::string("malformed config: ") + e.what());
    }
    c.validate();
    return c;
}

ExperimentConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return config_from_json_string(buf.str());
}

}  // namespace vortexlab
