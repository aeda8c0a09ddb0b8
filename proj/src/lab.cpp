#include "vortexlab/lab.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <map>
#include <set>
#include <thread>

#include "json.hpp"
#include "vortexlab/errors.hpp"
#include "vortexlab/io.hpp"
#include "vortexlab/ns_solver.hpp"

namespace vortexlab {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

json assumptions_json(const AssumptionReport& r) {
    json comps = json::array();
    for (const auto& c : r.components) {
        comps.push_back({{"w2_to_Y", c.w2_to_y},
                         {"eps", c.eps},
                         {"w2_ok", c.w2_ok},
                         {"lp", c.lp},
                         {"gamma_min", c.gamma_min},
                         {"outer_mass", c.outer_mass},
                         {"beta_max", std::isinf(c.beta_max) ? json("inf") : json(c.beta_max)},
                         {"outer_ok", c.outer_ok}});
    }
    return {{"eps", r.eps},
            {"gamma", r.gamma},
            {"beta", r.beta},
            {"R", r.radius},
            {"p", r.p},
            {"total_lp", r.total_lp},
            {"gamma_min", r.gamma_min},
            {"gamma_floor", r.gamma_floor},
            {"beta_max", std::isinf(r.beta_max) ? json("inf") : json(r.beta_max)},
            {"concentration_ok", r.concentration_ok},
            {"lp_ok", r.lp_ok},
            {"outer_ok", r.outer_ok},
            {"components", comps}};
}

void write_manifest(const fs::path& dir, const ExperimentConfig& config, const RunOutcome& o,
                    const std::string& command) {
    json manifest{
        {"tool", "vortexlab"},
        {"version", kVersion},
        {"command", command},
        {"config", json::parse(to_json_string(config))},
        {"status", o.status},
        {"exit_code", o.exit_code},
        {"message", o.message},
        {"steps", o.steps},
        {"wall_seconds", o.wall_seconds},
        {"min_distance", std::isinf(o.min_distance) ? json("inf") : json(o.min_distance)},
        {"tracking",
         {{"max_tracking_ratio", o.tracking.max_tracking_ratio},
          {"max_w1_ratio", o.tracking.max_w1_ratio},
          {"tracking_ok", o.tracking.tracking_ok},
          {"w1_ok", o.tracking.w1_ok}}},
    };
    write_text_file(dir / "manifest.json", manifest.dump(2) + "\n");
}

double seconds_since(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

PVRunOptions pv_options(const ExperimentConfig& config, double min_distance) {
    PVRunOptions opt;
    opt.dt = config.pv.dt;
    if (config.pv.collision_floor > 0.0) {
        opt.collision_floor = config.pv.collision_floor;
    } else if (std::isfinite(min_distance)) {
        opt.collision_floor = 1e-3 * min_distance;
    }
    return opt;
}

}  // namespace

PVState initial_point_vortices(const ComponentSet& set) {
    PVState pv;
    pv.time = set.time;
    for (std::size_t i = 0; i < set.size(); ++i) {
        pv.positions.push_back(centroid(set.components[i], set.intensities[i]));
        pv.strengths.push_back(set.intensities[i]);
    }
    return pv;
}

MetricsSpec run_metrics(const ExperimentConfig& config, double min_distance) {
    MetricsSpec m;
    m.radii = config.metrics.radii;
    if (std::isfinite(min_distance) && min_distance > 0.0) {
        const double r = min_distance / 6.0;
        if (std::find(m.radii.begin(), m.radii.end(), r) == m.radii.end()) m.radii.push_back(r);
    }
    return m;
}

TrackingCheck evaluate_tracking(const DiagnosticsSeries& series, double eps, double nu,
                                double tracking_ceiling, double w1_ceiling) {
    TrackingCheck check;
    for (const auto& rec : series.records) {
        const double scale = eps + std::sqrt(nu * rec.t);
        double w1 = 0.0;
        for (const auto& c : rec.components) {
            check.max_tracking_ratio = std::max(check.max_tracking_ratio, c.dist_to_y / scale);
            w1 += c.w1_contribution;
        }
        check.max_w1_ratio = std::max(check.max_w1_ratio, w1 / scale);
    }
    check.tracking_ok = check.max_tracking_ratio <= tracking_ceiling;
    check.w1_ok = check.max_w1_ratio <= w1_ceiling;
    return check;
}

RunOutcome cmd_run(const ExperimentConfig& config, const fs::path& out_dir) {
    const auto start = std::chrono::steady_clock::now();
    config.validate();
    fs::create_directories(out_dir);

    const Grid grid = make_grid(config.grid.length, config.grid.n);
    Configuration cfg = assemble_configuration(config.layout, grid);
    const PVState pv0 = initial_point_vortices(cfg.set);

    RunOutcome outcome;
    outcome.min_distance = min_pair_distance(pv0);
    const auto times = config.record_times();
    const MetricsSpec metrics = run_metrics(config, outcome.min_distance);
    const double eps = config.max_eps();

    json assumptions = json::array();
    const double radius =
        config.metrics.assumption_radius > 0.0 ? config.metrics.assumption_radius : metrics.radii.front();
    for (double p : config.metrics.p) {
        outcome.assumptions.push_back(
            verify_assumptions(cfg.set, pv0, eps, config.metrics.gamma, config.metrics.beta, radius, p));
        assumptions.push_back(assumptions_json(outcome.assumptions.back()));
    }
    write_text_file(out_dir / "assumptions.json", assumptions.dump(2) + "\n");

    auto finish = [&](int code, const std::string& status, const std::string& message) {
        outcome.exit_code = code;
        outcome.status = status;
        outcome.message = message;
        outcome.wall_seconds = seconds_since(start);
        write_manifest(out_dir, config, outcome, "run");
        return outcome;
    };

    {
        CsvWriter pv_csv(out_dir / "pv.csv", kPvHeader);
        try {
            pv_run(pv0, config.solver.t_end, times, pv_options(config, outcome.min_distance),
                   [&](const PVSample& s) {
                       pv_csv.append(pv_rows(s));
                       outcome.pv.push_back(s);
                   });
        } catch (const NumericalError& e) {
            return finish(kExitNumerical, "collision", e.what());
        }
    }
    std::map<double, const PVState*> pv_at;
    for (const auto& s : outcome.pv) pv_at[s.state.time] = &s.state;

    SolverParams params;
    params.nu = config.solver.nu;
    params.cfl = config.solver.cfl;
    params.t_end = config.solver.t_end;
    params.dealias = config.solver.dealias;
    params.sign_tolerance = config.solver.sign_tolerance;
    if (config.output.snapshots) params.snapshot_times = config.solver.snapshot_times;

    CsvWriter diag_csv(out_dir / "diagnostics.csv", kDiagnosticsHeader);
    RunCallbacks callbacks;
    callbacks.on_record = [&](const ComponentSet& state) {
        auto it = pv_at.find(state.time);
        if (it == pv_at.end()) throw ConfigError("no point-vortex sample at a record time");
        DiagnosticsRecord rec = measure(state, *it->second, metrics);
        diag_csv.append(diagnostics_rows(rec));
        outcome.series.records.push_back(std::move(rec));
    };
    int snapshot_index = 0;
    callbacks.on_snapshot = [&](const ComponentSet& state) {
        for (std::size_t i = 0; i < state.size(); ++i) {
            char name[64];
            std::snprintf(name, sizeof name, "snap_%04d_c%02zu.vrtx", snapshot_index, i);
            write_snapshot(out_dir / name, state.components[i], state.time, params.nu);
        }
        ++snapshot_index;
    };

    std::vector<double> diag_times(times.begin(), times.end());
    try {
        const RunStats stats = run(cfg.set, params, diag_times, callbacks);
        outcome.steps = stats.steps;
    } catch (const NumericalError& e) {
        outcome.tracking = evaluate_tracking(outcome.series, eps, params.nu, config.theory.tracking_ceiling,
                                             config.theory.w1_ceiling);
        const bool sign = dynamic_cast<const SignViolation*>(&e) != nullptr;
        const bool cfl = dynamic_cast<const CflError*>(&e) != nullptr;
        return finish(kExitNumerical, sign ? "sign_violation" : (cfl ? "cfl" : "numerical"), e.what());
    }
    outcome.tracking = evaluate_tracking(outcome.series, eps, params.nu, config.theory.tracking_ceiling,
                                         config.theory.w1_ceiling);
    return finish(kExitOk, "ok", "");
}

RunOutcome cmd_pv(const ExperimentConfig& config, const fs::path& out_dir) {
    const auto start = std::chrono::steady_clock::now();
    config.validate();
    fs::create_directories(out_dir);
    PVState pv0;
    for (const auto& b : config.layout) {
        pv0.positions.push_back(b.center);
        pv0.strengths.push_back(b.a);
    }
    RunOutcome outcome;
    outcome.min_distance = min_pair_distance(pv0);
    CsvWriter pv_csv(out_dir / "pv.csv", kPvHeader);
    try {
        pv_run(pv0, config.solver.t_end, config.record_times(), pv_options(config, outcome.min_distance),
               [&](const PVSample& s) {
                   pv_csv.append(pv_rows(s));
                   outcome.pv.push_back(s);
               });
    } catch (const NumericalError& e) {
        outcome.exit_code = kExitNumerical;
        outcome.status = "collision";
        outcome.message = e.what();
    }
    outcome.wall_seconds = seconds_since(start);
    write_manifest(out_dir, config, outcome, "pv");
    return outcome;
}

SweepOutcome cmd_sweep(const ExperimentConfig& config, const fs::path& out_dir, int jobs) {
    config.validate();
    if (config.sweep.eps.empty() && config.sweep.nu.empty()) {
        throw ConfigError("sweep requires non-empty eps or nu lists");
    }
    const std::vector<double> eps_list =
        config.sweep.eps.empty() ? std::vector<double>{config.max_eps()} : config.sweep.eps;
    const std::vector<double> nu_list =
        config.sweep.nu.empty() ? std::vector<double>{config.solver.nu} : config.sweep.nu;
    fs::create_directories(out_dir);

    SweepOutcome out;
    std::vector<ExperimentConfig> member_configs;
    for (double e : eps_list) {
        for (double v : nu_list) {
            ExperimentConfig c = config;
            for (auto& b : c.layout) b.eps = e;
            c.solver.nu = v;
            char name[32];
            std::snprintf(name, sizeof name, "member_%03zu", out.members.size());
            c.output.dir = (out_dir / name).string();
            out.members.push_back({e, v, name, "pending", 0});
            member_configs.push_back(std::move(c));
        }
    }

    std::atomic<std::size_t> next{0};
    auto worker = [&]() {
        for (std::size_t k = next++; k < member_configs.size(); k = next++) {
            auto& m = out.members[k];
            try {
                const RunOutcome r = cmd_run(member_configs[k], out_dir / m.dir);
                m.status = r.status;
                m.exit_code = r.exit_code;
            } catch (const ConfigError& e) {
                m.status = "config_error";
                m.exit_code = kExitConfig;
            } catch (const std::exception& e) {
                m.status = "error";
                m.exit_code = kExitNumerical;
            }
        }
    };
    const int threads = std::max(1, std::min<int>(jobs, static_cast<int>(member_configs.size())));
    std::vector<std::thread> pool;
    for (int t = 1; t < threads; ++t) pool.emplace_back(worker);
    worker();
    for (auto& t : pool) t.join();

    CsvWriter index(out_dir / "sweep_index.csv", "member,eps,nu,status,exit_code");
    for (const auto& m : out.members) {
        index.append(csv_row({m.dir, format_double(m.eps), format_double(m.nu), m.status,
                              std::to_string(m.exit_code)}));
        if (m.exit_code != kExitOk) ++out.failures;
    }
    summarize_sweep(out_dir, config.sweep.sample_times);
    return out;
}

void summarize_sweep(const fs::path& sweep_dir, const std::vector<double>& sample_times) {
    const CsvTable index = read_csv(sweep_dir / "sweep_index.csv");
    const int c_member = index.column("member");
    const int c_eps = index.column("eps");
    const int c_nu = index.column("nu");
    const int c_status = index.column("status");

    auto wanted = [&](double t) {
        if (sample_times.empty()) return true;
        return std::any_of(sample_times.begin(), sample_times.end(), [t](double s) {
            return std::abs(t - s) <= 1e-12 * std::max(1.0, std::abs(s));
        });
    };

    struct Row {
        double eps, nu, t;
        int i;
        double w2, w2_y, dist, w1;
        std::string status;
    };
    std::vector<Row> rows;
    std::string summary = "eps,nu,t,i,W2,W2_about_Y,distXY,w1_bound,status\n";
    for (const auto& m : index.rows) {
        const double eps = std::stod(m[c_eps]);
        const double nu = std::stod(m[c_nu]);
        const fs::path diag = sweep_dir / m[c_member] / "diagnostics.csv";
        if (!fs::exists(diag)) {
            summary += csv_row({m[c_eps], m[c_nu], "nan", "-1", "nan", "nan", "nan", "nan", m[c_status]});
            continue;
        }
        const CsvTable d = read_csv(diag);
        const int ct = d.column("t"), ci = d.column("i"), cw = d.column("W2"),
                  cwy = d.column("W2_about_Y"), cd = d.column("distXY"), cw1 = d.column("w1_contrib");
        // first radius row of each (t, i); rows of one t are contiguous
        std::vector<Row> member_rows;
        std::set<std::pair<double, int>> seen;
        for (const auto& r : d.rows) {
            const double t = std::stod(r[ct]);
            const int i = std::stoi(r[ci]);
            if (!seen.insert({t, i}).second || !wanted(t)) continue;
            member_rows.push_back({eps, nu, t, i, std::stod(r[cw]), std::stod(r[cwy]), std::stod(r[cd]),
                                   std::stod(r[cw1]), m[c_status]});
        }
        for (auto& r : member_rows) {
            double total = 0.0;
            for (const auto& o : member_rows) {
                if (o.t == r.t) total += o.w1;
            }
            summary += csv_row({format_double(r.eps), format_double(r.nu), format_double(r.t),
                                std::to_string(r.i), format_double(r.w2), format_double(r.w2_y),
                                format_double(r.dist), format_double(total), r.status});
            rows.push_back(r);
        }
    }
    write_text_file(sweep_dir / "summary.csv", summary);

    std::string rates = "kind,fixed,t,i,exponent,prefactor,max_rel_residual,samples\n";
    if (!rows.empty()) {
        std::set<double> eps_values, nu_values, t_values;
        std::set<int> indices;
        for (const auto& r : rows) {
            eps_values.insert(r.eps);
            nu_values.insert(r.nu);
            t_values.insert(r.t);
            indices.insert(r.i);
        }
        const double eps_min = *eps_values.begin();
        const double nu_min = *nu_values.begin();
        auto emit = [&](const char* kind, double fixed, double t, int i,
                        const std::vector<std::pair<double, double>>& samples) {
            std::set<double> distinct;
            for (const auto& s : samples) distinct.insert(s.first);
            if (distinct.size() < 3) return;
            for (const auto& s : samples) {
                if (!(s.first > 0.0) || !(s.second > 0.0)) return;
            }
            const RateFit fit = rate_fit(samples);
            rates += csv_row({kind, format_double(fixed), format_double(t), std::to_string(i),
                              format_double(fit.exponent), format_double(fit.prefactor),
                              format_double(fit.max_relative_residual), std::to_string(samples.size())});
        };
        for (double t : t_values) {
            for (int i : indices) {
                std::vector<std::pair<double, double>> vs_nu, vs_eps;
                for (const auto& r : rows) {
                    if (r.t != t || r.i != i) continue;
                    if (r.eps == eps_min) vs_nu.emplace_back(r.nu, r.w2_y);
                    if (r.nu == nu_min) vs_eps.emplace_back(r.eps, r.w2_y);
                }
                emit("W2_vs_nu", eps_min, t, i, vs_nu);
                emit("W2_vs_eps", nu_min, t, i, vs_eps);
            }
        }
    }
    write_text_file(sweep_dir / "rates.csv", rates);
}

LambOseenReport cmd_validate_lamb_oseen(const LambOseenOptions& o) {
    if (!(o.nu * o.t0 > 0.0)) throw ConfigError("lamb-oseen: nu * t0 must be positive");
    if (!(o.t_end >= o.t0)) throw ConfigError("lamb-oseen: t_end must be >= t0");
    if (o.records < 1) throw ConfigError("lamb-oseen: need at least one record");
    const Grid grid = make_grid(o.length, o.n);
    // a cell center, so the grid maximum sits on the vortex axis
    const Vec2 center = grid.cell_center(o.n / 2, o.n / 2);

    ComponentSet initial;
    initial.components.push_back(lamb_oseen_band_limited(o.t0, o.nu, o.a, center, grid));
    initial.intensities.push_back(o.a);
    initial.time = o.t0;
    const double a0 = intensity(initial.components[0]);

    SolverParams params;
    params.nu = o.nu;
    params.cfl = o.cfl;
    params.t_end = o.t_end;
    params.dealias = o.dealias;

    std::vector<double> times;
    if (o.t_end == o.t0 || o.records == 1) {
        times.push_back(o.t0);
    } else {
        for (int k = 0; k < o.records; ++k) {
            times.push_back(k + 1 == o.records ? o.t_end
                                               : o.t0 + (o.t_end - o.t0) * k / (o.records - 1));
        }
    }

    LambOseenReport rep;
    double w2sq0 = 0.0;
    RunCallbacks cb;
    cb.on_record = [&](const ComponentSet& s) {
        const ScalarField& w = s.components[0];
        auto rel_l2 = [&](const ScalarField& exact) {
            double num = 0.0, den = 0.0;
            for (std::size_t k = 0; k < grid.points(); ++k) {
                const double e = w.data()[k] - exact.data()[k];
                num += e * e;
                den += exact.data()[k] * exact.data()[k];
            }
            return std::sqrt(num / den);
        };
        rep.final_rel_l2_error = rel_l2(lamb_oseen_band_limited(s.time, o.nu, o.a, center, grid));
        rep.max_rel_l2_error = std::max(rep.max_rel_l2_error, rep.final_rel_l2_error);
        rep.max_rel_l2_error_sampled =
            std::max(rep.max_rel_l2_error_sampled, rel_l2(lamb_oseen_exact(s.time, o.nu, o.a, center, grid)));
        const double w2 = w2_to_point(w, o.a, centroid(w, o.a));
        if (s.time == o.t0) w2sq0 = w2 * w2;
        const double elapsed = s.time - o.t0;
        if (elapsed > 0.0) {
            const double produced = 4.0 * o.nu * elapsed;
            rep.max_moment_error =
                std::max(rep.max_moment_error, std::abs(w2 * w2 - w2sq0 - produced) / produced);
        }
        const double peak = o.a / (4.0 * M_PI * o.nu * s.time);
        rep.max_linf_error = std::max(rep.max_linf_error, std::abs(lp_norm(w, kInfinity) - peak) / peak);
        rep.max_intensity_drift = std::max(rep.max_intensity_drift, std::abs(intensity(w) - a0) / std::abs(a0));
        rep.times.push_back(s.time);
        rep.w2_squared.push_back(w2 * w2);
    };
    const RunStats stats = run(initial, params, times, cb);
    rep.steps = stats.steps;
    return rep;
}

}  // namespace vortexlab
