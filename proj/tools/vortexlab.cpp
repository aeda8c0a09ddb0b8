// vortexlab: command-line front end for runs, sweeps and validation.

#include <cstdio>
#include <cstdlib>
#include <exception>
#include <string>

#include "CLI11.hpp"
#include "vortexlab/config.hpp"
#include "vortexlab/errors.hpp"
#include "vortexlab/lab.hpp"
#include "vortexlab/theory_check.hpp"

using namespace vortexlab;

namespace {

int report_run(const RunOutcome& r, const std::string& dir) {
    std::printf("status=%s steps=%ld wall=%.2fs dir=%s\n", r.status.c_str(), r.steps, r.wall_seconds, dir.c_str());
    if (!r.message.empty()) std::fprintf(stderr, "vortexlab: %s\n", r.message.c_str());
    if (r.exit_code == kExitOk && !r.series.records.empty()) {
        std::printf("tracking ratio max=%.4g (%s)  w1 ratio max=%.4g (%s)\n", r.tracking.max_tracking_ratio,
                    r.tracking.tracking_ok ? "ok" : "above ceiling", r.tracking.max_w1_ratio,
                    r.tracking.w1_ok ? "ok" : "above ceiling");
    }
    return r.exit_code;
}

int jobs_from_env(int jobs) {
    if (const char* env = std::getenv("VORTEXLAB_JOBS")) {
        try {
            const int v = std::stoi(env);
            if (v < 1) throw ConfigError("VORTEXLAB_JOBS must be >= 1");
            return v;
        } catch (const std::logic_error&) {
            throw ConfigError(std::string("invalid VORTEXLAB_JOBS '") + env + "'");
        }
    }
    return jobs;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"vortexlab: concentrated-vortex experiments on the periodic box"};
    app.set_version_flag("--version", std::string(kVersion));
    app.require_subcommand(1);

    std::string config_path, out_dir;
    int jobs = 0;

    auto* run = app.add_subcommand("run", "Navier-Stokes run with paired point-vortex run");
    run->add_option("--config", config_path, "JSON config file")->required();
    run->add_option("--out", out_dir, "output directory")->required();

    auto* sweep = app.add_subcommand("sweep", "(eps, nu) sweep with rate fits");
    sweep->add_option("--config", config_path, "JSON config file")->required();
    sweep->add_option("--out", out_dir, "output directory")->required();
    sweep->add_option("--jobs", jobs, "concurrent members (VORTEXLAB_JOBS overrides)")->check(CLI::PositiveNumber);

    LambOseenOptions lo;
    auto* lamb = app.add_subcommand("lamb-oseen", "Lamb-Oseen regression against the exact solution");
    lamb->add_option("--nu", lo.nu, "viscosity")->required();
    lamb->add_option("--n", lo.n, "grid points per side")->required();
    lamb->add_option("--L", lo.length, "box side")->required();
    lamb->add_option("--t0", lo.t0, "initial Lamb-Oseen time")->required();
    lamb->add_option("--t-end", lo.t_end, "final Lamb-Oseen time")->required();
    lamb->add_option("--a", lo.a, "intensity")->capture_default_str();
    lamb->add_option("--records", lo.records, "record count")->capture_default_str();
    lamb->add_option("--cfl", lo.cfl, "CFL number")->capture_default_str();
    lamb->add_flag("--dealias", lo.dealias, "apply the 2/3 filter to the advection term");

    auto* pv = app.add_subcommand("pv", "point-vortex-only integration");
    pv->add_option("--config", config_path, "JSON config file")->required();
    pv->add_option("--out", out_dir, "output directory (default: output.dir)");

    auto* theory = app.add_subcommand("check-theory", "high-precision scan of the two auxiliary inequalities");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitConfig;
    }

    try {
        if (*run) {
            const ExperimentConfig config = load_config(config_path);
            return report_run(cmd_run(config, out_dir), out_dir);
        }
        if (*sweep) {
            const ExperimentConfig config = load_config(config_path);
            const int n_jobs = jobs_from_env(jobs > 0 ? jobs : config.sweep.jobs);
            const SweepOutcome s = cmd_sweep(config, out_dir, n_jobs);
            for (const auto& m : s.members) {
                std::printf("%s eps=%.6g nu=%.6g status=%s\n", m.dir.c_str(), m.eps, m.nu, m.status.c_str());
            }
            std::printf("members=%zu failures=%d summary=%s/summary.csv\n", s.members.size(), s.failures,
                        out_dir.c_str());
            return s.failures == 0 ? kExitOk : kExitNumerical;
        }
        if (*lamb) {
            const LambOseenReport r = cmd_validate_lamb_oseen(lo);
            std::printf("steps=%ld\n", r.steps);
            std::printf("final_rel_l2_error=%.6e\n", r.final_rel_l2_error);
            std::printf("max_rel_l2_error=%.6e\n", r.max_rel_l2_error);
            std::printf("max_rel_l2_error_sampled=%.6e\n", r.max_rel_l2_error_sampled);
            std::printf("max_moment_error=%.6e\n", r.max_moment_error);
            std::printf("max_linf_error=%.6e\n", r.max_linf_error);
            std::printf("max_intensity_drift=%.6e\n", r.max_intensity_drift);
            return kExitOk;
        }
        if (*pv) {
            const ExperimentConfig config = load_config(config_path);
            const std::string dir = out_dir.empty() ? config.output.dir : out_dir;
            return report_run(cmd_pv(config, dir), dir);
        }
        if (*theory) {
            const TheoryCheckReport r = check_theory();
            for (const auto* s : {&r.sum_bound, &r.falling_bound}) {
                std::printf("%-40s evals=%-6ld violations=%-3ld min_slack=%.6e at M=%d param=%.6g\n",
                            s->name.c_str(), s->evaluations, s->violations, s->min_slack, s->worst_M,
                            s->worst_param);
            }
            std::printf("m=0 equalities=%ld\n%s\n", r.trivial_equalities, r.passed() ? "PASS" : "FAIL");
            return r.passed() ? kExitOk : kExitTheory;
        }
    } catch (const ConfigError& e) {
        std::fprintf(stderr, "vortexlab: config error: %s\n", e.what());
        return kExitConfig;
    } catch (const NumericalError& e) {
        std::fprintf(stderr, "vortexlab: numerical abort: %s\n", e.what());
        return kExitNumerical;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "vortexlab: %s\n", e.what());
        return kExitNumerical;
    }
    return kExitOk;
}
