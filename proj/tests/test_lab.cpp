#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "vortexlab/errors.hpp"
#include "vortexlab/io.hpp"
#include "vortexlab/lab.hpp"

using namespace vortexlab;
namespace fs = std::filesystem;

namespace {

fs::path scratch_dir(const std::string& name) {
    const fs::path p = fs::temp_directory_path() / ("vortexlab_lab_" + name);
    fs::remove_all(p);
    return p;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

ExperimentConfig single_vortex() {
    ExperimentConfig c;
    c.grid = {10.0, 64};
    c.solver.nu = 1e-2;
    c.solver.t_end = 0.2;
    c.solver.diag_every = 0.1;
    c.layout = {BlobSpec{{5.0, 5.0}, 1.0, 1.0}};
    return c;
}

ExperimentConfig pair_config() {
    ExperimentConfig c;
    c.grid = {10.0, 128};
    c.solver.nu = 1e-3;
    c.solver.t_end = 0.2;
    c.solver.diag_every = 0.05;
    c.layout = {BlobSpec{{4.0, 5.0}, 0.6, 1.0}, BlobSpec{{6.0, 5.0}, 0.6, 1.0}};
    c.metrics.radii = {0.5};
    return c;
}

}  // namespace

TEST_CASE("initial point vortices sit at the centroids") {
    const Grid g = make_grid(10.0, 64);
    const Configuration cfg =
        assemble_configuration({BlobSpec{{3.0, 4.0}, 0.8, 1.0}, BlobSpec{{7.0, 6.0}, 0.8, -2.0}}, g);
    const PVState pv = initial_point_vortices(cfg.set);
    CHECK(pv.strengths == std::vector<double>{1.0, -2.0});
    for (std::size_t i = 0; i < 2; ++i) {
        CHECK(pv.positions[i].x == doctest::Approx(cfg.centers[i].x).epsilon(1e-10));
        CHECK(pv.positions[i].y == doctest::Approx(cfg.centers[i].y).epsilon(1e-10));
    }
}

TEST_CASE("run metrics append d/6 for several components") {
    ExperimentConfig c = pair_config();
    CHECK(run_metrics(c, 2.0).radii == std::vector<double>{0.5, 2.0 / 6.0});
    CHECK(run_metrics(single_vortex(), INFINITY).radii == std::vector<double>{0.1});
}

TEST_CASE("tracking ratio uses eps + sqrt(nu t)") {
    DiagnosticsSeries s;
    for (double t : {0.0, 1.0}) {
        DiagnosticsRecord r;
        r.t = t;
        ComponentDiagnostics c;
        c.dist_to_y = t == 0.0 ? 0.0 : 0.3;
        c.w1_contribution = t == 0.0 ? 0.1 : 0.6;
        r.components.push_back(c);
        s.records.push_back(r);
    }
    const TrackingCheck k = evaluate_tracking(s, 0.1, 0.04, 1.0, 2.0);
    CHECK(k.max_tracking_ratio == doctest::Approx(0.3 / 0.3));
    CHECK(k.max_w1_ratio == doctest::Approx(2.0));
    CHECK(k.tracking_ok);
    CHECK(k.w1_ok);
    CHECK_FALSE(evaluate_tracking(s, 0.1, 0.04, 0.5, 2.0).tracking_ok);
}

TEST_CASE("single-vortex run writes all four files with a stationary point vortex") {
    const fs::path dir = scratch_dir("single");
    const RunOutcome r = cmd_run(single_vortex(), dir);
    CHECK(r.exit_code == kExitOk);
    CHECK(r.status == "ok");
    for (const char* f : {"diagnostics.csv", "pv.csv", "assumptions.json", "manifest.json"}) {
        CHECK(fs::exists(dir / f));
    }
    const CsvTable pv = read_csv(dir / "pv.csv");
    REQUIRE(pv.rows.size() == 3);
    for (const auto& row : pv.rows) {
        CHECK(row[pv.column("Y_x")] == pv.rows[0][pv.column("Y_x")]);
        CHECK(row[pv.column("Y_y")] == pv.rows[0][pv.column("Y_y")]);
    }
    const CsvTable d = read_csv(dir / "diagnostics.csv");
    CHECK(d.header == split_csv_line(kDiagnosticsHeader));
    CHECK(d.rows.size() == 3);

    const auto manifest = nlohmann::json::parse(slurp(dir / "manifest.json"));
    CHECK(manifest.at("status") == "ok");
    CHECK(manifest.at("exit_code") == 0);
    CHECK(manifest.at("version") == kVersion);
    CHECK(config_from_json_string(manifest.at("config").dump()) == single_vortex());
    const auto assumptions = nlohmann::json::parse(slurp(dir / "assumptions.json"));
    CHECK(assumptions.size() == single_vortex().metrics.p.size());
}

TEST_CASE("identical configs give byte-identical outputs") {
    const fs::path a = scratch_dir("det_a"), b = scratch_dir("det_b");
    cmd_run(pair_config(), a);
    cmd_run(pair_config(), b);
    CHECK(slurp(a / "diagnostics.csv") == slurp(b / "diagnostics.csv"));
    CHECK(slurp(a / "pv.csv") == slurp(b / "pv.csv"));
    CHECK_FALSE(slurp(a / "diagnostics.csv").empty());
}

TEST_CASE("snapshots are written when enabled") {
    ExperimentConfig c = single_vortex();
    c.output.snapshots = true;
    c.solver.snapshot_times = {0.1, 0.2};
    const fs::path dir = scratch_dir("snap");
    CHECK(cmd_run(c, dir).exit_code == kExitOk);
    const Snapshot s = read_snapshot(dir / "snap_0001_c00.vrtx");
    CHECK(s.time == 0.2);
    CHECK(s.nu == c.solver.nu);
    CHECK(s.field.grid().size() == 64);
}

TEST_CASE("collision aborts with exit code 3") {
    ExperimentConfig c = pair_config();
    c.pv.collision_floor = 3.0;
    const fs::path dir = scratch_dir("collide");
    const RunOutcome r = cmd_run(c, dir);
    CHECK(r.exit_code == kExitNumerical);
    CHECK(r.status == "collision");
    CHECK(nlohmann::json::parse(slurp(dir / "manifest.json")).at("exit_code") == 3);
    CHECK(fs::exists(dir / "pv.csv"));
}

TEST_CASE("sign violation aborts with exit code 3 and keeps partial output") {
    ExperimentConfig c = pair_config();
    c.grid.n = 32;  // under-resolved: the 2/3 projection leaves negative lobes
    c.solver.sign_tolerance = 1e-12;
    const fs::path dir = scratch_dir("sign");
    const RunOutcome r = cmd_run(c, dir);
    CHECK(r.exit_code == kExitNumerical);
    CHECK(r.status == "sign_violation");
    CHECK(read_csv(dir / "diagnostics.csv").rows.size() >= 1);
}

TEST_CASE("invalid configuration throws ConfigError") {
    ExperimentConfig c = pair_config();
    c.layout[1].center = {4.5, 5.0};
    CHECK_THROWS_AS(cmd_run(c, scratch_dir("bad")), ConfigError);
    c = pair_config();
    c.grid.n = 7;
    CHECK_THROWS_AS(cmd_run(c, scratch_dir("bad")), ConfigError);
}

TEST_CASE("pv command integrates the layout centers") {
    ExperimentConfig c = pair_config();
    c.solver.t_end = 1.0;
    c.solver.diag_every = 0.5;
    const fs::path dir = scratch_dir("pv");
    const RunOutcome r = cmd_pv(c, dir);
    CHECK(r.exit_code == kExitOk);
    const CsvTable t = read_csv(dir / "pv.csv");
    CHECK(t.rows.size() == 6);
    CHECK(std::stod(t.rows[0][t.column("Y_x")]) == 4.0);
    // equal pair at d = 2: H = -(1/2 pi) log 2 at every sample
    for (const auto& row : t.rows) {
        CHECK(std::stod(row[t.column("H")]) == doctest::Approx(-std::log(2.0) / (2.0 * M_PI)).epsilon(1e-10));
    }
}

TEST_CASE("degenerate sweep equals the single run") {
    ExperimentConfig c = pair_config();
    c.sweep.eps = {0.6};
    c.sweep.nu = {1e-3};
    const fs::path sweep = scratch_dir("sweep1"), single = scratch_dir("sweep1_run");
    const SweepOutcome s = cmd_sweep(c, sweep, 1);
    CHECK(s.failures == 0);
    REQUIRE(s.members.size() == 1);
    cmd_run(c, single);
    CHECK(slurp(sweep / "member_000" / "diagnostics.csv") == slurp(single / "diagnostics.csv"));

    const CsvTable summary = read_csv(sweep / "summary.csv");
    const CsvTable diag = read_csv(single / "diagnostics.csv");
    // 5 records x 2 components
    REQUIRE(summary.rows.size() == 10);
    const auto& first = summary.rows[0];
    CHECK(first[summary.column("W2")] == diag.rows[0][diag.column("W2")]);
    CHECK(first[summary.column("status")] == "ok");
}

TEST_CASE("summary is a pure function of stored outputs and of job count") {
    ExperimentConfig c = single_vortex();
    c.sweep.eps = {0.8, 1.0};
    c.sweep.nu = {1e-2, 2e-2};
    c.sweep.sample_times = {0.2};
    const fs::path a = scratch_dir("sweep_a"), b = scratch_dir("sweep_b");
    cmd_sweep(c, a, 1);
    cmd_sweep(c, b, 3);
    const std::string summary = slurp(a / "summary.csv");
    CHECK(summary == slurp(b / "summary.csv"));
    CHECK(slurp(a / "rates.csv") == slurp(b / "rates.csv"));
    CHECK(read_csv(a / "summary.csv").rows.size() == 4);

    summarize_sweep(a, c.sweep.sample_times);
    CHECK(slurp(a / "summary.csv") == summary);
}

TEST_CASE("sweep rate fit follows the exact single-vortex moment law") {
    // W2^2 = W2(0)^2 + 4 nu t for one component; the fitted exponent of the
    // sweep must equal the least-squares slope of that law
    ExperimentConfig c = single_vortex();
    c.sweep.eps = {0.5};
    c.sweep.nu = {1e-2, 2e-2, 4e-2};
    c.solver.t_end = 0.5;
    c.solver.diag_every = 0.5;
    c.sweep.sample_times = {0.5};
    const fs::path dir = scratch_dir("sweep_rate");
    cmd_sweep(c, dir, 2);
    const CsvTable rates = read_csv(dir / "rates.csv");
    REQUIRE(rates.rows.size() == 1);
    CHECK(rates.rows[0][rates.column("kind")] == "W2_vs_nu");

    const CsvTable d0 = read_csv(dir / "member_000" / "diagnostics.csv");
    const double w0 = std::stod(d0.rows[0][d0.column("W2")]);
    std::vector<std::pair<double, double>> law;
    for (double nu : c.sweep.nu) law.emplace_back(nu, std::sqrt(w0 * w0 + 4.0 * nu * 0.5));
    CHECK(std::stod(rates.rows[0][rates.column("exponent")]) == doctest::Approx(rate_fit(law).exponent).epsilon(1e-4));
}

TEST_CASE("failed sweep members are recorded and the sweep continues") {
    ExperimentConfig c = pair_config();
    c.sweep.eps = {0.6, 1.2};  // 1.2 overlaps at d = 2
    c.sweep.nu = {1e-3};
    const fs::path dir = scratch_dir("sweep_fail");
    const SweepOutcome s = cmd_sweep(c, dir, 2);
    CHECK(s.failures == 1);
    CHECK(s.members[0].status == "ok");
    CHECK(s.members[1].status == "config_error");
    CHECK(s.members[1].exit_code == kExitConfig);
    const CsvTable summary = read_csv(dir / "summary.csv");
    CHECK(summary.rows.back()[summary.column("status")] == "config_error");
}

TEST_CASE("Lamb-Oseen validation") {
    // L = 200 sqrt(nu t0) keeps the periodic-image strain below 1e-7
    LambOseenOptions o;
    o.nu = 1e-2;
    o.n = 512;
    o.length = 20.0;
    o.t0 = 1.0;
    o.t_end = 1.0;
    const LambOseenReport zero = cmd_validate_lamb_oseen(o);
    CHECK(zero.max_rel_l2_error <= 1e-15);
    CHECK(zero.max_moment_error == 0.0);
    CHECK(zero.max_linf_error <= 1e-14);
    CHECK(zero.steps == 0);

    o.t_end = 1.5;
    o.records = 3;
    const LambOseenReport r = cmd_validate_lamb_oseen(o);
    CHECK(r.max_rel_l2_error <= 1e-6);
    CHECK(r.max_moment_error <= 1e-4);
    CHECK(r.max_linf_error <= 1e-6);
    CHECK(r.max_intensity_drift <= 1e-12);
    CHECK(r.times == std::vector<double>{1.0, 1.25, 1.5});

    o.t_end = 0.5;
    CHECK_THROWS_AS(cmd_validate_lamb_oseen(o), ConfigError);
}

TEST_CASE("halving h at least squares the sampled Lamb-Oseen error") {
    LambOseenOptions o;
    o.nu = 1e-2;
    o.t0 = 0.5;
    o.t_end = 0.6;
    o.records = 2;
    o.n = 96;
    const double coarse = cmd_validate_lamb_oseen(o).max_rel_l2_error_sampled;
    o.n = 192;
    const double fine = cmd_validate_lamb_oseen(o).max_rel_l2_error_sampled;
    CHECK(coarse < 1e-2);
    CHECK(fine <= coarse * coarse);
}
