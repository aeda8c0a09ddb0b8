#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <vector>

#include "vortexlab/diagnostics.hpp"
#include "vortexlab/errors.hpp"
#include "vortexlab/initial_data.hpp"

using namespace vortexlab;

TEST_CASE("Lamb-Oseen profile") {
    CHECK(lamb_oseen_profile(0.0) == doctest::Approx(1.0 / (4.0 * M_PI)).epsilon(1e-15));
    CHECK(lamb_oseen_profile(4.0) == doctest::Approx(std::exp(-1.0) / (4.0 * M_PI)).epsilon(1e-15));
}

TEST_CASE("Gaussian component: W2, intensity and peak") {
    const Grid g = make_grid(10.0, 256);
    const Vec2 c = g.cell_center(128, 128);
    for (double eps : {0.25, 0.5, 1.0}) {
        const double a = -1.5, sigma = 0.5 * eps;
        const ScalarField f = gaussian_component(c, eps, a, g);
        CHECK(w2_to_point(f, a, c) == doctest::Approx(eps).epsilon(1e-4));
        CHECK(std::abs(intensity(f) - a) <= 1e-13);
        CHECK(lp_norm(f, kInfinity) == doctest::Approx(std::abs(a) / (4.0 * M_PI * sigma * sigma)).epsilon(1e-6));
        for (double v : f.values()) CHECK(v <= 0.0);
    }
}

TEST_CASE("Gaussian component rejections") {
    const Grid g = make_grid(10.0, 64);
    CHECK_THROWS_AS(gaussian_component({5.0, 5.0}, 0.0, 1.0, g), ConfigError);
    CHECK_THROWS_AS(gaussian_component({5.0, 5.0}, -0.1, 1.0, g), ConfigError);
    // within 4 sigma = 2 eps of the boundary
    CHECK_THROWS_AS(gaussian_component({0.9, 5.0}, 0.5, 1.0, g), ConfigError);
    CHECK_NOTHROW(gaussian_component({1.1, 5.0}, 0.5, 1.0, g));
}

TEST_CASE("disc component: W2, support and intensity") {
    const Grid g = make_grid(10.0, 256);
    const Vec2 c = g.cell_center(128, 128);
    const double eps = 1.0;
    const ScalarField f = disc_component(c, eps, 2.0, g, eps / 8.0);
    CHECK(w2_to_point(f, 2.0, c) == doctest::Approx(eps / std::sqrt(2.0)).epsilon(0.02));
    CHECK(outer_mass(f, 2.0, c, 2.0 * eps) <= 1e-12);
    CHECK(std::abs(intensity(f) - 2.0) <= 1e-13);
    for (double v : f.values()) CHECK(v >= 0.0);
    CHECK_THROWS_AS(disc_component(c, eps, 1.0, g, 0.0), ConfigError);
    CHECK_THROWS_AS(disc_component(c, eps, 1.0, g, 0.3), ConfigError);
}

TEST_CASE("disc L4 norm scales as eps^-3/2") {
    const Grid g = make_grid(10.0, 512);
    const Vec2 c = g.cell_center(256, 256);
    std::vector<std::pair<double, double>> samples;
    for (double eps : {0.4, 0.6, 0.8, 1.2, 1.6}) {
        samples.emplace_back(eps, lp_norm(disc_component(c, eps, 1.0, g, eps / 8.0), 4.0));
    }
    CHECK(rate_fit(samples).exponent == doctest::Approx(-1.5).epsilon(0.02 / 1.5));
}

TEST_CASE("stretched Gaussian keeps W2 = eps") {
    const Grid g = make_grid(10.0, 256);
    const Vec2 c = g.cell_center(128, 128);
    for (double aspect : {1.0, 2.0, 4.0}) {
        const ScalarField f = stretched_gaussian_component(c, 0.6, 1.0, aspect, 0.7, g);
        CHECK(w2_to_point(f, 1.0, c) == doctest::Approx(0.6).epsilon(1e-4));
        CHECK(std::abs(intensity(f) - 1.0) <= 1e-13);
    }
    const ScalarField round = stretched_gaussian_component(c, 0.6, 1.0, 1.0, 0.0, g);
    const ScalarField gauss = gaussian_component(c, 0.6, 1.0, g);
    for (std::size_t k = 0; k < g.points(); ++k) {
        CHECK(round.data()[k] == doctest::Approx(gauss.data()[k]).epsilon(1e-13).scale(1e-300));
    }
    CHECK_THROWS_AS(stretched_gaussian_component(c, 0.6, 1.0, 0.5, 0.0, g), ConfigError);
}

TEST_CASE("Lamb-Oseen exact: intensity, W2, and agreement with the Gaussian blob") {
    const Grid g = make_grid(10.0, 256);
    const Vec2 c = g.cell_center(128, 128);
    const double nu = 1e-2, t = 2.0;
    const ScalarField lo = lamb_oseen_exact(t, nu, 1.0, c, g);
    CHECK(intensity(lo) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(w2_to_point(lo, 1.0, c) == doctest::Approx(2.0 * std::sqrt(nu * t)).epsilon(1e-4));
    const ScalarField gauss = gaussian_component(c, 2.0 * std::sqrt(nu * t), 1.0, g);
    const double ratio = intensity(lo) / intensity(gauss);
    for (std::size_t k = 0; k < g.points(); ++k) {
        CHECK(lo.data()[k] == doctest::Approx(ratio * gauss.data()[k]).epsilon(1e-13).scale(1e-300));
    }
    CHECK_THROWS_AS(lamb_oseen_exact(0.0, nu, 1.0, c, g), ConfigError);
}

TEST_CASE("band-limited Lamb-Oseen matches the sampled profile when resolved") {
    const Grid g = make_grid(10.0, 256);
    const Vec2 c = g.cell_center(128, 128);
    const double nu = 1e-2, t = 4.0;
    const ScalarField bl = lamb_oseen_band_limited(t, nu, 1.0, c, g);
    const ScalarField lo = lamb_oseen_exact(t, nu, 1.0, c, g);
    CHECK(intensity(bl) == doctest::Approx(1.0).epsilon(1e-13));
    const double peak = lp_norm(lo, kInfinity);
    for (std::size_t k = 0; k < g.points(); ++k) CHECK(std::abs(bl.data()[k] - lo.data()[k]) <= 1e-10 * peak);
}

TEST_CASE("generators are translation-equivariant by full cells") {
    const Grid g = make_grid(10.0, 128);
    const double h = g.spacing();
    const Vec2 c{4.3, 5.6}, d{4.3 + 7 * h, 5.6 - 3 * h};
    const auto check = [&](const ScalarField& a, const ScalarField& b) {
        const ScalarField s = shift_cells(a, 7, -3);
        double diff = 0.0;
        for (std::size_t k = 0; k < g.points(); ++k) diff = std::max(diff, std::abs(s.data()[k] - b.data()[k]));
        CHECK(diff <= 1e-12 * lp_norm(b, kInfinity));
    };
    check(gaussian_component(c, 0.5, 1.0, g), gaussian_component(d, 0.5, 1.0, g));
    check(disc_component(c, 0.8, 1.0, g, 0.1), disc_component(d, 0.8, 1.0, g, 0.1));
    check(stretched_gaussian_component(c, 0.5, 1.0, 2.0, 0.3, g), stretched_gaussian_component(d, 0.5, 1.0, 2.0, 0.3, g));
}

TEST_CASE("profile names") {
    for (Profile p : {Profile::Gaussian, Profile::Disc, Profile::StretchedGaussian}) {
        CHECK(parse_profile(profile_name(p)) == p);
    }
    CHECK_THROWS_AS(parse_profile("vortex_sheet"), ConfigError);
}

TEST_CASE("assemble_configuration") {
    const Grid g = make_grid(10.0, 256);
    SUBCASE("single blob") {
        const Configuration cfg = assemble_configuration({BlobSpec{{5.0, 5.0}, 0.5, 1.0}}, g);
        CHECK(cfg.set.size() == 1);
        CHECK(std::isinf(cfg.min_distance));
    }
    SUBCASE("pair records d and total intensity") {
        const Configuration cfg =
            assemble_configuration({BlobSpec{{4.5, 5.0}, 0.01, 1.0}, BlobSpec{{5.5, 5.0}, 0.01, -0.5}}, g);
        CHECK(cfg.min_distance == 1.0);
        CHECK(cfg.eps == std::vector<double>{0.01, 0.01});
        CHECK(std::abs(intensity(cfg.set.total()) - 0.5) <= 1e-12);
    }
    SUBCASE("overlap and boundary are both reported") {
        try {
            assemble_configuration({BlobSpec{{5.0, 5.0}, 0.5, 1.0}, BlobSpec{{5.5, 5.0}, 0.5, 1.0},
                                    BlobSpec{{0.2, 5.0}, 0.5, 1.0}},
                                   g);
            FAIL("expected ConfigError");
        } catch (const ConfigError& e) {
            const std::string msg = e.what();
            CHECK(msg.find("overlap(0,1") != std::string::npos);
            CHECK(msg.find("boundary(2)") != std::string::npos);
        }
    }
    SUBCASE("empty layout") {
        CHECK_THROWS_AS(assemble_configuration({}, g), ConfigError);
    }
}

TEST_CASE("verify_assumptions on a Gaussian layout") {
    const Grid g = make_grid(1.0, 256);
    const double eps = 0.02;
    const Configuration cfg =
        assemble_configuration({BlobSpec{{0.3, 0.5}, eps, 1.0}, BlobSpec{{0.7, 0.5}, eps, 1.0}}, g);
    PVState pv;
    pv.positions = cfg.centers;
    pv.strengths = {1.0, 1.0};
    const AssumptionReport r = verify_assumptions(cfg.set, pv, eps, 2.0, 2.0, 10.0 * eps, 4.0);
    CHECK(r.concentration_ok);
    CHECK(r.outer_ok);
    for (const auto& c : r.components) {
        CHECK(c.w2_to_y == doctest::Approx(eps).epsilon(1e-3));
        // tail beyond R = 10 eps = 20 sigma is exp(-100)
        CHECK(c.outer_mass <= 1e-12);
    }
    CHECK(r.gamma_floor == 1.5);
}

TEST_CASE("verify_assumptions on a disc: minimal gamma approaches 2 - 2/p") {
    const Grid g = make_grid(1.0, 1024);
    const double eps = 0.05;
    const Configuration cfg = assemble_configuration({BlobSpec{{0.5, 0.5}, eps, 1.0, Profile::Disc}}, g);
    PVState pv;
    pv.positions = cfg.centers;
    pv.strengths = {1.0};
    const AssumptionReport r = verify_assumptions(cfg.set, pv, eps, 2.0, 2.0, 2.0 * eps, 4.0);
    // ||disc||_4 = pi^(-3/4) eps^(-3/2), so gamma_min = 3/2 + (3/4) ln(pi) / ln(eps)
    const double expected = 1.5 + 0.75 * std::log(M_PI) / std::log(eps);
    CHECK(r.gamma_min == doctest::Approx(expected).epsilon(1e-2));
    CHECK(r.gamma_floor == 1.5);
    CHECK(r.lp_ok);
    CHECK(r.components[0].outer_mass <= 1e-12);
}

TEST_CASE("verify_assumptions with a point-like component") {
    const Grid g = make_grid(1.0, 64);
    ComponentSet s;
    ScalarField f(g);
    f(20, 30) = 1.0 / (g.spacing() * g.spacing());
    s.components.push_back(f);
    s.intensities.push_back(1.0);
    PVState pv;
    pv.positions = {g.cell_center(20, 30)};
    pv.strengths = {1.0};
    for (double eps : {1e-3, 1e-6}) {
        const AssumptionReport r = verify_assumptions(s, pv, eps, 2.0, 2.0, 0.1, 4.0);
        CHECK(r.components[0].w2_to_y == 0.0);
        CHECK(r.concentration_ok);
    }
    pv.positions.push_back({0.1, 0.1});
    pv.strengths.push_back(1.0);
    CHECK_THROWS_AS(verify_assumptions(s, pv, 0.1, 2.0, 2.0, 0.1, 4.0), ConfigError);
}
