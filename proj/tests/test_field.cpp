#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <random>

#include "vortexlab/errors.hpp"
#include "vortexlab/field.hpp"

using namespace vortexlab;

TEST_CASE("make_grid spacing") {
    CHECK(make_grid(2.0 * M_PI, 8).spacing() == doctest::Approx(M_PI / 4).epsilon(1e-15));
    CHECK(make_grid(10.0, 256).spacing() == 10.0 / 256);
    CHECK(make_grid(10.0, 256).points() == 65536u);
}

TEST_CASE("make_grid rejects bad sizes") {
    CHECK_THROWS_AS(make_grid(10.0, 255), ConfigError);
    CHECK_THROWS_AS(make_grid(10.0, 6), ConfigError);
    CHECK_THROWS_AS(make_grid(0.0, 16), ConfigError);
    CHECK_THROWS_AS(make_grid(-1.0, 16), ConfigError);
    CHECK_THROWS_AS(make_grid(NAN, 16), ConfigError);
}

TEST_CASE("cell centers and wavenumbers") {
    const Grid g = make_grid(4.0, 8);
    CHECK(g.coord(0) == 0.25);
    CHECK(g.coord(7) == 3.75);
    CHECK(g.wave_index(0) == 0);
    CHECK(g.wave_index(4) == 4);
    CHECK(g.wave_index(5) == -3);
    CHECK(g.wavenumber(1) == doctest::Approx(2.0 * M_PI / 4.0));
    CHECK(g.wavenumber(7) == doctest::Approx(-2.0 * M_PI / 4.0));
}

TEST_CASE("minimal image and wrapping") {
    const Grid g = make_grid(10.0, 8);
    CHECK(g.wrap_displacement(6.0) == doctest::Approx(-4.0));
    CHECK(g.wrap_displacement(-6.0) == doctest::Approx(4.0));
    CHECK(g.wrap_displacement(5.0) == doctest::Approx(-5.0));
    CHECK(g.wrap_displacement(1.5) == 1.5);
    const Vec2 w = g.wrap_position({-0.5, 12.0});
    CHECK(w.x == doctest::Approx(9.5));
    CHECK(w.y == doctest::Approx(2.0));
}

TEST_CASE("vector helpers") {
    const Vec2 a{3.0, 4.0};
    CHECK(norm(a) == 5.0);
    CHECK(dot(a, perp(a)) == 0.0);
    CHECK(perp(Vec2{1.0, 0.0}) == Vec2{0.0, 1.0});
    CHECK(a - a == Vec2{});
    CHECK(2.0 * a == Vec2{6.0, 8.0});
}

TEST_CASE("scalar field storage is x2-major") {
    const Grid g = make_grid(1.0, 8);
    ScalarField f(g);
    f(3, 5) = 7.0;
    CHECK(f.data()[5 * 8 + 3] == 7.0);
    CHECK(f.all_finite());
    f(0, 0) = INFINITY;
    CHECK_FALSE(f.all_finite());
    CHECK_THROWS_AS(ScalarField(g, std::vector<double>(10)), ConfigError);
}

TEST_CASE("arithmetic requires matching grids") {
    ScalarField a(make_grid(1.0, 8), 1.0);
    ScalarField b(make_grid(1.0, 8), 2.0);
    a += b;
    a *= 2.0;
    CHECK(a(1, 1) == 6.0);
    ScalarField c(make_grid(2.0, 8), 1.0);
    CHECK_THROWS_AS(a += c, ConfigError);
}

TEST_CASE("shift_cells is a periodic index permutation") {
    const Grid g = make_grid(1.0, 8);
    ScalarField f(g);
    for (int k = 0; k < 64; ++k) f.data()[k] = k;
    const ScalarField s = shift_cells(f, 3, -2);
    for (int i2 = 0; i2 < 8; ++i2) {
        for (int i1 = 0; i1 < 8; ++i1) {
            CHECK(s((i1 + 3) % 8, (i2 + 6) % 8) == f(i1, i2));
        }
    }
    const ScalarField back = shift_cells(s, -3, 2);
    CHECK(back.data() == f.data());
}

TEST_CASE("accurate_sum recovers cancelled terms") {
    const std::vector<double> v{1e16, 1.0, -1e16, 1.0};
    CHECK(accurate_sum(v) == 2.0);
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    std::vector<double> w(10000);
    long double ref = 0.0L;
    for (auto& x : w) {
        x = u(rng);
        ref += x;
    }
    CHECK(accurate_sum(w) == doctest::Approx(static_cast<double>(ref)).epsilon(1e-15));
}

TEST_CASE("vector field max speed") {
    VectorField u(make_grid(1.0, 8));
    u.u1[3] = 3.0;
    u.u2[3] = -4.0;
    CHECK(u.max_speed() == 5.0);
    CHECK(u.all_finite());
    u.u2[0] = NAN;
    CHECK_FALSE(u.all_finite());
}
