#pragma once

#include <cmath>
#include <cstddef>
#include <span>
#include <vector>

namespace vortexlab {

struct Vec2 {
    double x = 0.0;
    double y = 0.0;

    Vec2& operator+=(const Vec2& o) { x += o.x; y += o.y; return *this; }
    Vec2& operator-=(const Vec2& o) { x -= o.x; y -= o.y; return *this; }
    Vec2& operator*=(double s) { x *= s; y *= s; return *this; }
    friend Vec2 operator+(Vec2 a, const Vec2& b) { return a += b; }
    friend Vec2 operator-(Vec2 a, const Vec2& b) { return a -= b; }
    friend Vec2 operator*(double s, Vec2 a) { return a *= s; }
    friend Vec2 operator*(Vec2 a, double s) { return a *= s; }
    friend bool operator==(const Vec2&, const Vec2&) = default;
};

inline double dot(const Vec2& a, const Vec2& b) { return a.x * b.x + a.y * b.y; }
inline double norm(const Vec2& a) { return std::hypot(a.x, a.y); }
/// Counter-clockwise rotation by 90 degrees.
inline Vec2 perp(const Vec2& a) { return {-a.y, a.x}; }

/// Periodic square [0, L)^2 sampled at n x n cell centers (i + 1/2) h.
class Grid {
public:
    Grid() = default;

    double length() const noexcept { return length_; }
    int size() const noexcept { return n_; }
    double spacing() const noexcept { return length_ / n_; }
    double cell_area() const noexcept { return spacing() * spacing(); }
    std::size_t points() const noexcept { return static_cast<std::size_t>(n_) * n_; }

    double coord(int i) const noexcept { return (i + 0.5) * spacing(); }
    Vec2 cell_center(int i1, int i2) const noexcept { return {coord(i1), coord(i2)}; }

    /// Signed wavenumber index for FFT slot j, in {-n/2+1, ..., n/2}.
    int wave_index(int j) const noexcept { return j <= n_ / 2 ? j : j - n_; }
    double wavenumber(int j) const noexcept {
        return 2.0 * M_PI * wave_index(j) / length_;
    }

    /// Minimal-image representative of a displacement, in [-L/2, L/2).
    double wrap_displacement(double d) const noexcept {
        return d - length_ * std::floor(d / length_ + 0.5);
    }
    Vec2 min_image(const Vec2& d) const noexcept {
        return {wrap_displacement(d.x), wrap_displacement(d.y)};
    }
    /// Position folded into [0, L).
    Vec2 wrap_position(const Vec2& p) const noexcept {
        return {p.x - length_ * std::floor(p.x / length_),
                p.y - length_ * std::floor(p.y / length_)};
    }

    friend bool operator==(const Grid&, const Grid&) = default;

private:
    friend Grid make_grid(double, int);
    Grid(double length, int n) : length_(length), n_(n) {}

    double length_ = 1.0;
    int n_ = 8;
};

/// Validates L > 0, n even and n >= 8.
Grid make_grid(double length, int n);

/// Real samples on a Grid, row-major with x2 as the slow index.
class ScalarField {
public:
    ScalarField() = default;
    explicit ScalarField(const Grid& grid, double fill = 0.0)
        : grid_(grid), values_(grid.points(), fill) {}
    ScalarField(const Grid& grid, std::vector<double> values);

    const Grid& grid() const noexcept { return grid_; }
    std::span<double> values() noexcept { return values_; }
    std::span<const double> values() const noexcept { return values_; }
    std::vector<double>& data() noexcept { return values_; }
    const std::vector<double>& data() const noexcept { return values_; }

    double& operator()(int i1, int i2) { return values_[index(i1, i2)]; }
    double operator()(int i1, int i2) const { return values_[index(i1, i2)]; }

    std::size_t index(int i1, int i2) const noexcept {
        return static_cast<std::size_t>(i2) * grid_.size() + i1;
    }

    bool all_finite() const noexcept;

    ScalarField& operator+=(const ScalarField& o);
    ScalarField& operator*=(double s);

private:
    Grid grid_;
    std::vector<double> values_;
};

/// Cell-center grid translation by (s1, s2) cells: out(i + s) = in(i).
ScalarField shift_cells(const ScalarField& f, int s1, int s2);

struct VectorField {
    Grid grid;
    std::vector<double> u1;
    std::vector<double> u2;

    explicit VectorField(const Grid& g = Grid{})
        : grid(g), u1(g.points(), 0.0), u2(g.points(), 0.0) {}

    bool all_finite() const noexcept;
    /// Max over cells of the Euclidean speed.
    double max_speed() const noexcept;
};

/// Neumaier-compensated running sum.
class CompensatedSum {
public:
    void add(double x) noexcept {
        const double t = sum_ + x;
        comp_ += std::abs(sum_) >= std::abs(x) ? (sum_ - t) + x : (x - t) + sum_;
        sum_ = t;
    }
    CompensatedSum& operator+=(double x) noexcept {
        add(x);
        return *this;
    }
    double value() const noexcept { return sum_ + comp_; }

private:
    double sum_ = 0.0;
    double comp_ = 0.0;
};

/// Neumaier-compensated sum.
double accurate_sum(std::span<const double> v);

}  // namespace vortexlab
