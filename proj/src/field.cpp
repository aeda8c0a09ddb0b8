#include "vortexlab/field.hpp"

#include <algorithm>
#include <string>

#include "vortexlab/errors.hpp"

namespace vortexlab {

Grid make_grid(double length, int n) {
    if (!(length > 0.0) || !std::isfinite(length)) {
        throw ConfigError("grid length must be positive and finite, got " + std::to_string(length));
    }
    if (n % 2 != 0) {
        throw ConfigError("grid size n must be even, got " + std::to_string(n));
    }
    if (n < 8) {
        throw ConfigError("grid size n must be at least 8, got " + std::to_string(n));
    }
    return Grid(length, n);
}

ScalarField::ScalarField(const Grid& grid, std::vector<double> values)
    : grid_(grid), values_(std::move(values)) {
    if (values_.size() != grid_.points()) {
        throw ConfigError("scalar field size does not match grid");
    }
}

bool ScalarField::all_finite() const noexcept {
    return std::all_of(values_.begin(), values_.end(), [](double v) { return std::isfinite(v); });
}

ScalarField& ScalarField::operator+=(const ScalarField& o) {
    if (!(o.grid_ == grid_)) throw ConfigError("field grids differ");
    for (std::size_t k = 0; k < values_.size(); ++k) values_[k] += o.values_[k];
    return *this;
}

ScalarField& ScalarField::operator*=(double s) {
    for (auto& v : values_) v *= s;
    return *this;
}

ScalarField shift_cells(const ScalarField& f, int s1, int s2) {
    const int n = f.grid().size();
    ScalarField out(f.grid());
    auto mod = [n](int i) { return ((i % n) + n) % n; };
    for (int i2 = 0; i2 < n; ++i2) {
        for (int i1 = 0; i1 < n; ++i1) {
            out(mod(i1 + s1), mod(i2 + s2)) = f(i1, i2);
        }
    }
    return out;
}

bool VectorField::all_finite() const noexcept {
    auto fin = [](double v) { return std::isfinite(v); };
    return std::all_of(u1.begin(), u1.end(), fin) && std::all_of(u2.begin(), u2.end(), fin);
}

double VectorField::max_speed() const noexcept {
    double m2 = 0.0;
    for (std::size_t k = 0; k < u1.size(); ++k) {
        m2 = std::max(m2, u1[k] * u1[k] + u2[k] * u2[k]);
    }
    return std::sqrt(m2);
}

double accurate_sum(std::span<const double> v) {
    CompensatedSum sum;
    for (double x : v) sum += x;
    return sum.value();
}

}  // namespace vortexlab
