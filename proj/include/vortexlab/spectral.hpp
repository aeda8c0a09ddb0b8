#pragma once

#include <complex>
#include <span>
#include <vector>

#include "vortexlab/field.hpp"

namespace vortexlab {

using Complex = std::complex<double>;

/// Half-complex spectrum of a real field: n rows (k2) by n/2+1 columns (k1).
/// Coefficients are normalized so that the (0,0) entry is the field mean.
struct Spectrum {
    Grid grid;
    std::vector<Complex> coeffs;

    Spectrum() = default;
    explicit Spectrum(const Grid& g)
        : grid(g), coeffs(static_cast<std::size_t>(g.size()) * (g.size() / 2 + 1)) {}

    int columns() const noexcept { return grid.size() / 2 + 1; }
    Complex& at(int j1, int j2) { return coeffs[static_cast<std::size_t>(j2) * columns() + j1]; }
    Complex at(int j1, int j2) const { return coeffs[static_cast<std::size_t>(j2) * columns() + j1]; }
};

Spectrum to_spectrum(const ScalarField& f);
ScalarField to_field(const Spectrum& s);

/// Precomputed wavenumber tables for one grid. Derivative factors vanish on the
/// Nyquist row/column (the Nyquist mode is cosine-only).
class SpectralOperators {
public:
    explicit SpectralOperators(const Grid& grid);

    const Grid& grid() const noexcept { return grid_; }
    std::size_t modes() const noexcept { return k1_.size(); }

    /// Wavenumbers used for d/dx1 and d/dx2 (multiply by i), Nyquist zeroed.
    double dx1(std::size_t m) const noexcept { return dk1_[m]; }
    double dx2(std::size_t m) const noexcept { return dk2_[m]; }
    /// |k|^2 with the full Nyquist wavenumber.
    double k_squared(std::size_t m) const noexcept { return ksq_[m]; }
    bool keep_23(std::size_t m) const noexcept { return keep_[m] != 0; }

    /// Forward/backward transforms reusing this thread's FFT plan.
    void forward(std::span<const double> values, std::span<Complex> out) const;
    void inverse(std::span<const Complex> coeffs, std::span<double> out) const;

private:
    Grid grid_;
    std::vector<double> k1_, k2_, dk1_, dk2_, ksq_;
    std::vector<unsigned char> keep_;
};

/// u = K * (omega - mean(omega)) on the torus via the stream function.
VectorField biot_savart(const ScalarField& omega);
ScalarField curl(const VectorField& u);
ScalarField divergence(const VectorField& u);

/// 2/3 rule: zero every mode with |k1| > n/3 or |k2| > n/3.
Spectrum dealias_23(Spectrum s);

}  // namespace vortexlab
