#include "vortexlab/spectral.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cstring>
#include <map>
#include <memory>
#include <mutex>

#include "vortexlab/errors.hpp"

namespace vortexlab {

namespace {

// The FFTW planner is not thread safe; execution with fixed plans is.
std::mutex& planner_mutex() {
    static std::mutex m;
    return m;
}

class FftPlan {
public:
    explicit FftPlan(int n) : n_(n) {
        const std::size_t real_size = static_cast<std::size_t>(n) * n;
        const std::size_t complex_size = static_cast<std::size_t>(n) * (n / 2 + 1);
        real_ = fftw_alloc_real(real_size);
        spec_ = fftw_alloc_complex(complex_size);
        std::lock_guard lock(planner_mutex());
        // FFTW_ESTIMATE keeps plan selection, and thus round-off, reproducible.
        r2c_ = fftw_plan_dft_r2c_2d(n, n, real_, spec_, FFTW_ESTIMATE);
        c2r_ = fftw_plan_dft_c2r_2d(n, n, spec_, real_, FFTW_ESTIMATE);
    }
    FftPlan(const FftPlan&) = delete;
    FftPlan& operator=(const FftPlan&) = delete;
    ~FftPlan() {
        std::lock_guard lock(planner_mutex());
        fftw_destroy_plan(r2c_);
        fftw_destroy_plan(c2r_);
        fftw_free(real_);
        fftw_free(spec_);
    }

    void forward(std::span<const double> in, std::span<Complex> out) {
        std::memcpy(real_, in.data(), in.size_bytes());
        fftw_execute(r2c_);
        const double scale = 1.0 / (static_cast<double>(n_) * n_);
        auto* c = reinterpret_cast<Complex*>(spec_);
        for (std::size_t m = 0; m < out.size(); ++m) out[m] = c[m] * scale;
    }

    void inverse(std::span<const Complex> in, std::span<double> out) {
        std::memcpy(spec_, in.data(), in.size_bytes());
        fftw_execute(c2r_);
        std::memcpy(out.data(), real_, out.size_bytes());
    }

private:
    int n_;
    double* real_ = nullptr;
    fftw_complex* spec_ = nullptr;
    fftw_plan r2c_ = nullptr;
    fftw_plan c2r_ = nullptr;
};

FftPlan& plan_for(int n) {
    thread_local std::map<int, std::unique_ptr<FftPlan>> plans;
    auto& slot = plans[n];
    if (!slot) slot = std::make_unique<FftPlan>(n);
    return *slot;
}

void require_finite(const ScalarField& f, const char* what) {
    if (!f.all_finite()) throw NonFiniteError(std::string(what) + ": non-finite input values");
}

void require_finite(const VectorField& u, const char* what) {
    if (!u.all_finite()) throw NonFiniteError(std::string(what) + ": non-finite input values");
}

}  // namespace

SpectralOperators::SpectralOperators(const Grid& grid) : grid_(grid) {
    const int n = grid.size();
    const int cols = n / 2 + 1;
    const std::size_t total = static_cast<std::size_t>(n) * cols;
    k1_.resize(total);
    k2_.resize(total);
    dk1_.resize(total);
    dk2_.resize(total);
    ksq_.resize(total);
    keep_.resize(total);
    const int cutoff = n / 3;
    for (int j2 = 0; j2 < n; ++j2) {
        for (int j1 = 0; j1 < cols; ++j1) {
            const std::size_t m = static_cast<std::size_t>(j2) * cols + j1;
            const int w1 = grid.wave_index(j1);
            const int w2 = grid.wave_index(j2);
            k1_[m] = grid.wavenumber(j1);
            k2_[m] = grid.wavenumber(j2);
            dk1_[m] = (w1 == n / 2) ? 0.0 : k1_[m];
            dk2_[m] = (w2 == n / 2) ? 0.0 : k2_[m];
            ksq_[m] = k1_[m] * k1_[m] + k2_[m] * k2_[m];
            keep_[m] = (std::abs(w1) <= cutoff && std::abs(w2) <= cutoff) ? 1 : 0;
        }
    }
}

void SpectralOperators::forward(std::span<const double> values, std::span<Complex> out) const {
    plan_for(grid_.size()).forward(values, out);
}

void SpectralOperators::inverse(std::span<const Complex> coeffs, std::span<double> out) const {
    plan_for(grid_.size()).inverse(coeffs, out);
}

Spectrum to_spectrum(const ScalarField& f) {
    Spectrum s(f.grid());
    plan_for(f.grid().size()).forward(f.values(), s.coeffs);
    return s;
}

ScalarField to_field(const Spectrum& s) {
    ScalarField f(s.grid);
    plan_for(s.grid.size()).inverse(s.coeffs, f.values());
    return f;
}

VectorField biot_savart(const ScalarField& omega) {
    require_finite(omega, "biot_savart");
    const Grid& g = omega.grid();
    const SpectralOperators ops(g);
    std::vector<Complex> w(ops.modes());
    ops.forward(omega.values(), w);
    std::vector<Complex> u1(ops.modes()), u2(ops.modes());
    const Complex i(0.0, 1.0);
    for (std::size_t m = 1; m < ops.modes(); ++m) {
        // -Laplacian psi = omega, u = (d2 psi, -d1 psi)
        const Complex psi = w[m] / ops.k_squared(m);
        u1[m] = i * ops.dx2(m) * psi;
        u2[m] = -i * ops.dx1(m) * psi;
    }
    VectorField u(g);
    ops.inverse(u1, u.u1);
    ops.inverse(u2, u.u2);
    return u;
}

ScalarField curl(const VectorField& u) {
    require_finite(u, "curl");
    const SpectralOperators ops(u.grid);
    std::vector<Complex> a(ops.modes()), b(ops.modes());
    ops.forward(u.u1, a);
    ops.forward(u.u2, b);
    const Complex i(0.0, 1.0);
    for (std::size_t m = 0; m < ops.modes(); ++m) {
        a[m] = i * ops.dx1(m) * b[m] - i * ops.dx2(m) * a[m];
    }
    ScalarField out(u.grid);
    ops.inverse(a, out.values());
    return out;
}

ScalarField divergence(const VectorField& u) {
    require_finite(u, "divergence");
    const SpectralOperators ops(u.grid);
    std::vector<Complex> a(ops.modes()), b(ops.modes());
    ops.forward(u.u1, a);
    ops.forward(u.u2, b);
    const Complex i(0.0, 1.0);
    for (std::size_t m = 0; m < ops.modes(); ++m) {
        a[m] = i * ops.dx1(m) * a[m] + i * ops.dx2(m) * b[m];
    }
    ScalarField out(u.grid);
    ops.inverse(a, out.values());
    return out;
}

Spectrum dealias_23(Spectrum s) {
    const SpectralOperators ops(s.grid);
    for (std::size_t m = 0; m < ops.modes(); ++m) {
        if (!ops.keep_23(m)) s.coeffs[m] = 0.0;
    }
    return s;
}

}  // namespace vortexlab
