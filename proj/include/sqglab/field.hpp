#pragma once

#include <complex>
#include <functional>
#include <vector>

#include "sqglab/grid.hpp"

namespace sqg {

/// Nodal values of a real scalar, row-major: value(i, j) = f(x_i, y_j).
class RealField {
public:
    RealField() = default;
    explicit RealField(const Grid& g, double fill = 0.0)
        : grid_(g), v_(static_cast<size_t>(g.size()), fill) {}

    static RealField from_function(const Grid& g,
                                   const std::function<double(double, double)>& f) {
        RealField out(g);
        for (int i = 0; i < g.n; ++i)
            for (int j = 0; j < g.n; ++j)
                out(i, j) = f(g.x(i), g.x(j));
        return out;
    }

    const Grid& grid() const { return grid_; }
    double& operator()(int i, int j) { return v_[static_cast<size_t>(i) * grid_.n + j]; }
    double operator()(int i, int j) const { return v_[static_cast<size_t>(i) * grid_.n + j]; }

    std::vector<double>& values() { return v_; }
    const std::vector<double>& values() const { return v_; }

    bool all_finite() const {
        for (double x : v_)
            if (!std::isfinite(x)) return false;
        return true;
    }

    double max_abs() const {
        double m = 0.0;
        for (double x : v_) m = std::max(m, std::abs(x));
        return m;
    }

private:
    Grid grid_;
    std::vector<double> v_;
};

/// Complex Fourier coefficients in wrapped (FFT) layout; see Grid for the
/// wavenumber convention. Real underlying fields satisfy the Hermitian
/// symmetry coeff(-k) = conj(coeff(k)) and a real zero mode.
class SpectralField {
public:
    SpectralField() = default;
    explicit SpectralField(const Grid& g)
        : grid_(g), c_(static_cast<size_t>(g.size()), {0.0, 0.0}) {}

    const Grid& grid() const { return grid_; }

    std::complex<double>& at(int i, int j) { return c_[static_cast<size_t>(i) * grid_.n + j]; }
    std::complex<double> at(int i, int j) const { return c_[static_cast<size_t>(i) * grid_.n + j]; }

    /// Access by integer wavevector (k1, k2), |k_i| <= n/2.
    std::complex<double> coeff(int k1, int k2) const {
        return at(grid_.index_of(k1), grid_.index_of(k2));
    }
    void set_coeff(int k1, int k2, std::complex<double> z) {
        at(grid_.index_of(k1), grid_.index_of(k2)) = z;
    }

    std::vector<std::complex<double>>& data() { return c_; }
    const std::vector<std::complex<double>>& data() const { return c_; }

    /// Largest |coeff(-k) - conj(coeff(k))| over all modes.
    double hermitian_defect() const {
        double d = 0.0;
        const int n = grid_.n;
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                auto z = at(i, j);
                auto w = at((n - i) % n, (n - j) % n);
                d = std::max(d, std::abs(z - std::conj(w)));
            }
        d = std::max(d, std::abs(std::imag(at(0, 0))));
        return d;
    }

private:
    Grid grid_;
    std::vector<std::complex<double>> c_;
};

/// Two real components on a shared grid; houses velocities v = Rperp(theta).
struct VectorField {
    RealField v1, v2;

    VectorField() = default;
    explicit VectorField(const Grid& g) : v1(g), v2(g) {}
    const Grid& grid() const { return v1.grid(); }

    double max_norm() const {
        double m = 0.0;
        const int n = grid().n;
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                m = std::max(m, std::hypot(v1(i, j), v2(i, j)));
        return m;
    }
};

} // namespace sqg
