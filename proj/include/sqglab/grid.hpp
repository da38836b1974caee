#pragma once

#include <cmath>
#include <stdexcept>

namespace sqg {

/// Doubly periodic square grid on the box [-l, l)^2 with n points per axis.
///
/// Nodes are x_i = -l + i*dx, dx = 2l/n. Integer wavevectors k with
/// |k_i| <= n/2 carry the physical wavenumber kappa_i = pi*k_i/l (the box
/// period is 2l). Spectral storage uses the usual wrapped layout: index
/// i <= n/2 means k = i, index i > n/2 means k = i - n.
struct Grid {
    int n = 0;
    double l = 0.0;
    double dx = 0.0;

    double x(int i) const { return -l + i * dx; }

    int wavenumber(int i) const { return i <= n / 2 ? i : i - n; }
    double kappa(int i) const { return M_PI * wavenumber(i) / l; }

    /// Storage index of the integer wavevector component k, |k| <= n/2.
    int index_of(int k) const { return k >= 0 ? k : k + n; }

    int size() const { return n * n; }

    bool operator==(const Grid&) const = default;
};

inline bool is_power_of_two(int n) { return n > 0 && (n & (n - 1)) == 0; }

inline Grid make_grid(int n, double l) {
    if (!is_power_of_two(n) || n < 16)
        throw std::invalid_argument("make_grid: n must be a power of two >= 16");
    if (!(l > 0.0))
        throw std::invalid_argument("make_grid: l must be positive");
    return Grid{n, l, 2.0 * l / n};
}

} // namespace sqg
