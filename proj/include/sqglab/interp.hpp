#pragma once

#include "sqglab/field.hpp"

namespace sqg {

/// Periodic bicubic (Catmull-Rom) interpolation of a nodal field at an
/// arbitrary point of the torus.
inline double interp_bicubic(const RealField& f, double x, double y) {
    const Grid& g = f.grid();
    const int n = g.n;

    auto cubic = [](double p0, double p1, double p2, double p3, double t) {
        return p1 + 0.5 * t * (p2 - p0 +
               t * (2.0 * p0 - 5.0 * p1 + 4.0 * p2 - p3 +
               t * (3.0 * (p1 - p2) + p3 - p0)));
    };

    double u = (x + g.l) / g.dx;
    double v = (y + g.l) / g.dx;
    int i0 = static_cast<int>(std::floor(u));
    int j0 = static_cast<int>(std::floor(v));
    double tu = u - i0;
    double tv = v - j0;

    auto wrap = [n](int i) { return ((i % n) + n) % n; };

    double col[4];
    for (int a = -1; a <= 2; ++a) {
        int i = wrap(i0 + a);
        double p0 = f(i, wrap(j0 - 1));
        double p1 = f(i, wrap(j0));
        double p2 = f(i, wrap(j0 + 1));
        double p3 = f(i, wrap(j0 + 2));
        col[a + 1] = cubic(p0, p1, p2, p3, tv);
    }
    return cubic(col[0], col[1], col[2], col[3], tu);
}

/// Periodic cubic interpolation of uniformly spaced samples over [0, 2*pi).
inline double interp_cubic_periodic(const std::vector<double>& samples, double phi) {
    const int n = static_cast<int>(samples.size());
    const double h = 2.0 * M_PI / n;
    double u = phi / h;
    int i0 = static_cast<int>(std::floor(u));
    double t = u - i0;
    auto wrap = [n](int i) { return ((i % n) + n) % n; };
    double p0 = samples[wrap(i0 - 1)];
    double p1 = samples[wrap(i0)];
    double p2 = samples[wrap(i0 + 1)];
    double p3 = samples[wrap(i0 + 2)];
    return p1 + 0.5 * t * (p2 - p0 +
           t * (2.0 * p0 - 5.0 * p1 + 4.0 * p2 - p3 +
           t * (3.0 * (p1 - p2) + p3 - p0)));
}

} // namespace sqg
