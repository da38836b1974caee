#pragma once

#include <vector>

#include "sqglab/field.hpp"

namespace sqg {

/// Element of the signed O(2) action (g.f)(x) = det(g) f(g^{-1} x):
/// a rotation by `angle`, optionally composed with the odd reflection
/// across the x-axis.
struct GroupElement {
    double angle = 0.0;
    bool reflect = false;
};

/// The three symmetry families that fix the Riesz gauge: m-fold rotations,
/// m-fold rotations plus the odd reflection, and full rotational invariance.
/// m >= 2 guarantees the group stabilizes no nonzero vector.
struct SymmetryGroup {
    enum class Kind { rotation, rotation_reflection, radial };

    Kind kind = Kind::rotation;
    int m = 2;

    static SymmetryGroup rotation(int m);
    static SymmetryGroup rotation_reflection(int m);
    static SymmetryGroup radial();

    double base_angle() const { return 2.0 * M_PI / m; }
    bool has_reflection() const { return kind == Kind::rotation_reflection; }

    /// Generators used by asymmetry(); rotation by 2*pi/m (and reflection).
    std::vector<GroupElement> generators() const;
    /// Coset list averaged over by project_symmetric(); for `radial` a
    /// 64-point rotation quadrature.
    std::vector<GroupElement> averaging_list() const;
};

/// Signed action on scalars. Rotations by multiples of pi/2 and the
/// reflection are exact index permutations; other angles use periodic
/// bicubic interpolation.
RealField act(const GroupElement& g, const RealField& f);

/// Signed action on vector fields: (g.v)(x) = det(g) g v(g^{-1} x).
VectorField act(const GroupElement& g, const VectorField& v);

/// Average of act(g, f) over the group's coset list; idempotent up to
/// interpolation error.
RealField project_symmetric(const RealField& f, const SymmetryGroup& G);

/// max over generators of ||f - act(g,f)||_inf / max(||f||_inf, eps).
/// window_radius > 0 restricts the sup to |x| <= window_radius: needed for
/// fields that do not decay inside the box (for those, rotated sample points
/// beyond |x| ~ 0.586 l wrap through the periodic boundary and the global
/// sup stops measuring the symmetry of the underlying plane function).
double asymmetry(const RealField& f, const SymmetryGroup& G, double window_radius = 0.0);

/// Node averages of v over the balls |x| <= R; vanishes for v = Rperp(theta)
/// with G-symmetric theta (the gauge computation behind the drift control).
std::vector<std::array<double, 2>> mean_drift(const VectorField& v,
                                              const std::vector<double>& radii);

} // namespace sqg
