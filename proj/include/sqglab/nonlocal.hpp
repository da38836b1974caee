#pragma once

#include <array>
#include <functional>

#include "sqglab/field.hpp"
#include "sqglab/profile.hpp"
#include "sqglab/transform.hpp"

namespace sqg {

/// Lambda^s = (-Delta)^{s/2}: coefficient-wise |kappa|^s, zero mode -> 0.
SpectralField fractional_laplacian(const SpectralField& F, double s);

/// v = Rperp(theta) = (-d2, d1)(-Delta)^{-1/2} theta: multipliers
/// (-i kappa2/|kappa|, +i kappa1/|kappa|). The zero mode of both components
/// is set to 0 -- the symmetric-gauge representative (ball means of the
/// velocity vanish for symmetric data, and the torus analogue of that is a
/// zero mean mode).
VectorField riesz_perp(const SpectralField& F);
/// Same gauge, coefficients only (saves transforms inside solvers).
void riesz_perp_spectral(const SpectralField& F, SpectralField& V1, SpectralField& V2);

/// Poisson semigroup e^{-t Lambda}: multiplication by exp(-t|kappa|).
SpectralField poisson_semigroup(const SpectralField& F, double t);

/// Quadrature controls for the non-decaying (modified) Riesz transform.
struct ModifiedRieszConfig {
    int truncation_exponent = 12; // integrate |y - x| up to 2^J
    int angular_points = 256;     // even; paired quadrature handles the pv
    double near_step = 1.0 / 96.0;   // radial step of the near region
    double geometric_ratio = 1.025;  // radial mesh ratio in the far region
    ModifiedRieszConfig doubled() const {
        return {truncation_exponent, angular_points * 2, near_step / 2.0,
                std::sqrt(geometric_ratio)};
    }
};

/// The Riesz transform extension valid on non-decaying data:
///   Rf(x) = R(1_{B1} f)(x) + pv int [K(x,y) - K(0,y)] (1_{R^2 \ B1} f)(y) dy,
/// K(y) = c2 * y/|y|^3. Evaluated by paired polar quadrature around x with
/// the counterterm carried on the same mesh so the large-|y| cancellation
/// survives truncation; the neglected tail is O(|x| 2^-J). c2 is pinned by
/// cross-validation against the periodic multiplier (see tests), not quoted.
std::array<double, 2> modified_riesz(const std::function<double(double, double)>& f,
                                     double x1, double x2,
                                     const ModifiedRieszConfig& cfg = {});

std::array<double, 2> modified_riesz(const HomogeneousProfile& f,
                                     double x1, double x2,
                                     const ModifiedRieszConfig& cfg = {});

/// Both components of Rf sampled on the circle |x| = radius, returned as
/// profiles (for symmetric 0-homogeneous f the gauge-fixed Rf is again
/// 0-homogeneous).
std::array<HomogeneousProfile, 2> modified_riesz_profile(const HomogeneousProfile& f,
                                                         int eval_count = 64,
                                                         double radius = 1.0,
                                                         const ModifiedRieszConfig& cfg = {});

/// Dyadic restriction masks: core = 1_{B(2)} f, block j = (1_{B(2^j)} - 1_{B(2^{j-1})}) f.
struct DyadicDecomposition {
    RealField core;                            // P_{<=1}
    std::vector<std::pair<int, RealField>> blocks; // (j, P_j f), j = 2..J
};

DyadicDecomposition dyadic_blocks(const RealField& f, int J);

/// Pointwise gap of the power inequality
///   q |theta|^{q-2} theta Lambda(theta) >= 2 |theta|^{q/2} Lambda(|theta|^{q/2});
/// returns g = lhs - rhs. Powers of non-smooth |theta| are spectrally
/// filtered at the 2/3 cutoff before Lambda is applied.
RealField ju_gap(const RealField& theta, double q);

} // namespace sqg
