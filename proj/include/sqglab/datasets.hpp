#pragma once

#include <cstdint>

#include "sqglab/profile.hpp"

namespace sqg {

/// Smooth compactly supported bump exp(1 - 1/(1 - r^2)) scaled to `radius`
/// around `center`, amplitude at the center = amplitude.
RealField compact_bump(const Grid& g, double cx, double cy, double radius, double amplitude);

/// Mean-zero radial ring bump supported in r0 +/- width: a crest with a
/// compensating moat so the total integral vanishes (keeps periodic-image
/// velocity leakage at quadrupole order and below).
RealField ring_bump(const Grid& g, double r0, double width, double amplitude);

/// Exactly m-fold symmetric smooth data sampled from a closed form:
/// sums of Re/Im powers of (x1 + i x2)^(m k) under compact radial envelopes.
/// With `reflection` only the reflection-odd (sine) harmonics are kept and
/// the radial component is dropped. ||theta||_inf is normalized to amplitude.
RealField random_symmetric_field(const Grid& g, const SymmetryGroup& G,
                                 std::uint64_t seed, double amplitude,
                                 double support_radius);

/// Smooth periodic random field (low Fourier modes, no symmetry).
RealField random_smooth_field(const Grid& g, std::uint64_t seed, double amplitude,
                              int kmax = 5);

/// Data for the drift-gauge check: symmetric, compactly supported, and for
/// m = 3 with the third radial moment int w(r) r^4 dr cancelled so periodic
/// images do not leak into the ball means at the tested tolerance.
RealField gauge_check_field(const Grid& g, const SymmetryGroup& G, std::uint64_t seed);

/// Random bounded m-fold (optionally reflection-odd) angular profile.
HomogeneousProfile random_symmetric_profile(const SymmetryGroup& G, std::uint64_t seed,
                                            double amplitude, int count = 256);

} // namespace sqg
