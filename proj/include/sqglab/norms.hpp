#pragma once

#include <cstdint>

#include "sqglab/evolve.hpp"
#include "sqglab/profile.hpp"

namespace sqg {

/// Ladder + exponents for the weighted-space instrumentation. The continuous
/// sup over R >= R0 is replaced by the geometric ladder R0 * 2^j.
struct NormConfig {
    double r0 = 1.0;
    int ladder = -1;      // -1: auto (fields: R_J <= 0.9 l; profiles: J = 10)
    double p = 2.0;
    double alpha = 0.5;
    std::uint64_t seed = 0x5eed5eedULL; // pair sampling for Holder estimates
    int pairs = 4096;

    NormConfig with_p(double q) const { NormConfig c = *this; c.p = q; return c; }
};

std::vector<double> ladder_radii(const NormConfig& cfg, const Grid* grid);

/// sup over ladder radii of (ball average of |f|^p)^(1/p); node means for
/// fields, exact radial-angular factorization for 0-homogeneous profiles.
double xp_norm(const RealField& f, const NormConfig& cfg);
double xp_norm(const HomogeneousProfile& f, const NormConfig& cfg);
/// Ball averages per ladder radius (radius-independent for profiles).
std::vector<double> xp_ball_averages(const RealField& f, const NormConfig& cfg);

/// As xp_norm with the ball mean subtracted per radius.
double xp_osc_norm(const RealField& f, const NormConfig& cfg);
double xp_osc_norm(const HomogeneousProfile& f, const NormConfig& cfg);

/// Estimator of sup_r r^alpha [f]_{C^alpha(R^2 \ B_r)} by seeded pair
/// sampling; converges from below under refinement.
double ydot_alpha(const RealField& f, const NormConfig& cfg);
double ydot_alpha(const HomogeneousProfile& f, const NormConfig& cfg);

/// The four summands of the composite data norm and their sum. grad_l2weak
/// is the layer-cake Lorentz quasinorm sup_lambda lambda (dx^2 #{|grad f| >
/// lambda})^(1/2).
struct YbbRecord {
    double linf = 0.0;
    double ydot = 0.0;
    double riesz_linf = 0.0;
    double grad_l2weak = 0.0;
    double total = 0.0;
};

YbbRecord ybb_alpha(const RealField& theta0, const NormConfig& cfg);
YbbRecord ybb_alpha(const HomogeneousProfile& theta0, const NormConfig& cfg);

/// Trajectory norms: at = max over snapshots of the X_2 ladder norm;
/// et^2 = sup over ladder R of R^{-2} int_0^T int_{B_R} |Lambda^{1/2} theta|^2.
double at_norm(const Trajectory& traj, double r0 = 1.0);
double et_norm(const Trajectory& traj, double r0 = 1.0);

} // namespace sqg
