#pragma once

#include <string>

#include "sqglab/evolve.hpp"

namespace sqg {

/// Snapshot format: ASCII header `SQGF1 n=<N> l=<L> t=<t>\n` followed by
/// N*N little-endian IEEE-754 doubles, row-major. Round trips bit-exactly.
void write_snapshot(const RealField& f, double t, const std::string& path);

struct Snapshot {
    RealField field;
    double t = 0.0;
};

Snapshot read_snapshot(const std::string& path);

/// diagnostics.csv with the fixed column set:
/// step,t,linf,grad_linf,t_grad_linf,energy,dissipation,energy_residual,
/// mean_drift_R1..R4,psi_p4,max_principle_margin,asymmetry
void write_diagnostics_csv(const Trajectory& traj, const std::string& path);

} // namespace sqg
