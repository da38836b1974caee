"""Pseudo-spectral laboratory for the critical surface quasi-geostrophic
equation with symmetry-fixed Riesz gauge."""

from ._sqglab import (  # noqa: F401
    Grid,
    HomogeneousProfile,
    Profile,
    RealField,
    StepDiagnostics,
    SymmetryGroup,
    Trajectory,
    act_reflection,
    act_rotation,
    asymmetry,
    compact_bump,
    dealias,
    gradient,
    half_laplacian,
    ju_gap,
    poisson_semigroup,
    project_symmetric,
    random_symmetric_field,
    rasterize,
    read_snapshot,
    riesz_perp,
    ring_bump,
    run_checks,
    simulate,
    solve_profile,
    spectral_roundtrip,
    write_snapshot,
    xp_norm,
    xp_norm_profile,
)

__all__ = [name for name in dir() if not name.startswith("_")]
__version__ = "0.1.0"
