"""Parallel splitting algorithms on a reduced-dimension product space."""

from .lifts import (
    ReducedLift,
    StandardLift,
    diagonal_project,
    embed_diagonal,
    project_K_nonconvex,
    resolvent_B,
    resolvent_K,
    resolvent_sum_reduced,
    standard_lift_resolvent,
)
from .projections import (
    AffineFixSet,
    AffineSubspace,
    BallSet,
    BoxSet,
    FinitePointSet,
    project_affine_fix,
    project_ball,
    project_basis_set,
    project_box,
    project_finite_set,
    projection_composition_check,
)
from .resolvents import (
    AffineOperator,
    DistanceSubdifferential,
    NormalCone,
    ResolventOperator,
    ZeroOperator,
    prox_distance,
)
from .solvers import (
    SolverConfig,
    SolverTrace,
    aamr_run,
    dr_fixed_point_residual,
    malitsky_tam_run,
    reduced_dr_run,
    ryu_run,
    standard_dr_run,
    stopping_check,
)

__version__ = "0.1.0"
