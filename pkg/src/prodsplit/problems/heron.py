"""Generalized Heron problem: a point of a ball minimising the summed distance to cubes.

    minimise  Σ_{i<r} d_{Ω_i}(x)   subject to  x ∈ Ω_r

Ω_1..Ω_{r-1} are cubes of side √2 and Ω_r is the ball of radius 10 about the
origin. Cube centers are drawn along a uniformly random direction with norm
uniform in `norm_range` (default [12, 200]), and redrawn until the cube misses
the ball. In high dimension a norm of 12 alone does not keep a cube of
half-diagonal √n/√2 away from the ball, hence the explicit distance test.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..projections import BallSet, BoxSet, as_vector
from ..resolvents import DistanceSubdifferential, NormalCone

HALF_SIDE = np.sqrt(2) / 2
BALL_RADIUS = 10.0
CENTER_NORM_RANGE = (12.0, 200.0)


@dataclass(frozen=True)
class HeronInstance:
    centers: np.ndarray
    seed: int | None = None
    half_side: float = HALF_SIDE
    ball_radius: float = BALL_RADIUS

    @property
    def dim(self):
        return self.centers.shape[1]

    @property
    def r(self):
        return self.centers.shape[0] + 1

    @property
    def cubes(self):
        return [BoxSet.cube(c, self.half_side) for c in self.centers]

    @property
    def ball(self):
        return BallSet(np.zeros(self.dim), self.ball_radius)


def generate_heron(seed, n, r, norm_range=CENTER_NORM_RANGE):
    """Random instance in R^n with r-1 cubes; deterministic in `seed`."""
    if n < 1 or r < 3:
        raise ValueError("need n >= 1 and r >= 3")
    lo, hi = norm_range
    if not 12 <= lo <= hi:
        raise ValueError("norm_range must satisfy 12 <= low <= high")
    rng = np.random.default_rng(seed)
    centers = []
    while len(centers) < r - 1:
        u = rng.standard_normal(n)
        nu = np.linalg.norm(u)
        if nu == 0:
            continue
        c = u / nu * rng.uniform(lo, hi)
        # distance from the origin to the cube
        if np.linalg.norm(np.maximum(np.abs(c) - HALF_SIDE, 0.0)) > BALL_RADIUS:
            centers.append(c)
    return HeronInstance(np.array(centers), seed=seed)


def heron_objective(inst, x):
    """Sum of distances from `x` to the cubes."""
    x = as_vector(x)
    if x.size != inst.dim:
        raise ValueError(f"dimension mismatch: expected {inst.dim}, got {x.size}")
    return float(sum(cube.distance(x) for cube in inst.cubes))


def heron_operators(inst):
    """``[∂d_{Ω_1}, ..., ∂d_{Ω_{r-1}}, N_{Ω_r}]``; the ball comes last."""
    return [DistanceSubdifferential(c) for c in inst.cubes] + [NormalCone(inst.ball)]
