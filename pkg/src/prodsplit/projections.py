"""Projectors onto the simple sets used by the benchmark problems.

Vectors are 1-D float64 numpy arrays. Every public projector rejects
non-finite input instead of propagating it.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np


def as_vector(x, name="x"):
    """Return `x` as a finite 1-D float array (a copy is not guaranteed)."""
    x = np.asarray(x, dtype=float)
    if x.ndim == 0:
        x = x.reshape(1)
    if not np.all(np.isfinite(x)):
        raise ValueError(f"{name} contains NaN or Inf")
    return x


def _check_dim(x, dim):
    if x.shape[-1] != dim:
        raise ValueError(f"dimension mismatch: expected {dim}, got {x.shape[-1]}")


@dataclass(frozen=True)
class BoxSet:
    """Axis-aligned box ``{x : lower <= x <= upper}``."""

    lower: np.ndarray
    upper: np.ndarray

    def __post_init__(self):
        lower = as_vector(self.lower, "lower")
        upper = as_vector(self.upper, "upper")
        if lower.shape != upper.shape:
            raise ValueError("lower and upper must have the same dimension")
        if np.any(lower > upper):
            raise ValueError("lower must not exceed upper")
        object.__setattr__(self, "lower", lower)
        object.__setattr__(self, "upper", upper)

    @classmethod
    def cube(cls, center, half_side):
        center = as_vector(center, "center")
        return cls(center - half_side, center + half_side)

    @property
    def dim(self):
        return self.lower.size

    def project(self, x):
        return project_box(self, x)

    def distance(self, x):
        return float(np.linalg.norm(x - project_box(self, x)))


@dataclass(frozen=True)
class BallSet:
    """Closed Euclidean ball."""

    center: np.ndarray
    radius: float

    def __post_init__(self):
        object.__setattr__(self, "center", as_vector(self.center, "center"))
        if not np.isfinite(self.radius) or self.radius < 0:
            raise ValueError("radius must be finite and nonnegative")

    @property
    def dim(self):
        return self.center.size

    def project(self, x):
        return project_ball(self, x)

    def distance(self, x):
        return float(np.linalg.norm(x - project_ball(self, x)))


@dataclass(frozen=True)
class FinitePointSet:
    """A finite (hence nonconvex, proximinal) set of points.

    Stored order matters: it fixes the single-valued selection used when
    several points are equally close.
    """

    points: np.ndarray

    def __post_init__(self):
        pts = np.asarray(self.points, dtype=float)
        if pts.ndim == 1:
            pts = pts.reshape(-1, 1)
        if pts.ndim != 2 or pts.shape[0] == 0:
            raise ValueError("points must be a nonempty list of equal-dimension vectors")
        if not np.all(np.isfinite(pts)):
            raise ValueError("points contain NaN or Inf")
        object.__setattr__(self, "points", pts)

    @property
    def dim(self):
        return self.points.shape[1]

    def project(self, x):
        return project_finite_set(self, x)[0]

    def project_all(self, x):
        return project_finite_set(self, x)

    def distance(self, x):
        x = as_vector(x)
        return float(np.min(np.linalg.norm(self.points - x, axis=1)))


@dataclass(frozen=True)
class AffineFixSet:
    """Entries of a tensor-shaped vector pinned to prescribed values.

    `fixed_values` maps index tuples of `shape` to reals. The set is the affine
    subspace of all tensors agreeing with those entries.
    """

    shape: tuple
    fixed_values: dict = field(default_factory=dict)

    def __post_init__(self):
        shape = tuple(int(s) for s in self.shape)
        flat, vals = [], []
        for idx, v in self.fixed_values.items():
            idx = tuple(int(i) for i in np.atleast_1d(idx))
            if len(idx) != len(shape) or any(not 0 <= i < s for i, s in zip(idx, shape)):
                raise IndexError(f"index {idx} out of range for shape {shape}")
            if not np.isfinite(v):
                raise ValueError(f"value at {idx} is not finite")
            flat.append(np.ravel_multi_index(idx, shape))
            vals.append(float(v))
        object.__setattr__(self, "shape", shape)
        object.__setattr__(self, "_flat", np.asarray(flat, dtype=np.intp))
        object.__setattr__(self, "_vals", np.asarray(vals, dtype=float))

    @property
    def dim(self):
        return int(np.prod(self.shape))

    def project(self, x):
        return project_affine_fix(self, x)


@dataclass(frozen=True)
class AffineSubspace:
    """Closed affine subspace ``point + span(directions)``.

    `directions` holds spanning vectors as columns; they are orthonormalised
    on construction.
    """

    point: np.ndarray
    directions: np.ndarray

    def __post_init__(self):
        point = as_vector(self.point, "point")
        d = np.asarray(self.directions, dtype=float).reshape(point.size, -1)
        if d.shape[1]:
            q, r = np.linalg.qr(d)
            q = q[:, np.abs(np.diag(r)) > 1e-12]
        else:
            q = d
        object.__setattr__(self, "point", point)
        object.__setattr__(self, "directions", q)

    @classmethod
    def whole_space(cls, dim):
        return cls(np.zeros(dim), np.eye(dim))

    @classmethod
    def diagonal(cls, blocks, block_dim=1):
        """The diagonal ``{(x, ..., x)}`` of the `blocks`-fold product of R^block_dim.

        Projects by the block mean, so ties such as ``(2, 1) -> (1.5, 1.5)``
        are exact rather than subject to QR rounding.
        """
        return DiagonalSubspace(
            np.zeros(blocks * block_dim), np.tile(np.eye(block_dim), (blocks, 1)), block_dim
        )

    @property
    def dim(self):
        return self.point.size

    def project(self, x):
        x = as_vector(x)
        _check_dim(x, self.dim)
        u = self.directions
        return self.point + u @ (u.T @ (x - self.point))

    def contains(self, x, tol=1e-12):
        x = as_vector(x)
        return bool(np.linalg.norm(self.project(x) - x) <= tol * max(1.0, np.linalg.norm(x)))


@dataclass(frozen=True)
class DiagonalSubspace(AffineSubspace):
    block_dim: int = 1

    def project(self, x):
        x = as_vector(x)
        _check_dim(x, self.dim)
        blocks = x.reshape(-1, self.block_dim)
        return np.tile(blocks.mean(axis=0), blocks.shape[0])


def project_box(b, x):
    """Clamp `x` componentwise to the box `b`."""
    x = as_vector(x)
    _check_dim(x, b.dim)
    return np.minimum(np.maximum(x, b.lower), b.upper)


def project_ball(b, x):
    """Project `x` onto the closed ball `b`: radial scaling when outside."""
    x = as_vector(x)
    _check_dim(x, b.dim)
    d = x - b.center
    nd = np.linalg.norm(d)
    if nd <= b.radius:
        return x.copy()
    return b.center + (b.radius / nd) * d


def project_finite_set(s, x):
    """All nearest points of `s` to `x`, in stored order.

    Returns a list of arrays; the first entry is the canonical single-valued
    selection.
    """
    x = as_vector(x)
    _check_dim(x, s.dim)
    d2 = np.sum((s.points - x) ** 2, axis=1)
    best = d2.min()
    return [s.points[i].copy() for i in np.flatnonzero(d2 == best)]


def project_affine_fix(a, x):
    """Overwrite the prescribed entries of `x`; everything else is copied."""
    x = as_vector(x)
    if x.size != a.dim:
        raise ValueError(f"dimension mismatch: expected {a.dim}, got {x.size}")
    out = x.copy()
    out[a._flat] = a._vals
    return out


def project_basis_set(v):
    """Nearest standard basis vector of R^9 to `v`.

    ``||v - e_k||^2 = ||v||^2 - 2 v_k + 1``, so this is the one-hot of the
    largest entry; ties go to the lowest index.
    """
    v = as_vector(v, "v")
    if v.size != 9:
        raise ValueError(f"expected a vector of dimension 9, got {v.size}")
    out = np.zeros(9)
    out[np.argmax(v)] = 1.0
    return out


def onehot_argmax(a, axis):
    """`project_basis_set` applied along `axis` of an array, all fibers at once."""
    idx = np.expand_dims(np.argmax(a, axis=axis), axis)
    out = np.zeros_like(a, dtype=float)
    np.put_along_axis(out, idx, 1.0, axis=axis)
    return out


@dataclass
class CompositionCheck:
    direct: list
    composed: list
    hypothesis_holds: bool

    @property
    def agree(self):
        return _same_point_sets(self.direct, self.composed)


def _same_point_sets(a, b, tol=1e-12):
    if len(a) != len(b):
        return False
    return all(any(np.allclose(p, q, rtol=0, atol=tol) for q in b) for p in a)


def projection_composition_check(c, d, x):
    """Compare ``P_{C∩D}(x)`` with ``P_C(P_D(x)) ∩ D``.

    The left side is computed by brute force, so `c` must be a
    `FinitePointSet` unless `d` is the whole space (in which case both sides
    reduce to ``P_C(x)`` and `c` only needs a ``project`` method).

    The two sides agree whenever ``P_C(P_D(x))`` meets `d`;
    `hypothesis_holds` reports whether that was the case for this `x`.
    """
    x = as_vector(x)
    y = d.project(x)
    near = c.project_all(y) if hasattr(c, "project_all") else [c.project(y)]
    composed = [p for p in near if d.contains(p)]
    hypothesis = len(composed) > 0

    if isinstance(c, FinitePointSet):
        inside = [p for p in c.points if d.contains(p)]
        if inside:
            dist = np.array([np.sum((p - x) ** 2) for p in inside])
            direct = [inside[i].copy() for i in np.flatnonzero(dist == dist.min())]
        else:
            direct = []
    elif d.directions.shape[1] == d.dim:
        direct = [c.project(x)]
    else:
        raise ValueError("brute-force projection onto C∩D needs a finite C or D = whole space")
    return CompositionCheck(direct, composed, hypothesis)
