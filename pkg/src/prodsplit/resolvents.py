"""Resolvent handles ``J_{γA} = (Id + γA)^{-1}`` for the operators in use.

Each operator exposes ``resolvent(x, gamma)`` returning one point of
``J_{γA}(x)``. Operators backed by a finite set additionally expose
``resolvent_all`` returning every point.
"""

from __future__ import annotations

import abc

import numpy as np

from .projections import as_vector


class ResolventOperator(abc.ABC):
    """A (maximally monotone) operator known only through its resolvent."""

    @abc.abstractmethod
    def resolvent(self, x, gamma):
        """One point of ``J_{γA}(x)``."""

    def resolvent_all(self, x, gamma):
        """Every point of ``J_{γA}(x)``; single-valued operators return one."""
        return [self.resolvent(x, gamma)]

    def __call__(self, x, gamma):
        return self.resolvent(x, gamma)


def _check_gamma(gamma):
    if not gamma > 0:
        raise ValueError(f"gamma must be positive, got {gamma}")


class ZeroOperator(ResolventOperator):
    """``A = 0``, whose resolvent is the identity."""

    def resolvent(self, x, gamma):
        _check_gamma(gamma)
        return as_vector(x).copy()


class NormalCone(ResolventOperator):
    """Normal cone to a set: its resolvent is the projector for every γ.

    For a nonconvex (proximinal) set this is the usual abuse of notation
    in projection methods; `resolvent` returns the canonical nearest point.
    """

    def __init__(self, s):
        self.set = s

    def resolvent(self, x, gamma):
        _check_gamma(gamma)
        return self.set.project(x)

    def resolvent_all(self, x, gamma):
        _check_gamma(gamma)
        if hasattr(self.set, "project_all"):
            return self.set.project_all(x)
        return [self.set.project(x)]

    def __repr__(self):
        return f"NormalCone({self.set!r})"


def prox_distance(project, gamma, x):
    """Proximity operator of ``γ d_C`` for a closed convex set C.

    Parameters
    ----------
    project : callable
        The projector onto C (single-valued).
    gamma : float
        Positive step.
    x : array_like
        Point to evaluate at.

    Notes
    -----
    Moves `x` a distance γ towards ``P_C(x)`` when ``d_C(x) > γ`` and lands
    on ``P_C(x)`` otherwise. Both branches agree when ``d_C(x) = γ``.
    """
    _check_gamma(gamma)
    x = as_vector(x)
    p = project(x)
    d = np.linalg.norm(p - x)
    if d > gamma:
        return x + (gamma / d) * (p - x)
    return p


class DistanceSubdifferential(ResolventOperator):
    """``∂d_C`` for a closed convex set C; resolvent = ``prox_{γ d_C}``."""

    def __init__(self, s):
        self.set = s

    def resolvent(self, x, gamma):
        return prox_distance(self.set.project, gamma, x)

    def __repr__(self):
        return f"DistanceSubdifferential({self.set!r})"


class AffineOperator(ResolventOperator):
    """``A(x) = M x + b`` with M positive semidefinite (not necessarily symmetric).

    Monotone whenever ``M + M^T`` is PSD, so ``Id + γM`` is invertible for
    every γ > 0.
    """

    def __init__(self, matrix, offset=None):
        m = np.atleast_2d(np.asarray(matrix, dtype=float))
        if m.shape[0] != m.shape[1]:
            raise ValueError("matrix must be square")
        self.matrix = m
        self.offset = np.zeros(m.shape[0]) if offset is None else as_vector(offset, "offset")
        if self.offset.size != m.shape[0]:
            raise ValueError("offset dimension does not match matrix")

    @property
    def dim(self):
        return self.matrix.shape[0]

    def apply(self, x):
        return self.matrix @ as_vector(x) + self.offset

    def resolvent(self, x, gamma):
        _check_gamma(gamma)
        x = as_vector(x)
        lhs = np.eye(self.dim) + gamma * self.matrix
        return np.linalg.solve(lhs, x - gamma * self.offset)
