"""Product-space lifts of an r-operator inclusion ``0 ∈ A_1 x + ... + A_r x``.

A block vector is a 2-D array of shape ``(blocks, dim)``; row i is the i-th
copy of the base space.

`StandardLift` works in ``H^r`` with the diagonal as second operator.
`ReducedLift` works in ``H^{r-1}``: the first r-1 operators act blockwise
(the operator ``B``) while the last one is merged with the normal cone of
the diagonal (the operator ``K``). Which operator plays the last role is the
caller's choice; nothing is reordered here.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .resolvents import AffineOperator, ResolventOperator, ZeroOperator


def as_blocks(x, name="x"):
    x = np.asarray(x, dtype=float)
    if x.ndim == 1:
        x = x.reshape(-1, 1)
    if x.ndim != 2 or x.shape[0] < 1:
        raise ValueError(f"{name} must be a nonempty 2-D block array")
    if not np.all(np.isfinite(x)):
        raise ValueError(f"{name} contains NaN or Inf")
    return x


def embed_diagonal(p, blocks):
    """``j_m(p) = (p, ..., p)`` with m = `blocks`."""
    p = np.asarray(p, dtype=float).reshape(-1)
    return np.tile(p, (blocks, 1))


def diagonal_project(x):
    """Replace every block by the mean of all blocks."""
    x = as_blocks(x)
    return embed_diagonal(x.mean(axis=0), x.shape[0])


@dataclass(frozen=True)
class StandardLift:
    operators: tuple

    def __post_init__(self):
        ops = tuple(self.operators)
        if not ops or not all(isinstance(a, ResolventOperator) for a in ops):
            raise TypeError("operators must be a nonempty sequence of ResolventOperator")
        object.__setattr__(self, "operators", ops)

    @property
    def r(self):
        return len(self.operators)


@dataclass(frozen=True)
class ReducedLift:
    """Operators ``A_1, ..., A_{r-1}`` in `b_operators` and ``A_r`` in `k_operator`."""

    b_operators: tuple
    k_operator: ResolventOperator

    def __post_init__(self):
        ops = tuple(self.b_operators)
        if not ops or not all(isinstance(a, ResolventOperator) for a in ops):
            raise TypeError("b_operators must be a nonempty sequence of ResolventOperator")
        if not isinstance(self.k_operator, ResolventOperator):
            raise TypeError("k_operator must be a ResolventOperator")
        object.__setattr__(self, "b_operators", ops)

    @classmethod
    def from_operators(cls, operators):
        """Build from ``[A_1, ..., A_r]``; the last one goes into K."""
        operators = list(operators)
        if len(operators) < 2:
            raise ValueError("need at least two operators")
        return cls(tuple(operators[:-1]), operators[-1])

    @property
    def r(self):
        return len(self.b_operators) + 1

    @property
    def operators(self):
        return (*self.b_operators, self.k_operator)


def _blockwise(ops, gamma, x):
    x = as_blocks(x)
    if x.shape[0] != len(ops):
        raise ValueError(f"expected {len(ops)} blocks, got {x.shape[0]}")
    return np.stack([a.resolvent(xi, gamma) for a, xi in zip(ops, x)])


def standard_lift_resolvent(lift, gamma, x):
    """``J_{γA}`` for the product operator: block i gets ``J_{γA_i}``."""
    return _blockwise(lift.operators, gamma, x)


def resolvent_B(lift, gamma, x):
    return _blockwise(lift.b_operators, gamma, x)


def k_anchor(x):
    """The point ``(1/(r-1)) Σ x_i`` at which ``J_{γK}`` evaluates ``A_r``."""
    return as_blocks(x).mean(axis=0)


def resolvent_K(lift, gamma, x):
    """``J_{γK}(x) = j_{r-1}(J_{γ/(r-1) A_r}(mean of blocks))``; always diagonal."""
    x = as_blocks(x)
    m = lift.r - 1
    if x.shape[0] != m:
        raise ValueError(f"expected {m} blocks, got {x.shape[0]}")
    p = lift.k_operator.resolvent(x.mean(axis=0), gamma / m)
    return embed_diagonal(p, m)


def project_K_nonconvex(c_r, x):
    """Every point of ``P_K(x)`` for ``K = {(c, ..., c) : c ∈ C_r}``.

    `c_r` is a set with ``project`` (and ``project_all`` when it can be
    multi-valued, e.g. a `FinitePointSet`). Returns a list of block arrays.
    """
    x = as_blocks(x)
    y = x.mean(axis=0)
    near = c_r.project_all(y) if hasattr(c_r, "project_all") else [c_r.project(y)]
    return [embed_diagonal(p, x.shape[0]) for p in near]


def _affine_parts(a, dim):
    if isinstance(a, AffineOperator):
        return a.matrix, a.offset
    if isinstance(a, ZeroOperator):
        return np.zeros((dim, dim)), np.zeros(dim)
    raise TypeError(f"resolvent of the sum needs affine operators, got {type(a).__name__}")


def resolvent_sum_reduced(lift, gamma, x):
    """``J_{(γ/(r-1)) Σ A_i}(x)`` by a direct linear solve (affine operators only).

    This is the base-space point whose diagonal embedding is
    ``J_{γ(B+K)}(j_{r-1}(x))``.
    """
    x = np.asarray(x, dtype=float).reshape(-1)
    n = x.size
    s = gamma / (lift.r - 1)
    m_sum = np.zeros((n, n))
    b_sum = np.zeros(n)
    for a in lift.operators:
        m, b = _affine_parts(a, n)
        m_sum += m
        b_sum += b
    lhs = np.eye(n) + s * m_sum
    if np.linalg.cond(lhs) > 1e14:
        raise np.linalg.LinAlgError("singular system: the operators are not monotone")
    return np.linalg.solve(lhs, x - s * b_sum)
