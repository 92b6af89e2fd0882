"""Parallel splitting algorithms for ``0 ∈ Σ A_i x`` and ``x = J_{cΣA_i}(q)``.

All solvers share one driver: each algorithm is written as a generator of
its monitored sequence, and the driver applies the Cauchy stopping rule
``||p_{k+1} - p_k|| < ε`` (or a caller-supplied success test), an iteration
cap and an optional wall-clock timeout. With ``stop_on="governing"`` the
Cauchy rule is applied to the governing sequence (``x``, or ``z`` for
Malitsky-Tam, ``(x, y)`` for Ryu) instead; the shadow sequence can stall
exactly for a few steps while the governing one still moves, e.g. when a
projector clamps to a boundary. Running out of iterations is not an
error; the returned trace simply has ``converged = False``.

Every algorithm monitors its evaluation of the last operator's resolvent:
``p_k`` for Reduced-DR and AAMR, ``z_{r,k}`` for Standard-DR, ``w_k`` for Ryu
and ``x_{r,k}`` for Malitsky-Tam. For constrained problems whose constraint
set is placed last, all monitored points are therefore feasible.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field

import numpy as np

from .lifts import as_blocks, resolvent_B, resolvent_K
from .projections import as_vector

DEFAULT_MAX_ITER = 100_000


@dataclass
class SolverConfig:
    """Step size, relaxation and stopping parameters.

    `lam` is the relaxation parameter λ. λ = 2 (Peaceman-Rachford) is only
    accepted when `uniformly_monotone` is set, asserting that the operator
    merged into K is uniformly monotone. `beta` and `anchor_q` are used by
    AAMR only.
    """

    gamma: float = 1.0
    lam: float = 1.0
    beta: float = 0.5
    epsilon: float = 1e-6
    max_iter: int = DEFAULT_MAX_ITER
    anchor_q: np.ndarray | None = None
    uniformly_monotone: bool = False
    timeout: float | None = None
    record_history: bool = False
    stop_on: str = "shadow"

    def __post_init__(self):
        if not self.gamma > 0:
            raise ValueError("gamma must be positive")
        if not 0 < self.lam <= 2:
            raise ValueError("lam must lie in (0, 2]")
        if not 0 < self.beta < 1:
            raise ValueError("beta must lie in (0, 1)")
        if not self.epsilon > 0:
            raise ValueError("epsilon must be positive")
        if int(self.max_iter) < 1:
            raise ValueError("max_iter must be a positive integer")
        if self.timeout is not None and self.timeout < 0:
            raise ValueError("timeout must be nonnegative")
        if self.stop_on not in ("shadow", "governing"):
            raise ValueError("stop_on must be 'shadow' or 'governing'")


@dataclass
class SolverTrace:
    iterations: int
    residuals: list
    final_p: np.ndarray
    converged: bool
    wall_time: float
    stop_reason: str = ""
    history: list | None = None
    state: dict = field(default_factory=dict)


def stopping_check(p_prev, p_next, epsilon):
    """Cauchy test ``||p_next - p_prev|| < epsilon`` (strict)."""
    p_prev, p_next = as_vector(p_prev), as_vector(p_next)
    if p_prev.shape != p_next.shape:
        raise ValueError("dimension mismatch")
    return bool(np.linalg.norm(p_next - p_prev) < epsilon)


def _drive(iterates, cfg, state, stop_when=None):
    t0 = time.perf_counter()
    residuals = []
    history = [] if cfg.record_history else None
    timeout = cfg.timeout
    governing = cfg.stop_on == "governing"

    def finish(p, converged, reason, elapsed):
        return SolverTrace(
            iterations=len(residuals),
            residuals=residuals,
            final_p=p,
            converged=converged,
            wall_time=elapsed,
            stop_reason=reason,
            history=history,
            state=state,
        )

    # a run that is out of time is never reported as solved, whatever p says
    if timeout is not None and timeout <= 0:
        return finish(None, False, "timeout", time.perf_counter() - t0)
    p_prev = next(iterates)
    if history is not None:
        history.append(p_prev)
    elapsed = time.perf_counter() - t0
    if timeout is not None and elapsed >= timeout:
        return finish(p_prev, False, "timeout", elapsed)
    if stop_when is not None and stop_when(p_prev):
        return finish(p_prev, True, "solved", elapsed)
    g_prev = state["governing"]

    for p in iterates:
        if governing:
            g = state["governing"]
            res = float(np.linalg.norm(g - g_prev))
            g_prev = g
        else:
            res = float(np.linalg.norm(p - p_prev))
        residuals.append(res)
        if history is not None:
            history.append(p)
        elapsed = time.perf_counter() - t0
        if timeout is not None and elapsed >= timeout:
            return finish(p, False, "timeout", elapsed)
        if stop_when is None:
            if res < cfg.epsilon:
                return finish(p, True, "cauchy", elapsed)
        elif stop_when(p):
            return finish(p, True, "solved", elapsed)
        if len(residuals) >= cfg.max_iter:
            return finish(p, False, "max_iter", elapsed)
        p_prev = p
    raise AssertionError("iterate generator ended early")


def _check_lam(cfg, upper, closed, name):
    ok = cfg.lam < upper or (closed and cfg.lam == upper)
    if not ok:
        bracket = "]" if closed else ")"
        raise ValueError(f"{name} needs lam in (0, {upper}{bracket}, got {cfg.lam}")


def _check_dr_lam(cfg, name):
    if cfg.lam == 2 and not cfg.uniformly_monotone:
        raise ValueError(
            f"{name} with lam = 2 requires uniformly_monotone=True "
            "(uniform monotonicity of the operator merged into K)"
        )


# -- Reduced-DR ----------------------------------------------------------------


def _reduced_dr_iterates(lift, cfg, x, state):
    gamma, lam = cfg.gamma, cfg.lam
    while True:
        p = resolvent_K(lift, gamma, x)
        state["x"] = state["governing"] = x
        yield p[0]
        z = resolvent_B(lift, gamma, 2 * p - x)
        state["z"] = z
        x = x + lam * (z - p)


def reduced_dr_run(lift, cfg, x0, stop_when=None):
    """Douglas-Rachford on the reduced lift, in ``H^{r-1}``.

    Each iteration evaluates ``p = J_{γ/(r-1)A_r}(mean x_i)``, then
    ``z_i = J_{γA_i}(2p - x_i)`` and ``x_i += λ (z_i - p)``.

    Parameters
    ----------
    lift : ReducedLift
    cfg : SolverConfig
    x0 : array_like, shape (r-1, n)
    stop_when : callable, optional
        Success test on the monitored point. When given it replaces the
        Cauchy rule (used for nonconvex feasibility, e.g. Sudoku).
    """
    x0 = as_blocks(x0, "x0")
    if x0.shape[0] != lift.r - 1:
        raise ValueError(f"x0 must have {lift.r - 1} blocks, got {x0.shape[0]}")
    _check_dr_lam(cfg, "reduced_dr_run")
    state = {}
    return _drive(_reduced_dr_iterates(lift, cfg, x0, state), cfg, state, stop_when)


def dr_fixed_point_residual(lift, gamma, x):
    """``||J_B(2 J_K x - x) - J_K x||``, zero exactly at Reduced-DR fixed points."""
    x = as_blocks(x)
    p = resolvent_K(lift, gamma, x)
    z = resolvent_B(lift, gamma, 2 * p - x)
    return float(np.linalg.norm(z - p))


# -- Standard-DR ---------------------------------------------------------------


def _standard_dr_iterates(lift, cfg, x, state):
    gamma, lam = cfg.gamma, cfg.lam
    ops = lift.operators
    while True:
        p = x.mean(axis=0)
        z = np.stack([a.resolvent(2 * p - xi, gamma) for a, xi in zip(ops, x)])
        state.update(x=x, z=z, p=p, governing=x)
        yield z[-1]
        x = x + lam * (z - p)


def standard_dr_run(lift, cfg, x0, stop_when=None):
    """Douglas-Rachford on the standard lift ``A + N_D`` in ``H^r``.

    ``p = mean(x_i)``, ``z_i = J_{γA_i}(2p - x_i)``, ``x_i += λ (z_i - p)``;
    the monitored point is ``z_r``.
    """
    x0 = as_blocks(x0, "x0")
    if x0.shape[0] != lift.r:
        raise ValueError(f"x0 must have {lift.r} blocks, got {x0.shape[0]}")
    _check_dr_lam(cfg, "standard_dr_run")
    state = {}
    return _drive(_standard_dr_iterates(lift, cfg, x0, state), cfg, state, stop_when)


# -- Ryu -----------------------------------------------------------------------


def _ryu_iterates(ops, cfg, x, y, state):
    a, b, c = ops
    gamma, lam = cfg.gamma, cfg.lam
    while True:
        u = a.resolvent(x, gamma)
        v = b.resolvent(u + y, gamma)
        w = c.resolvent(u - x + v - y, gamma)
        state.update(x=x, y=y, governing=np.stack([x, y]))
        yield w
        x = x + lam * (w - u)
        y = y + lam * (w - v)


def ryu_run(operators, cfg, x0, y0, stop_when=None):
    """Ryu's three-operator splitting in ``H^2``.

    The convergence theory asks for λ in (0, 1); λ = 1 is also accepted
    since that is where the method tends to do best in practice.
    """
    operators = tuple(operators)
    if len(operators) != 3:
        raise ValueError(f"Ryu splitting needs exactly 3 operators, got {len(operators)}")
    _check_lam(cfg, 1, True, "ryu_run")
    x0, y0 = as_vector(x0, "x0"), as_vector(y0, "y0")
    state = {}
    return _drive(_ryu_iterates(operators, cfg, x0, y0, state), cfg, state, stop_when)


# -- Malitsky-Tam --------------------------------------------------------------


def _mt_iterates(ops, cfg, z, state):
    gamma, lam = cfg.gamma, cfg.lam
    r = len(ops)
    xs = np.empty((r, z.shape[1]))
    while True:
        xs = xs.copy()
        xs[0] = ops[0].resolvent(z[0], gamma)
        for i in range(1, r - 1):
            xs[i] = ops[i].resolvent(z[i] - z[i - 1] + xs[i - 1], gamma)
        xs[r - 1] = ops[r - 1].resolvent(xs[0] + xs[r - 2] - z[r - 2], gamma)
        state.update(z=z, x=xs, governing=z)
        yield xs[r - 1]
        z = z + lam * (xs[1:] - xs[:-1])


def malitsky_tam_run(operators, cfg, z0, stop_when=None):
    """Malitsky-Tam frugal splitting with minimal ``(r-1)``-fold lifting."""
    operators = tuple(operators)
    if len(operators) < 2:
        raise ValueError("need at least two operators")
    z0 = as_blocks(z0, "z0")
    if z0.shape[0] != len(operators) - 1:
        raise ValueError(f"z0 must have {len(operators) - 1} blocks, got {z0.shape[0]}")
    _check_lam(cfg, 1, False, "malitsky_tam_run")
    state = {}
    return _drive(_mt_iterates(operators, cfg, z0, state), cfg, state, stop_when)


# -- AAMR ----------------------------------------------------------------------


def _aamr_iterates(lift, cfg, x, q, state):
    gamma, lam, beta = cfg.gamma, cfg.lam, cfg.beta
    qb = np.broadcast_to(q, x.shape)
    while True:
        p = resolvent_K(lift, gamma, beta * x + (1 - beta) * qb)
        state["x"] = state["governing"] = x
        yield p[0]
        z = resolvent_B(lift, gamma, beta * (2 * p - x) + (1 - beta) * qb)
        state["z"] = z
        x = x + lam * (z - p)


def aamr_run(lift, cfg, x0, stop_when=None):
    """Averaged alternating modified reflections on the reduced lift.

    ``p_k`` tends to ``J_{c Σ A_i}(q)`` with ``c = γ / (2 (1-β) (r-1))``, i.e.
    the point `resolvent_sum_reduced` returns for step ``γ / (2 (1-β))``.
    For normal cones to convex sets (under strong CHIP) that is the
    projection of `q` onto the intersection.
    """
    if cfg.anchor_q is None:
        raise ValueError("aamr_run needs cfg.anchor_q")
    x0 = as_blocks(x0, "x0")
    if x0.shape[0] != lift.r - 1:
        raise ValueError(f"x0 must have {lift.r - 1} blocks, got {x0.shape[0]}")
    q = as_vector(cfg.anchor_q, "anchor_q")
    if q.size != x0.shape[1]:
        raise ValueError("anchor_q dimension does not match x0 blocks")
    state = {}
    return _drive(_aamr_iterates(lift, cfg, x0, q, state), cfg, state, stop_when)
