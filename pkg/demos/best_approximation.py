"""Best approximation with AAMR on the reduced lift.

AAMR anchors each step to a point q. For normal cones its shadow sequence
converges to the projection of q onto the intersection of the sets, here
[0.5, 2] ∩ [1.5, 2] ∩ [1, 3] = [1.5, 2], so from q = 0 the limit is 1.5.
For affine operators the limit is a resolvent of the sum, which we can also
get from a linear solve.

Run with ``python3 demos/best_approximation.py``.
"""

import numpy as np

from prodsplit import BoxSet, ReducedLift, SolverConfig, aamr_run, resolvent_sum_reduced
from prodsplit.resolvents import AffineOperator, NormalCone


def interval(a, b):
    return NormalCone(BoxSet([a], [b]))


lift = ReducedLift.from_operators([interval(0.5, 2.0), interval(1.5, 2.0), interval(1.0, 3.0)])
cfg = SolverConfig(gamma=1.0, lam=1.0, beta=0.5, anchor_q=np.zeros(1), epsilon=1e-10,
                   stop_on="governing")
trace = aamr_run(lift, cfg, np.zeros((2, 1)))
print(f"intervals: limit {trace.final_p[0]:.8f} after {trace.iterations} iterations")

# The shadow p stays at 1 for the first few steps while x moves, so a Cauchy
# test on p alone would stop too early; stop_on="governing" watches x instead.
early = aamr_run(lift, SolverConfig(anchor_q=np.zeros(1), epsilon=1e-10), np.zeros((2, 1)))
print(f"shadow-only stopping: {early.final_p[0]} after {early.iterations} iteration(s)")

# Affine operators: compare with the direct solve of (I + c Σ M_i) p = q - c Σ b_i.
rng = np.random.default_rng(1)
ops = []
for _ in range(4):
    g = rng.normal(size=(5, 5))
    ops.append(AffineOperator(g @ g.T / 5, rng.normal(size=5)))
lift = ReducedLift.from_operators(ops)
q = rng.normal(size=5)
cfg = SolverConfig(gamma=1.0, beta=0.5, anchor_q=q, epsilon=1e-12, stop_on="governing")
trace = aamr_run(lift, cfg, np.zeros((3, 5)))
direct = resolvent_sum_reduced(lift, cfg.gamma / (2 * (1 - cfg.beta)), q)
print(f"affine: |AAMR - linear solve| = {np.abs(trace.final_p - direct).max():.1e}")
