"""Benchmark records, CSV output and performance profiles.

A small Heron grid is run for the four methods, written to CSV, read back
and summarised with performance profiles: rho_a(tau) is the share of
problems that method a solves within tau times the fastest method's time.
The same flow is available from the command line::

    prodsplit heron --dim 100 --gamma 25 --lambda 0.9 --out runs.csv
    prodsplit profile --input runs.csv --out profile.csv

Run with ``python3 demos/profiles.py``.
"""

import tempfile
from pathlib import Path

from prodsplit import bench

records = bench.run_heron_grid(dims=[100], r=3, gammas=[25], lambdas=[0.9], num_problems=5,
                               starts_per_problem=3, seed=2)

with tempfile.TemporaryDirectory() as tmp:
    path = Path(tmp) / "runs.csv"
    bench.emit_csv(records, path)
    assert bench.read_runs_csv(path) == records  # exact round trip

for row in bench.heron_summary(records):
    print(f"{row['algorithm']:<14} mean iterations {row['mean_iterations']:6.2f}")

taus = [1.0, 1.5, 2.0, 4.0, 8.0]
print("\n" + f"{'tau':<14}" + "".join(f"{t:>7g}" for t in taus))
for curve in bench.performance_profile(records, taus):
    print(f"{curve.algorithm:<14}" + "".join(f"{r:>7.2f}" for r in curve.rhos))
