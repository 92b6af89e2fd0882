"""Sudoku as a nonconvex feasibility problem.

A puzzle becomes a 9x9x9 binary tensor that must lie in five sets: the row,
column, cell and subgrid constraints (each a product of "standard basis
vector" sets) and the affine set fixing the givens. Projections onto the
first four are argmaxes; the givens are affine, which is why they make a good
choice for the diagonal set K of the reduced lift.

Run with ``python3 demos/sudoku.py``.
"""

from prodsplit import SolverConfig, bench
from prodsplit.problems import (
    fixture_puzzle_file,
    random_start,
    read_puzzles,
    sudoku_decode_validate,
    sudoku_operators,
)

puzzle = read_puzzles(fixture_puzzle_file())[1]  # a hard one
print("puzzle:")
print("\n".join(puzzle.to_string()[i:i + 9] for i in range(0, 81, 9)))

ops = sudoku_operators(puzzle)  # givens last, i.e. merged into K
start = random_start(0, (5, 729))


def solved(p):
    return sudoku_decode_validate(p, puzzle)[1]


for name, lam in [("reduced-dr", 1.0), ("standard-dr", 1.0), ("malitsky-tam", 0.5)]:
    cfg = SolverConfig(lam=lam, timeout=60.0)
    trace = bench.run_algorithm(name, ops, cfg, start, stop_when=solved)
    print(f"{name:<13} {'solved' if trace.converged else 'gave up'} after "
          f"{trace.iterations} iterations, {trace.wall_time:.2f} s")

grid, ok = sudoku_decode_validate(trace.final_p, puzzle)
print("\nsolution (checked by the rule validator: %s):" % ok)
for row in grid:
    print(" ".join(map(str, row)))
