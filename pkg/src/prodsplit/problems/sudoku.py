"""Sudoku as a nonconvex feasibility problem over binary 9x9x9 tensors.

``X[i, j, k] = 1`` means digit ``k + 1`` sits in cell ``(i, j)`` (indices are
0-based here). A solution lies in the intersection of

* C1: every row fiber ``X[i, :, k]`` is a standard basis vector,
* C2: every column fiber ``X[:, j, k]`` is a standard basis vector,
* C3: every cell fiber ``X[i, j, :]`` is a standard basis vector,
* C4: every vectorised 3x3 subgrid slice of every digit is a basis vector,
* C5: the given entries equal one.

C1-C4 are projected fiber by fiber (argmax one-hot, lowest index on ties);
C5 is an affine subspace.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

import numpy as np

from ..projections import AffineFixSet, onehot_argmax, project_affine_fix
from ..resolvents import NormalCone

SHAPE = (9, 9, 9)
SIZE = 729
DIGITS = frozenset("123456789")
BLANKS = frozenset(".0")


class SudokuFormatError(ValueError):
    pass


@dataclass(frozen=True)
class SudokuPuzzle:
    """Givens as a 9x9 int grid, 0 for blank."""

    givens: np.ndarray
    name: str = ""

    def __post_init__(self):
        g = np.asarray(self.givens, dtype=int)
        if g.shape != (9, 9) or g.min() < 0 or g.max() > 9:
            raise SudokuFormatError("givens must be a 9x9 grid of values 0..9")
        if not _consistent(g):
            raise SudokuFormatError("givens repeat a digit in a row, column or subgrid")
        g.setflags(write=False)
        object.__setattr__(self, "givens", g)

    @classmethod
    def from_string(cls, text, name=""):
        chars = [ch for ch in text if not ch.isspace()]
        if len(chars) != 81 or any(ch not in DIGITS | BLANKS for ch in chars):
            raise SudokuFormatError("expected 81 characters from 1-9, '.' or '0'")
        grid = [0 if ch in BLANKS else int(ch) for ch in chars]
        return cls(np.array(grid).reshape(9, 9), name=name)

    def to_string(self):
        return "".join(str(v) if v else "." for v in self.givens.ravel())

    @property
    def fixed_indices(self):
        """``(i, j, k)`` triples of the givens, 0-based."""
        i, j = np.nonzero(self.givens)
        return [(int(a), int(b), int(self.givens[a, b]) - 1) for a, b in zip(i, j)]


def read_puzzles(path):
    """Puzzles from a file with one 81-character puzzle per line.

    Blank lines and lines starting with ``#`` are skipped.
    """
    path = Path(path)
    puzzles = []
    for lineno, line in enumerate(path.read_text().splitlines(), 1):
        s = line.strip()
        if not s or s.startswith("#"):
            continue
        try:
            puzzles.append(SudokuPuzzle.from_string(s, name=f"{path.stem}:{lineno}"))
        except SudokuFormatError as exc:
            raise SudokuFormatError(f"{path}:{lineno}: {exc}") from None
    return puzzles


def fixture_puzzle_file():
    """Path of the bundled puzzle file."""
    return Path(__file__).with_name("puzzles") / "fixtures.txt"


def _groups(grid):
    yield from grid
    yield from grid.T
    for a in range(3):
        for b in range(3):
            yield grid[3 * a:3 * a + 3, 3 * b:3 * b + 3].ravel()


def _consistent(grid):
    for g in _groups(grid):
        vals = g[g > 0]
        if len(vals) != len(set(vals.tolist())):
            return False
    return True


# -- fiber projectors ----------------------------------------------------------


def _as_tensor(x):
    x = np.asarray(x, dtype=float)
    if x.size != SIZE:
        raise ValueError(f"expected {SIZE} entries, got {x.size}")
    if not np.all(np.isfinite(x)):
        raise ValueError("tensor contains NaN or Inf")
    return x.reshape(SHAPE)


def _to_subgrid_fibers(t):
    # t[3a+b, 3c+d, k] -> f[a, c, k, 3d+b]: column-major vec of each 3x3 block
    return t.reshape(3, 3, 3, 3, 9).transpose(0, 2, 4, 3, 1).reshape(3, 3, 9, 9)


def _from_subgrid_fibers(f):
    return f.reshape(3, 3, 9, 3, 3).transpose(0, 4, 1, 3, 2).reshape(SHAPE)


def project_rows(x):
    """C1: one-hot every ``X[i, :, k]``."""
    return onehot_argmax(_as_tensor(x), axis=1).ravel()


def project_columns(x):
    """C2: one-hot every ``X[:, j, k]``."""
    return onehot_argmax(_as_tensor(x), axis=0).ravel()


def project_cells(x):
    """C3: one-hot every ``X[i, j, :]``."""
    return onehot_argmax(_as_tensor(x), axis=2).ravel()


def project_subgrids(x):
    """C4: one-hot every column-major vectorised 3x3 block of every digit slice."""
    f = _to_subgrid_fibers(_as_tensor(x))
    return _from_subgrid_fibers(onehot_argmax(f, axis=3)).ravel()


class FiberSet:
    """One of C1-C4, usable wherever a set with ``project`` is expected."""

    def __init__(self, name, projector):
        self.name = name
        self._projector = projector

    def project(self, x):
        return self._projector(x)

    def __repr__(self):
        return f"FiberSet({self.name})"


class GivensSet:
    """C5 as a set object over flattened tensors."""

    def __init__(self, fix):
        self.fix = fix

    def project(self, x):
        return project_affine_fix(self.fix, x)

    def __repr__(self):
        return f"GivensSet({len(self.fix._flat)} givens)"


def givens_fix_set(puzzle):
    return AffineFixSet(SHAPE, {idx: 1.0 for idx in puzzle.fixed_indices})


def sudoku_encode(puzzle):
    """The five constraint sets ``[C1, C2, C3, C4, C5]`` and the givens' index set.

    Returns
    -------
    sets : list
        Set objects with a ``project`` method acting on flattened tensors.
    fix : AffineFixSet
        The prescribed entries (C5's data).
    """
    fix = givens_fix_set(puzzle)
    sets = [
        FiberSet("rows", project_rows),
        FiberSet("columns", project_columns),
        FiberSet("cells", project_cells),
        FiberSet("subgrids", project_subgrids),
        GivensSet(fix),
    ]
    return sets, fix


def sudoku_operators(puzzle, k_set=4):
    """Normal cones of C1-C5, reordered so ``sets[k_set]`` comes last.

    The last operator is the one a `ReducedLift` merges into K. The default
    keeps C5 (an affine subspace) there.
    """
    sets, _ = sudoku_encode(puzzle)
    order = [i for i in range(5) if i != k_set] + [k_set]
    return [NormalCone(sets[i]) for i in order]


# -- decoding ------------------------------------------------------------------


def solution_tensor(grid):
    """Binary tensor of a filled grid (digits 1..9)."""
    grid = np.asarray(grid, dtype=int)
    t = np.zeros(SHAPE)
    i, j = np.indices((9, 9))
    t[i, j, grid - 1] = 1.0
    return t.ravel()


def is_valid_solution(grid, puzzle=None):
    """Exact rule check: every row, column and subgrid is a permutation of 1..9."""
    grid = np.asarray(grid, dtype=int)
    if grid.shape != (9, 9):
        return False
    full = set(range(1, 10))
    if any(set(g.tolist()) != full for g in _groups(grid)):
        return False
    if puzzle is not None:
        mask = puzzle.givens > 0
        if np.any(grid[mask] != puzzle.givens[mask]):
            return False
    return True


def sudoku_decode_validate(x, puzzle):
    """Read a grid off a tensor by per-cell argmax and check it.

    Returns
    -------
    grid : ndarray of int, shape (9, 9)
    valid : bool
    """
    t = np.asarray(x, dtype=float).reshape(SHAPE)
    grid = np.argmax(t, axis=2) + 1
    return grid, is_valid_solution(grid, puzzle)
