"""Benchmark problem families and random starting points."""

import numpy as np

from .heron import HeronInstance, generate_heron, heron_objective, heron_operators
from .sudoku import (
    SudokuFormatError,
    SudokuPuzzle,
    fixture_puzzle_file,
    read_puzzles,
    sudoku_decode_validate,
    sudoku_encode,
    sudoku_operators,
)


def random_start(seed, shape):
    """Uniform [0, 1) entries of the given shape, deterministic in `seed`.

    ``shape=(blocks, n)`` gives a block start; an int gives a single vector.
    """
    return np.random.default_rng(seed).uniform(0.0, 1.0, size=shape)


__all__ = [
    "HeronInstance",
    "SudokuFormatError",
    "SudokuPuzzle",
    "fixture_puzzle_file",
    "generate_heron",
    "heron_objective",
    "heron_operators",
    "random_start",
    "read_puzzles",
    "sudoku_decode_validate",
    "sudoku_encode",
    "sudoku_operators",
]
