"""Benchmark harness: Heron parameter grids, Sudoku suites, performance profiles.

Every run is described by a `RunRecord`. All randomness derives from one
master seed, so a grid is reproducible up to its timing fields. Runs can be
spread over a process pool; records are sorted canonically afterwards so the
output order does not depend on scheduling.
"""

from __future__ import annotations

import csv
import logging
import math
from collections import defaultdict
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from pathlib import Path
from statistics import median

import numpy as np

from .lifts import ReducedLift, StandardLift
from .problems import (
    SudokuFormatError,
    SudokuPuzzle,
    generate_heron,
    heron_objective,
    heron_operators,
    random_start,
    read_puzzles,
    sudoku_decode_validate,
    sudoku_operators,
)
from .solvers import (
    DEFAULT_MAX_ITER,
    SolverConfig,
    malitsky_tam_run,
    reduced_dr_run,
    ryu_run,
    standard_dr_run,
)

log = logging.getLogger(__name__)

ALGORITHMS = ("standard-dr", "reduced-dr", "malitsky-tam", "ryu")
HERON_GAMMAS = (1, 10, 25, 50, 75, 100)
HERON_LAMBDAS = tuple(round(0.1 * k, 1) for k in range(1, 20))
RUN_FIELDS = (
    "algorithm", "problem_id", "start_id", "gamma", "lambda", "iterations",
    "time_us", "converged", "objective_or_valid", "seed",
)
PROFILE_FIELDS = ("algorithm", "tau", "rho")


@dataclass(frozen=True)
class RunRecord:
    algorithm: str
    problem_id: str
    start_id: int
    gamma: float
    lam: float
    iterations: int
    time_us: int
    converged: bool
    objective: float | None = None
    valid: bool | None = None
    seed: int = 0

    @property
    def wall_time(self):
        return self.time_us / 1e6

    @property
    def solved(self):
        """Success flag: the validator's verdict when there is one, else convergence."""
        return self.valid if self.valid is not None else self.converged

    def sort_key(self):
        return (self.problem_id, self.start_id, self.algorithm, self.gamma, self.lam)


@dataclass
class ProfileCurve:
    algorithm: str
    taus: np.ndarray
    rhos: np.ndarray
    n_problems: int | None = None
    n_excluded: int | None = None


def check_algorithms(names):
    names = [n.strip() for n in names]
    unknown = [n for n in names if n not in ALGORITHMS]
    if unknown:
        raise ValueError(f"unknown algorithm(s) {unknown}; choose from {list(ALGORITHMS)}")
    return names


def admissible(algorithm, lam):
    """Whether `lam` is inside the algorithm's accepted relaxation range."""
    if algorithm == "ryu":
        return 0 < lam <= 1
    if algorithm == "malitsky-tam":
        return 0 < lam < 1
    return 0 < lam < 2


def derive_seed(*parts):
    """A 32-bit seed determined by the integers in `parts`."""
    return int(np.random.SeedSequence([int(p) for p in parts]).generate_state(1)[0])


def run_algorithm(algorithm, operators, cfg, start, stop_when=None):
    """Run one algorithm from the block start ``start`` (at least r blocks).

    Standard-DR uses all r blocks, Reduced-DR and Malitsky-Tam the first r-1,
    Ryu the first two as ``(x0, y0)``.
    """
    r = len(operators)
    if algorithm == "standard-dr":
        return standard_dr_run(StandardLift(operators), cfg, start[:r], stop_when)
    if algorithm == "reduced-dr":
        return reduced_dr_run(ReducedLift.from_operators(operators), cfg, start[: r - 1], stop_when)
    if algorithm == "malitsky-tam":
        return malitsky_tam_run(operators, cfg, start[: r - 1], stop_when)
    if algorithm == "ryu":
        return ryu_run(operators, cfg, start[0], start[1], stop_when)
    raise ValueError(f"unknown algorithm {algorithm!r}")


# -- Heron ---------------------------------------------------------------------


def heron_problem_id(dim, r, index):
    return f"heron-n{dim}-r{r}-{index:03d}"


def _heron_task(task):
    (algorithm, dim, r, p, s, gamma, lam, eps, max_iter, seed) = task
    inst = generate_heron(derive_seed(seed, dim, r, p), dim, r)
    start = random_start(derive_seed(seed, dim, r, p, s, 1), (r, dim))
    cfg = SolverConfig(gamma=gamma, lam=lam, epsilon=eps, max_iter=max_iter)
    trace = run_algorithm(algorithm, heron_operators(inst), cfg, start)
    return RunRecord(
        algorithm=algorithm,
        problem_id=heron_problem_id(dim, r, p),
        start_id=s,
        gamma=float(gamma),
        lam=float(lam),
        iterations=trace.iterations,
        time_us=int(round(trace.wall_time * 1e6)),
        converged=trace.converged,
        objective=heron_objective(inst, trace.final_p),
        seed=seed,
    )


def _run_tasks(fn, tasks, workers):
    if workers and workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            records = list(pool.map(fn, tasks, chunksize=8))
    else:
        records = [fn(t) for t in tasks]
    return sorted(records, key=RunRecord.sort_key)


def run_heron_grid(dims, r, gammas, lambdas, num_problems, starts_per_problem,
                   algorithms=ALGORITHMS, seed=0, eps=1e-6, max_iter=DEFAULT_MAX_ITER,
                   workers=1):
    """One record per (dimension, problem, start, γ, λ, algorithm).

    Ryu is dropped unless ``r == 3``; (algorithm, λ) pairs outside an
    algorithm's admissible range (λ ≤ 1 for Ryu, λ < 1 for Malitsky-Tam,
    λ < 2 for the DR variants) are skipped.
    """
    algorithms = check_algorithms(algorithms)
    if "ryu" in algorithms and r != 3:
        log.warning("Ryu splitting needs exactly three operators; skipping it for r=%d", r)
        algorithms = [a for a in algorithms if a != "ryu"]
    dims = [dims] if np.isscalar(dims) else list(dims)
    tasks = [
        (a, int(n), int(r), p, s, float(g), float(lam), eps, max_iter, seed)
        for n in dims
        for p in range(num_problems)
        for s in range(starts_per_problem)
        for g in gammas
        for lam in lambdas
        for a in algorithms
        if admissible(a, lam)
    ]
    return _run_tasks(_heron_task, tasks, workers)


def heron_summary(records):
    """Mean iterations per (algorithm, γ, λ), averaged over problems and starts."""
    groups = defaultdict(list)
    for rec in records:
        groups[rec.algorithm, rec.gamma, rec.lam].append(rec)
    rows = []
    for (a, g, lam), recs in sorted(groups.items()):
        rows.append({
            "algorithm": a,
            "gamma": g,
            "lambda": lam,
            "runs": len(recs),
            "converged": sum(r.converged for r in recs) / len(recs),
            "mean_iterations": float(np.mean([r.iterations for r in recs])),
            "mean_time_us": float(np.mean([r.time_us for r in recs])),
        })
    return rows


def best_parameters(records):
    """For each algorithm, the summary row with the fewest mean iterations."""
    best = {}
    for row in heron_summary(records):
        if row["converged"] < 1:
            continue
        cur = best.get(row["algorithm"])
        if cur is None or row["mean_iterations"] < cur["mean_iterations"]:
            best[row["algorithm"]] = row
    return best


def time_ratio_medians(records, reference="reduced-dr"):
    """Median over problems of (mean time of an algorithm / mean time of `reference`).

    Means are taken over starting points of each problem. Returns a dict
    ``algorithm -> median ratio``.
    """
    times = defaultdict(list)
    for rec in records:
        times[rec.algorithm, rec.problem_id].append(rec.time_us)
    ratios = defaultdict(list)
    for (a, pid), ts in times.items():
        ref = times.get((reference, pid))
        if ref and np.mean(ref) > 0:
            ratios[a].append(np.mean(ts) / np.mean(ref))
    return {a: float(median(v)) for a, v in sorted(ratios.items())}


# -- Sudoku --------------------------------------------------------------------


def _sudoku_paths(path):
    path = Path(path)
    if path.is_dir():
        return sorted(p for p in path.iterdir() if p.is_file() and p.suffix == ".txt")
    return [path]


def load_puzzle_files(paths):
    """Read every puzzle under `paths` (files or directories).

    Returns ``(puzzles, errors)``; an unreadable or malformed file adds an
    ``(path, message)`` entry to `errors` and is otherwise skipped.
    """
    if isinstance(paths, (str, Path)):
        paths = [paths]
    puzzles, errors = [], []
    for entry in paths:
        files = _sudoku_paths(entry)
        if not files:
            errors.append((str(entry), "no puzzle files found"))
        for f in files:
            try:
                puzzles.extend(read_puzzles(f))
            except (OSError, SudokuFormatError, UnicodeDecodeError) as exc:
                log.error("skipping %s: %s", f, exc)
                errors.append((str(f), str(exc)))
    return puzzles, errors


def _sudoku_task(task):
    algorithm, puzzle, start_id, lam, timeout, seed, k_set = task
    operators = sudoku_operators(puzzle, k_set=k_set)
    start = random_start(derive_seed(seed, start_id, 2), (5, 729))
    cfg = SolverConfig(lam=lam, timeout=timeout)

    def stop(p):
        return sudoku_decode_validate(p, puzzle)[1]

    trace = run_algorithm(algorithm, operators, cfg, start, stop_when=stop)
    valid = trace.final_p is not None and sudoku_decode_validate(trace.final_p, puzzle)[1]
    return RunRecord(
        algorithm=algorithm,
        problem_id=puzzle.name,
        start_id=start_id,
        gamma=1.0,
        lam=float(lam),
        iterations=trace.iterations,
        time_us=int(round(trace.wall_time * 1e6)),
        converged=trace.converged,
        valid=bool(valid and trace.converged),
        seed=seed,
    )


def run_sudoku_suite(puzzle_files, starts_per_puzzle, algorithms=ALGORITHMS[:3], timeout=300.0,
                     seed=0, lambda_dr=1.0, lambda_mt=0.5, workers=1, k_set=4):
    """One record per (puzzle, start, algorithm).

    `puzzle_files` may be paths (files or directories) or already loaded
    `SudokuPuzzle` objects. Starting points are shared across algorithms:
    start ``s`` is the same 5-block tensor for every algorithm and puzzle.
    `k_set` picks the constraint merged into K for Reduced-DR (default: the
    givens, C5).
    """
    algorithms = check_algorithms(algorithms)
    if "ryu" in algorithms:
        log.warning("Ryu splitting needs exactly three operators; skipping it for Sudoku")
        algorithms = [a for a in algorithms if a != "ryu"]
    if isinstance(puzzle_files, (list, tuple)) and all(
            isinstance(pz, SudokuPuzzle) for pz in puzzle_files):
        puzzles = list(puzzle_files)
    else:
        puzzles, _ = load_puzzle_files(puzzle_files)
    tasks = [
        (a, pz, s, lambda_mt if a == "malitsky-tam" else lambda_dr, timeout, seed, k_set)
        for pz in puzzles
        for s in range(starts_per_puzzle)
        for a in algorithms
    ]
    return _run_tasks(_sudoku_task, tasks, workers)


def sudoku_summary(records):
    """Solved share, win share and median solve time per algorithm.

    An instance is a (puzzle, start) pair. A win is being fastest among the
    algorithms that solved the instance; ties all count.
    """
    by_instance = defaultdict(dict)
    for rec in records:
        by_instance[rec.problem_id, rec.start_id][rec.algorithm] = rec
    algs = sorted({rec.algorithm for rec in records})
    wins = dict.fromkeys(algs, 0)
    for runs in by_instance.values():
        solved = [r for r in runs.values() if r.solved]
        if solved:
            t = min(r.time_us for r in solved)
            for r in solved:
                if r.time_us == t:
                    wins[r.algorithm] += 1
    out = {}
    for a in algs:
        recs = [r for r in records if r.algorithm == a]
        solved_times = [r.wall_time for r in recs if r.solved]
        out[a] = {
            "runs": len(recs),
            "solved": len(solved_times) / len(recs),
            "wins": wins[a] / len(by_instance),
            "median_time": median(solved_times) if solved_times else math.nan,
        }
    return out


# -- performance profiles ------------------------------------------------------


def default_taus(tau_max=32.0, samples=200):
    return np.geomspace(1.0, tau_max, samples)


def performance_profile(records, taus=None):
    """Success-weighted performance profiles, one curve per algorithm.

    For problem p and algorithm a, ``s`` is the share of successful runs and
    ``t`` the mean time of those runs; ``t*_p`` is the best ``t`` over
    algorithms and ``ρ_a(τ) = (1/N) Σ s`` over problems with ``t ≤ τ t*_p``.
    Problems that no algorithm solved have no ``t*_p``; they are left out of
    N and counted in `n_excluded`.
    """
    if not records:
        raise ValueError("performance_profile needs at least one record")
    taus = default_taus() if taus is None else np.asarray(taus, dtype=float)
    if np.any(taus < 1):
        raise ValueError("taus must be >= 1")
    algs = sorted({r.algorithm for r in records})
    problems = sorted({r.problem_id for r in records})
    runs = defaultdict(list)
    for rec in records:
        runs[rec.algorithm, rec.problem_id].append(rec)

    share = np.zeros((len(algs), len(problems)))
    mean_t = np.full((len(algs), len(problems)), np.inf)
    for i, a in enumerate(algs):
        for j, p in enumerate(problems):
            rs = runs.get((a, p), [])
            ok = [r.time_us for r in rs if r.solved]
            if rs:
                share[i, j] = len(ok) / len(rs)
            if ok:
                mean_t[i, j] = sum(ok) / len(ok)

    best = mean_t.min(axis=0)
    keep = np.isfinite(best)
    n = int(keep.sum())
    n_excluded = len(problems) - n
    if n_excluded:
        log.warning("%d problem(s) unsolved by every algorithm; excluded from profiles", n_excluded)
    share, mean_t, best = share[:, keep], mean_t[:, keep], best[keep]

    curves = []
    for i, a in enumerate(algs):
        if n == 0:
            rho = np.zeros_like(taus)
        else:
            within = mean_t[i][None, :] <= taus[:, None] * best[None, :]
            rho = (within * share[i][None, :]).sum(axis=1) / n
        curves.append(ProfileCurve(a, taus.copy(), rho, n_problems=n, n_excluded=n_excluded))
    return curves


# -- CSV -----------------------------------------------------------------------


def _fmt_float(x):
    return repr(float(x))


def _fmt_bool(b):
    return "true" if b else "false"


def _parse_bool(s):
    if s not in ("true", "false"):
        raise ValueError(f"expected true/false, got {s!r}")
    return s == "true"


def _run_row(rec):
    if rec.valid is not None:
        extra = _fmt_bool(rec.valid)
    elif rec.objective is not None:
        extra = _fmt_float(rec.objective)
    else:
        extra = ""
    return [
        rec.algorithm, rec.problem_id, str(rec.start_id), _fmt_float(rec.gamma),
        _fmt_float(rec.lam), str(rec.iterations), str(rec.time_us),
        _fmt_bool(rec.converged), extra, str(rec.seed),
    ]


def emit_csv(items, path, kind=None):
    """Write run records or profile curves to `path`.

    `kind` ("runs" or "profile") is inferred from the items and only needed
    for an empty list, which produces a header-only file (runs by default).
    Floats are written in shortest round-trip form and times as integer
    microseconds, so reading the file back reproduces every value exactly.
    """
    items = list(items)
    if kind is None:
        kind = "profile" if items and isinstance(items[0], ProfileCurve) else "runs"
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        if kind == "runs":
            w.writerow(RUN_FIELDS)
            for rec in items:
                w.writerow(_run_row(rec))
        elif kind == "profile":
            w.writerow(PROFILE_FIELDS)
            for c in items:
                for t, rho in zip(c.taus, c.rhos):
                    w.writerow([c.algorithm, _fmt_float(t), _fmt_float(rho)])
        else:
            raise ValueError(f"unknown CSV kind {kind!r}")


def _check_header(reader, expected, path):
    header = next(reader, None)
    if header is None or tuple(header) != expected:
        raise ValueError(f"{path}: expected header {','.join(expected)}")


def read_runs_csv(path):
    with open(path, newline="") as fh:
        reader = csv.reader(fh)
        _check_header(reader, RUN_FIELDS, path)
        out = []
        for row in reader:
            alg, pid, start, g, lam, its, t_us, conv, extra, seed = row
            objective = valid = None
            if extra in ("true", "false"):
                valid = _parse_bool(extra)
            elif extra:
                objective = float(extra)
            out.append(RunRecord(
                algorithm=alg, problem_id=pid, start_id=int(start), gamma=float(g),
                lam=float(lam), iterations=int(its), time_us=int(t_us),
                converged=_parse_bool(conv), objective=objective, valid=valid, seed=int(seed),
            ))
    return out


def read_profile_csv(path):
    with open(path, newline="") as fh:
        reader = csv.reader(fh)
        _check_header(reader, PROFILE_FIELDS, path)
        cols = defaultdict(lambda: ([], []))
        for alg, tau, rho in reader:
            cols[alg][0].append(float(tau))
            cols[alg][1].append(float(rho))
    return [ProfileCurve(a, np.array(t), np.array(r)) for a, (t, r) in cols.items()]
