"""Command-line experiment runner: ``prodsplit {heron,sudoku,profile}``."""

from __future__ import annotations

import argparse
import logging
import sys

from . import bench


def _floats(text):
    try:
        return [float(v) for v in text.split(",") if v.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {text!r}") from None


def _ints(text):
    try:
        return [int(v) for v in text.split(",") if v.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


def _algorithms(text):
    try:
        return bench.check_algorithms(text.split(","))
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def build_parser():
    parser = argparse.ArgumentParser(prog="prodsplit", description=__doc__)
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    h = sub.add_parser("heron", help="generalized Heron parameter grid")
    h.add_argument("--dim", type=_ints, default=[100], help="dimension(s), comma separated")
    h.add_argument("--r", type=int, default=3, help="number of sets (cubes + ball)")
    h.add_argument("--gamma", type=_floats, default=list(bench.HERON_GAMMAS))
    h.add_argument("--lambda", dest="lam", type=_floats, default=list(bench.HERON_LAMBDAS))
    h.add_argument("--algorithms", type=_algorithms, default=list(bench.ALGORITHMS))
    h.add_argument("--problems", type=int, default=10)
    h.add_argument("--starts", type=int, default=10)
    h.add_argument("--seed", type=int, default=0)
    h.add_argument("--eps", type=float, default=1e-6)
    h.add_argument("--max-iter", type=int, default=bench.DEFAULT_MAX_ITER)
    h.add_argument("--workers", type=int, default=1)
    h.add_argument("--out", required=True)

    s = sub.add_parser("sudoku", help="Sudoku suite from puzzle files")
    s.add_argument("--puzzles", nargs="+", required=True, help="puzzle files or directories")
    s.add_argument("--algorithms", type=_algorithms, default=list(bench.ALGORITHMS[:3]))
    s.add_argument("--starts", type=int, default=10)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--lambda-dr", type=float, default=1.0)
    s.add_argument("--lambda-mt", type=float, default=0.5)
    s.add_argument("--timeout-secs", type=float, default=300.0)
    s.add_argument("--k-set", type=int, default=4, choices=range(5),
                   help="0-based index of the constraint merged into K (default: givens)")
    s.add_argument("--workers", type=int, default=1)
    s.add_argument("--out", required=True)

    p = sub.add_parser("profile", help="performance profiles from a runs CSV")
    p.add_argument("--input", required=True)
    p.add_argument("--tau-max", type=float, default=32.0)
    p.add_argument("--samples", type=int, default=200)
    p.add_argument("--out", required=True)
    return parser


def _heron(args):
    if args.r < 3 or min(args.dim) < 1:
        raise ValueError("need --r >= 3 and positive --dim")
    records = bench.run_heron_grid(
        args.dim, args.r, args.gamma, args.lam, args.problems, args.starts,
        algorithms=args.algorithms, seed=args.seed, eps=args.eps,
        max_iter=args.max_iter, workers=args.workers,
    )
    bench.emit_csv(records, args.out)
    print(f"{len(records)} runs -> {args.out}")
    print(f"{'algorithm':<14}{'gamma':>8}{'lambda':>8}{'mean its':>11}")
    for a, row in sorted(bench.best_parameters(records).items()):
        print(f"{a:<14}{row['gamma']:>8g}{row['lambda']:>8g}{row['mean_iterations']:>11.2f}")
    if len({r.problem_id for r in records}) > 1 and "reduced-dr" in args.algorithms:
        for a, ratio in bench.time_ratio_medians(records).items():
            print(f"median time ratio {a} / reduced-dr: {ratio:.2f}")
    return 0


def _sudoku(args):
    puzzles, errors = bench.load_puzzle_files(args.puzzles)
    records = bench.run_sudoku_suite(
        puzzles, args.starts, algorithms=args.algorithms,
        timeout=args.timeout_secs, seed=args.seed, lambda_dr=args.lambda_dr,
        lambda_mt=args.lambda_mt, workers=args.workers, k_set=args.k_set,
    )
    bench.emit_csv(records, args.out)
    print(f"{len(records)} runs -> {args.out}")
    if records:
        print(f"{'algorithm':<14}{'solved':>9}{'wins':>9}{'median s':>10}")
        for a, row in bench.sudoku_summary(records).items():
            print(f"{a:<14}{row['solved']:>9.2%}{row['wins']:>9.2%}{row['median_time']:>10.4f}")
    for path, msg in errors:
        print(f"error: {path}: {msg}", file=sys.stderr)
    return 1 if errors else 0


def _profile(args):
    if args.tau_max < 1 or args.samples < 1:
        raise ValueError("need --tau-max >= 1 and --samples >= 1")
    records = bench.read_runs_csv(args.input)
    curves = bench.performance_profile(records, bench.default_taus(args.tau_max, args.samples))
    bench.emit_csv(curves, args.out)
    excluded = curves[0].n_excluded if curves else 0
    print(f"{len(curves)} profiles over {curves[0].n_problems} problems "
          f"({excluded} unsolved by all, excluded) -> {args.out}")
    return 0


def main(argv=None):
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    handler = {"heron": _heron, "sudoku": _sudoku, "profile": _profile}[args.command]
    try:
        return handler(args)
    except (OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
