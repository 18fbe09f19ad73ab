"""Command-line front end: ``subsum {solve,gen,bench,selftest}``.

Exit codes: 0 solution found, 1 no solution / failure, 2 usage or parse
error, 3 precondition violated, 4 resource bound exceeded.
"""
from __future__ import annotations

import argparse
import csv
import json
import multiprocessing as mp
import os
import sys
import time
from dataclasses import asdict, dataclass, field
from pathlib import Path

from .baselines import bellman_decides
from .core import (
    Instance,
    InstanceError,
    PreconditionError,
    ResourceError,
    SolverStats,
    SubsetSolution,
    format_instance,
    parse_instance,
)
from .enumerative import DEFAULT_CHUNK, DEFAULT_MAX_N, EnumerationConfig, solve_all
from .gen import GenSpec, gen_planted, gen_random, trial_seed
from .greedy import GreedyConfig, solution_variance, solve_greedy
from .randomized import ProbeConfig, solve_probabilistic

EXIT_OK, EXIT_NONE, EXIT_USAGE, EXIT_PRECONDITION, EXIT_RESOURCE = 0, 1, 2, 3, 4
MODES = ("all", "prob", "greedy", "dp")
BENCH_HEADER = ["mode", "n", "bit_length", "trial", "seed", "outcome", "millis", "ops"]


@dataclass
class RunReport:
    mode: str
    digest: str
    outcome: str  # "found", "none", "yes", "no"
    solutions: list[dict] = field(default_factory=list)
    decision: bool | None = None
    wall_ms: float = 0.0
    counters: dict = field(default_factory=dict)
    config: dict = field(default_factory=dict)
    seed: int | None = None

    def validate(self, instance: Instance) -> None:
        for s in self.solutions:
            SubsetSolution(tuple(s["indices"]), tuple(s["values"]), instance.target).check(instance)

    def to_json(self) -> str:
        return json.dumps(asdict(self), sort_keys=True)

    @classmethod
    def from_json(cls, text: str) -> "RunReport":
        return cls(**json.loads(text))


def default_max_n() -> int:
    return int(os.environ.get("SUBSUM_MAX_N", DEFAULT_MAX_N))


def _solution_dict(sol: SubsetSolution) -> dict:
    return {"indices": list(sol.indices), "values": list(sol.values)}


def run_mode(instance: Instance, mode: str, opts: dict) -> tuple[RunReport, list[SubsetSolution]]:
    """Run one solver and wrap the outcome.  Raises the solver's own errors."""
    stats = SolverStats()
    seed = opts.get("seed")
    start = time.perf_counter()
    solutions: list[SubsetSolution] = []
    decision = None
    if mode == "all":
        cfg = EnumerationConfig(
            max_n=opts.get("max_n") or default_max_n(),
            chunk_size=opts.get("chunk") or DEFAULT_CHUNK,
            solution_limit=opts.get("limit"),
        )
        solutions = list(solve_all(instance, cfg, stats))
        config = asdict(cfg)
    elif mode == "prob":
        cfg = ProbeConfig(
            piece_length=opts.get("piece") or min(instance.n, 20),
            repeat_times=opts.get("repeats") or 100,
            seed=seed,
            max_n=opts.get("max_n") or default_max_n(),
        )
        sol = solve_probabilistic(instance, cfg, stats)
        solutions = [sol] if sol else []
        config = asdict(cfg)
    elif mode == "greedy":
        cfg = GreedyConfig(round_bound=opts.get("rounds"), beam_limit=opts.get("beam"))
        sol = solve_greedy(instance, cfg, stats)
        solutions = [sol] if sol else []
        config = asdict(cfg)
    elif mode == "dp":
        decision = bellman_decides(instance, stats)
        config = {}
    else:
        raise ValueError(f"unknown mode {mode!r}")
    elapsed = (time.perf_counter() - start) * 1000

    if mode == "dp":
        outcome = "yes" if decision else "no"
    else:
        outcome = "found" if solutions else "none"
    counters = stats.as_dict()
    if mode == "greedy" and solutions:
        var, degenerate = solution_variance(solutions[0])
        counters.update(variance=var, degenerate=degenerate)
    report = RunReport(
        mode=mode,
        digest=instance.digest(),
        outcome=outcome,
        solutions=[_solution_dict(s) for s in solutions],
        decision=decision,
        wall_ms=elapsed,
        counters=counters,
        config=config,
        seed=seed,
    )
    return report, solutions


def _print_human(report: RunReport, solutions: list[SubsetSolution], out) -> None:
    if report.mode == "dp":
        print(report.outcome, file=out)
        return
    if not solutions:
        print("no solution" if report.mode == "all" else "FAILURE", file=out)
        return
    for sol in solutions:
        if report.mode == "greedy":
            vals = sorted(sol.values, reverse=True)
        else:
            vals = list(sol.values)
        print(" ".join(map(str, vals)) + "\t(indices " + " ".join(map(str, sol.indices)) + ")", file=out)
    c = report.counters
    if report.mode == "greedy":
        tag = " (singleton)" if c.get("degenerate") else ""
        print(f"variance {c['variance']:.4f}{tag}", file=out)
        print(f"rounds {c['rounds']}", file=out)
    if c.get("truncated"):
        print("(truncated: solution limit reached)", file=out)


def cmd_solve(args) -> int:
    try:
        if args.path in (None, "-"):
            text = sys.stdin.read()
        else:
            text = Path(args.path).read_text()
        instance = parse_instance(text)
    except (InstanceError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    opts = {k: getattr(args, k) for k in ("seed", "max_n", "chunk", "limit", "piece", "repeats", "rounds", "beam")}
    try:
        report, solutions = run_mode(instance, args.mode, opts)
    except PreconditionError as exc:
        print(f"precondition: {exc}", file=sys.stderr)
        return EXIT_PRECONDITION
    except ResourceError as exc:
        print(f"resource: {exc}", file=sys.stderr)
        return EXIT_RESOURCE
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    report.validate(instance)
    if args.json:
        print(report.to_json())
    else:
        _print_human(report, solutions, sys.stdout)
    return EXIT_OK if report.outcome in ("found", "yes") else EXIT_NONE


def cmd_gen(args) -> int:
    try:
        spec = GenSpec(n=args.n, bit_length=args.bits, planted_size=args.planted, seed=args.seed)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    witness = None
    if spec.planted_size is None:
        instance = gen_random(spec)
    else:
        instance, witness = gen_planted(spec)
    text = format_instance(instance, args.format)
    if args.output:
        Path(args.output).write_text(text if text.endswith("\n") else text + "\n")
    else:
        sys.stdout.write(text if text.endswith("\n") else text + "\n")
    if witness is not None:
        wpath = args.witness or (args.output + ".witness.json" if args.output else None)
        if wpath:
            Path(wpath).write_text(json.dumps(_solution_dict(witness)) + "\n")
    return EXIT_OK


def _bench_worker(conn):
    while True:
        try:
            task = conn.recv()
        except EOFError:
            return
        if task is None:
            return
        instance, mode, opts, warmup = task
        try:
            for _ in range(warmup):
                run_mode(instance, mode, opts)
            report, _ = run_mode(instance, mode, opts)
            conn.send(("ok", report.outcome, report.counters.get("ops", 0), report.wall_ms))
        except Exception as exc:  # reported as a row, never raised
            conn.send(("error", type(exc).__name__, 0, None))


class TimedRunner:
    """One long-lived child process that runs solvers under a time budget.

    A run that overruns its budget kills the child; the next run starts a
    fresh one.  ``millis`` is the solver's own wall time for the last of
    ``warmup + 1`` identical runs; the budget covers all of them.
    """

    def __init__(self, warmup: int = 0):
        self.warmup = warmup
        self._ctx = mp.get_context("fork")
        self._proc = None
        self._conn = None

    def _spawn(self):
        parent, child = self._ctx.Pipe()
        self._proc = self._ctx.Process(target=_bench_worker, args=(child,), daemon=True)
        self._proc.start()
        child.close()
        self._conn = parent

    def run(self, instance: Instance, mode: str, opts: dict, budget: float) -> tuple[str, float, int]:
        if self._proc is None or not self._proc.is_alive():
            self._spawn()
        start = time.perf_counter()
        self._conn.send((instance, mode, opts, self.warmup))
        ready = self._conn.poll(budget)
        millis = (time.perf_counter() - start) * 1000
        if not ready:
            self.close(kill=True)
            return "timeout", millis, 0
        try:
            status, outcome, ops, inner = self._conn.recv()
        except EOFError:
            self.close(kill=True)
            return "error:crashed", millis, 0
        if inner is not None:
            millis = inner
        return (outcome if status == "ok" else f"error:{outcome}"), millis, ops

    def close(self, kill: bool = False):
        if self._proc is None:
            return
        if kill:
            self._proc.kill()
        else:
            try:
                self._conn.send(None)
            except (BrokenPipeError, OSError):
                pass
        self._proc.join()
        self._conn.close()
        self._proc = self._conn = None

    def __enter__(self):
        return self

    def __exit__(self, *exc):
        self.close()


def run_one_timed(instance: Instance, mode: str, opts: dict, budget: float) -> tuple[str, float, int]:
    with TimedRunner() as runner:
        return runner.run(instance, mode, opts, budget)


def bench_rows(ns, modes, trials, bits, seed, budget, opts=None, warmup=1):
    opts = dict(opts or {})
    with TimedRunner(warmup) as runner:
        for n in ns:
            for trial in range(trials):
                s = trial_seed(seed, n, bits, trial)
                instance = gen_random(GenSpec(n=n, bit_length=bits, seed=s))
                for mode in modes:
                    outcome, millis, ops = runner.run(instance, mode, {**opts, "seed": s}, budget)
                    yield {
                        "mode": mode,
                        "n": n,
                        "bit_length": bits,
                        "trial": trial,
                        "seed": s,
                        "outcome": outcome,
                        "millis": f"{millis:.3f}",
                        "ops": ops,
                    }


def parse_range(text: str) -> list[int]:
    """``"8:24"``, ``"8:24:2"`` or ``"8,12,16"``."""
    if ":" in text:
        parts = [int(p) for p in text.split(":")]
        lo, hi = parts[0], parts[1]
        step = parts[2] if len(parts) > 2 else 1
        return list(range(lo, hi + 1, step))
    return [int(p) for p in text.split(",") if p]


def cmd_bench(args) -> int:
    try:
        ns = parse_range(args.n)
        modes = [m for m in args.modes.split(",") if m]
        if any(m not in MODES for m in modes):
            raise ValueError(f"modes must be among {MODES}")
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    opts = {"max_n": args.max_n, "piece": args.piece, "repeats": args.repeats, "rounds": args.rounds}
    try:
        if args.output in (None, "-"):
            fh, close = sys.stdout, False
            write_header = True
        else:
            path = Path(args.output)
            write_header = not path.exists() or path.stat().st_size == 0
            fh, close = open(path, "a", newline=""), True
    except OSError as exc:
        print(f"error: cannot write {args.output}: {exc}", file=sys.stderr)
        return EXIT_USAGE
    try:
        writer = csv.DictWriter(fh, fieldnames=BENCH_HEADER)
        if write_header:
            writer.writeheader()
        rows = bench_rows(ns, modes, args.trials, args.bits, args.seed, args.budget, opts, args.warmup)
        for row in rows:
            writer.writerow(row)
            fh.flush()
    finally:
        if close:
            fh.close()
    return EXIT_OK


def selftest_checks() -> list[tuple[str, bool]]:
    from .core import decode_position

    checks = []
    sols = solve_all(Instance(5, (1, 2, 3, 4)))
    checks.append(("two solutions of 5 in {1,2,3,4}", [s.indices for s in sols] == [(2, 3), (1, 4)]))
    checks.append(
        (
            "position decoding k=14,9,5",
            [decode_position(k, 4) for k in (14, 9, 5)] == [(1, 3, 4), (4,), (3,)],
        )
    )
    g = solve_greedy(Instance(24, tuple(range(1, 9))))
    ok = g is not None and sorted(g.values) == [4, 5, 7, 8]
    ok = ok and abs(solution_variance(g)[0] - 3.3333) <= 1e-4
    checks.append(("greedy on t=24, W=1..8 gives {8,7,5,4}", ok))
    checks.append(("Bellman table on t=5, W={1,2,3,4}", bellman_decides(Instance(5, (1, 2, 3, 4)))))
    p = solve_probabilistic(Instance(5, (1, 2, 3, 4)), ProbeConfig(4, 50, seed=0))
    checks.append(("probabilistic solver certifies", p is not None and sum(p.values) == 5))
    return checks


def cmd_selftest(args) -> int:
    checks = selftest_checks()
    for name, ok in checks:
        print(f"[{'PASS' if ok else 'FAIL'}] {name}")
    return EXIT_OK if all(ok for _, ok in checks) else EXIT_NONE


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="subsum", description="Subset-sum solvers and benchmarks.")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("solve", help="solve an instance file (or stdin)")
    s.add_argument("path", nargs="?", help="instance file; '-' or omitted reads stdin")
    s.add_argument("--mode", choices=MODES, default="all")
    s.add_argument("--json", action="store_true", help="emit a JSON report instead of text")
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--max-n", dest="max_n", type=int, default=None)
    s.add_argument("--chunk", type=int, default=None, help="residuals per block (power of two)")
    s.add_argument("--limit", type=int, default=None, help="stop after this many solutions")
    s.add_argument("--piece", type=int, default=None)
    s.add_argument("--repeats", type=int, default=None)
    s.add_argument("--rounds", type=int, default=None)
    s.add_argument("--beam", type=int, default=None)
    s.set_defaults(func=cmd_solve)

    g = sub.add_parser("gen", help="generate a random or planted instance")
    g.add_argument("--n", type=int, required=True)
    g.add_argument("--bits", type=int, default=20)
    g.add_argument("--planted", type=int, default=None)
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("--format", choices=("text", "json"), default="text")
    g.add_argument("-o", "--output", default=None)
    g.add_argument("--witness", default=None, help="planted witness JSON path")
    g.set_defaults(func=cmd_gen)

    b = sub.add_parser("bench", help="runtime sweep over n, written as CSV")
    b.add_argument("--n", default="8:24", help="'lo:hi[:step]' or comma list")
    b.add_argument("--modes", default="all")
    b.add_argument("--trials", type=int, default=3)
    b.add_argument("--bits", type=int, default=20)
    b.add_argument("--seed", type=int, default=0)
    b.add_argument("--budget", type=float, default=10.0, help="seconds per run")
    b.add_argument("--warmup", type=int, default=1, help="untimed runs before each timed run")
    b.add_argument("--max-n", dest="max_n", type=int, default=None)
    b.add_argument("--piece", type=int, default=None)
    b.add_argument("--repeats", type=int, default=None)
    b.add_argument("--rounds", type=int, default=None)
    b.add_argument("-o", "--output", default=None)
    b.set_defaults(func=cmd_bench)

    t = sub.add_parser("selftest", help="re-run the worked examples")
    t.set_defaults(func=cmd_selftest)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
