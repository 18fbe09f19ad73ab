"""Greedy prune-and-merge solver for positive weights.

Weights are processed in decreasing order.  Each round subtracts the next
weight from every live residual, drops negative results and keeps one
residual per value.  The sweep stops at the first round where a zero
residual appears.

When two residuals collide, the survivor is the one whose chosen weights,
read in decreasing order, are lexicographically greatest (ties on equal
weights go to the smaller original index).  That order is preserved when
the same weights are appended to both, so the zero residual found at round
``k`` carries the lexicographically greatest solution among all subsets of
the first ``k`` sorted weights.

Two engines implement the same sweep:

* ``tracked`` keeps explicit :class:`TrackedResidual` objects.  Required
  when a beam limit is set.
* ``bitset`` keeps the live residual values as bits of a Python integer and
  rebuilds the solution afterwards from suffix reachability sets.  Used by
  default for unlimited beams, where the number of residuals can reach
  ``t + 1``.
"""
from __future__ import annotations

import math
import statistics
from dataclasses import dataclass
from typing import Iterable, Sequence

from .core import Instance, PreconditionError, SolverStats, SubsetSolution


class VarianceError(ValueError):
    pass


@dataclass(frozen=True)
class TrackedResidual:
    value: int
    chosen: tuple[int, ...] = ()
    round: int = 0
    taken: tuple[int, ...] = ()  # weights of ``chosen``, same order

    def __post_init__(self):
        if self.value < 0:
            raise ValueError(f"residual must be non-negative, got {self.value}")


@dataclass(frozen=True)
class GreedyConfig:
    round_bound: int | None = None
    beam_limit: int | None = None

    def __post_init__(self):
        if self.round_bound is not None and self.round_bound < 1:
            raise ValueError("round_bound must be >= 1")
        if self.beam_limit is not None and self.beam_limit < 1:
            raise ValueError("beam_limit must be >= 1")


def sample_variance(values: Sequence[float]) -> float:
    """Unbiased sample variance (``m - 1`` denominator)."""
    if len(values) < 2:
        raise VarianceError("sample variance needs at least two values")
    return float(statistics.variance([float(v) for v in values]))


def solution_variance(solution: SubsetSolution) -> tuple[float, bool]:
    """``(variance, degenerate)``; singletons report 0.0 and ``degenerate=True``."""
    if len(solution.values) < 2:
        return 0.0, True
    return sample_variance(solution.values), False


def _merge_key(r: TrackedResidual):
    return tuple(-w for w in r.taken), r.chosen


def prune_and_merge(
    residuals: Iterable[TrackedResidual], w: int, index: int, round: int = 0
) -> list[TrackedResidual]:
    """One greedy round: subtract ``w``, prune negatives, merge equal values."""
    if w <= 0:
        raise PreconditionError(f"weights must be positive, got {w}")
    residuals = list(residuals)
    best: dict[int, TrackedResidual] = {}
    candidates = residuals + [
        TrackedResidual(r.value - w, r.chosen + (index,), round, r.taken + (w,))
        for r in residuals
        if r.value >= w
    ]
    for r in candidates:
        cur = best.get(r.value)
        if cur is None or _merge_key(r) < _merge_key(cur):
            best[r.value] = r
    return sorted(best.values(), key=lambda r: r.value, reverse=True)


def _check_greedy_domain(instance: Instance):
    if any(w <= 0 for w in instance.weights):
        raise PreconditionError("greedy solver needs strictly positive weights")
    if instance.target <= 0:
        raise PreconditionError("greedy solver needs a positive target")


def _sorted_order(instance: Instance) -> list[int]:
    # stable: equal weights keep original index order
    return sorted(range(1, instance.n + 1), key=lambda i: -instance.weight(i))


def _sweep_tracked(instance, order, rounds, beam_limit, stats):
    live = [TrackedResidual(instance.target)]
    for k, idx in enumerate(order[:rounds], start=1):
        stats.ops += len(live)
        live = prune_and_merge(live, instance.weight(idx), idx, k)
        stats.rounds = k
        if live[-1].value == 0:
            return live[-1].chosen
        if beam_limit is not None and len(live) > beam_limit:
            live = live[:beam_limit]
        stats.peak_residuals = max(stats.peak_residuals, len(live))
    return None


def _sweep_bitset(instance, order, rounds, stats):
    t = instance.target
    weights = [instance.weight(i) for i in order]
    live = 1 << t  # bit v set <=> residual v is live
    hit = 0
    for k, w in enumerate(weights[:rounds], start=1):
        stats.ops += live.bit_count()
        live |= live >> w
        stats.rounds = k
        if live & 1:
            hit = k
            break
        stats.peak_residuals = max(stats.peak_residuals, live.bit_count())
    if not hit:
        return None
    picked = _lex_greatest(weights[:hit], t)
    return tuple(order[p] for p in picked)


def _lex_greatest(weights: list[int], t: int) -> list[int]:
    """Positions of the lexicographically greatest subset summing to ``t``.

    Takes each weight in turn whenever the remainder is still reachable by
    the later weights.  Suffix reachability sets are rebuilt per segment
    from ``sqrt(k)`` checkpoints to bound memory.
    """
    k = len(weights)
    mask = (1 << (t + 1)) - 1
    step = max(1, math.isqrt(k))

    def back(reach, i):
        return (reach | (reach << weights[i])) & mask

    # checkpoints[e] = sums reachable from weights[e:]
    checkpoints = {k: 1}
    reach = 1
    for i in range(k - 1, -1, -1):
        reach = back(reach, i)
        if i % step == 0:
            checkpoints[i] = reach

    picked = []
    r = t
    for a in range(0, k, step):
        e = min(a + step, k)
        suffix = {e: checkpoints[e]}
        for i in range(e - 1, a, -1):
            suffix[i] = back(suffix[i + 1], i)
        for i in range(a, e):
            w = weights[i]
            if w <= r and (suffix[i + 1] >> (r - w)) & 1:
                picked.append(i)
                r -= w
    assert r == 0
    return picked


def solve_greedy(
    instance: Instance,
    config: GreedyConfig | None = None,
    stats: SolverStats | None = None,
    engine: str = "auto",
) -> SubsetSolution | None:
    """Greedy sweep; ``None`` when no zero residual appears within the round bound.

    With a beam limit the search is no longer exhaustive, and ``None`` only
    means "not found".
    """
    _check_greedy_domain(instance)
    config = config or GreedyConfig()
    if stats is None:
        stats = SolverStats()
    if engine == "auto":
        engine = "bitset" if config.beam_limit is None else "tracked"
    if engine == "bitset" and config.beam_limit is not None:
        raise ValueError("the bitset engine does not support a beam limit")

    order = _sorted_order(instance)
    rounds = instance.n if config.round_bound is None else min(instance.n, config.round_bound)
    stats.extra["exhaustive"] = config.beam_limit is None
    if engine == "tracked":
        chosen = _sweep_tracked(instance, order, rounds, config.beam_limit, stats)
    elif engine == "bitset":
        chosen = _sweep_bitset(instance, order, rounds, stats)
    else:
        raise ValueError(f"unknown engine {engine!r}")
    if chosen is None:
        return None
    return SubsetSolution.from_indices(instance, chosen)


def variance_gap(instance: Instance, solution: SubsetSolution) -> dict:
    """Compare a solution's variance with the best over all solutions.

    Brute force, so only for small ``n``.  Singleton solutions count as
    variance 0.
    """
    from .baselines import brute_force_all

    everything = brute_force_all(instance)
    best = min(solution_variance(s)[0] for s in everything)
    ours = solution_variance(solution)[0]
    return {"variance": ours, "min_variance": best, "gap": ours - best, "solutions": len(everything)}
