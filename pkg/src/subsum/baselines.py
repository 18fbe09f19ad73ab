"""Reference procedures: brute force, Bellman's table, capped sumsets, ColorCoding.

``brute_force_all`` is the test oracle for every other solver and is kept
deliberately naive.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import combinations
from typing import Iterable

import numpy as np

from .core import (
    Instance,
    PreconditionError,
    ResourceError,
    SolverStats,
    SubsetSolution,
    sorted_solutions,
)

BRUTE_FORCE_MAX_N = 20


class SumsetSet:
    """Set of integers in ``[0, t]`` stored as a dense membership bitmap."""

    __slots__ = ("t", "bits")

    def __init__(self, t: int, members: Iterable[int] = ()):
        if t < 0:
            raise ValueError("cap must be non-negative")
        self.t = int(t)
        self.bits = np.zeros(self.t + 1, dtype=bool)
        for m in members:
            if 0 <= m <= self.t:
                self.bits[m] = True

    @classmethod
    def from_bitmap(cls, bits: np.ndarray) -> "SumsetSet":
        s = cls.__new__(cls)
        s.t = len(bits) - 1
        s.bits = bits
        return s

    def __contains__(self, x) -> bool:
        return 0 <= x <= self.t and bool(self.bits[x])

    def __iter__(self):
        return (int(i) for i in np.flatnonzero(self.bits))

    def __len__(self):
        return int(self.bits.sum())

    def __eq__(self, other):
        if isinstance(other, SumsetSet):
            return set(self) == set(other)
        if isinstance(other, (set, frozenset)):
            return set(self) == other
        return NotImplemented

    def __or__(self, other: "SumsetSet") -> "SumsetSet":
        if self.t != other.t:
            raise ValueError("cannot union sumsets with different caps")
        return SumsetSet.from_bitmap(self.bits | other.bits)

    def __repr__(self):
        return f"SumsetSet(t={self.t}, {sorted(self)})"


def _as_sumset(x, t: int) -> SumsetSet:
    if isinstance(x, SumsetSet) and x.t == t:
        return x
    return SumsetSet(t, x)


def capped_sumset(a, b, t: int, stats: SolverStats | None = None) -> SumsetSet:
    """``{x + y : x in a+{0}, y in b+{0}}`` restricted to ``[0, t]``."""
    if any(x < 0 for x in a) or any(y < 0 for y in b):
        raise PreconditionError("capped sumsets are defined on non-negative integers")
    A, B = _as_sumset(a, t), _as_sumset(b, t)
    if len(A) < len(B):
        A, B = B, A
    out = A.bits.copy()
    out[0] = True
    for y in B:
        if y == 0:
            continue
        out[y:] |= A.bits[: t + 1 - y]
        out[y] = True
        if stats is not None:
            stats.ops += t + 1 - y
    return SumsetSet.from_bitmap(out)


@dataclass(frozen=True)
class ColorCodingConfig:
    k: int
    delta: float
    seed: int | None = 0

    def __post_init__(self):
        if self.k < 1:
            raise ValueError("k must be >= 1")
        if not 0 < self.delta < 1:
            raise ValueError("delta must lie in (0, 1)")

    @property
    def rounds(self) -> int:
        r = math.log(1 / self.delta) / math.log(4 / 3)
        # absorb float noise when 1/delta is an exact power of 4/3
        return max(1, math.ceil(r - 1e-9))


def color_coding(
    z: Iterable[int], t: int, config: ColorCodingConfig, stats: SolverStats | None = None
) -> SumsetSet:
    """Randomized cover of subset sums of ``z`` in ``[0, t]`` with at most ``k`` terms.

    Every returned value is a true subset sum.  Each round spreads ``z`` over
    ``k**2`` buckets, folds them left to right with :func:`capped_sumset` and
    the round results are unioned.  Round ``j`` draws from its own
    ``SeedSequence`` child, so results do not depend on round scheduling.
    """
    z = list(z)
    if len(set(z)) != len(z) or any(x <= 0 for x in z):
        raise PreconditionError("color_coding needs distinct positive integers")
    if t < 0:
        raise PreconditionError("target must be non-negative")
    buckets = config.k * config.k
    children = np.random.SeedSequence(config.seed).spawn(config.rounds)
    result = SumsetSet(t, [0])
    for child in children:
        rng = np.random.Generator(np.random.PCG64(child))
        colors = rng.integers(0, buckets, size=len(z))
        acc = SumsetSet(t, [0])
        for c in range(buckets):
            members = [x for x, col in zip(z, colors) if col == c]
            acc = capped_sumset(acc, members, t, stats)
        result = result | acc
        if stats is not None:
            stats.rounds += 1
    return result


def brute_force_all(instance: Instance) -> list[SubsetSolution]:
    """All non-empty index subsets summing to ``t``, ordered by sequence position."""
    n = instance.n
    if n > BRUTE_FORCE_MAX_N:
        raise ResourceError(f"brute force limited to n <= {BRUTE_FORCE_MAX_N}, got {n}")
    found = []
    for size in range(1, n + 1):
        for combo in combinations(range(1, n + 1), size):
            if sum(instance.weight(i) for i in combo) == instance.target:
                found.append(SubsetSolution.from_indices(instance, combo))
    return sorted_solutions(found, n)


def brute_force_sumset(z: Iterable[int], t: int, max_size: int | None = None) -> set[int]:
    """Subset sums of ``z`` within ``[0, t]``, optionally limited to ``max_size`` terms."""
    z = list(z)
    top = len(z) if max_size is None else min(max_size, len(z))
    return {s for r in range(top + 1) for c in combinations(z, r) if 0 <= (s := sum(c)) <= t}


def bellman_decides(instance: Instance, stats: SolverStats | None = None) -> bool:
    """Bellman's table ``T[A_j, s] = max(T[A_{j-1}, s], T[A_{j-1}, s - w_j])``.

    Rows are kept one at a time.  ``stats.ops`` counts table lookups,
    ``n * (t + 1)`` in total.
    """
    t = instance.target
    if t < 0 or any(w < 1 for w in instance.weights):
        raise PreconditionError("Bellman's table needs t >= 0 and weights >= 1")
    row = np.zeros(t + 1, dtype=bool)
    row[0] = True
    for w in instance.weights:
        nxt = row.copy()
        if w <= t:
            nxt[w:] |= row[: t + 1 - w]
        row = nxt
        if stats is not None:
            stats.ops += t + 1
            stats.rounds += 1
    if stats is not None:
        stats.peak_residuals = max(stats.peak_residuals, 2 * (t + 1))
    return bool(row[t])
