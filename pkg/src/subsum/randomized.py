"""Probabilistic solver: doubling expansion over short random pieces.

Each round draws ``piece_length`` indices uniformly with replacement,
keeps the distinct ones in ascending order, and expands the doubling
sequence over that piece, stopping at the first zero.  A returned solution
is always certified; ``None`` only means nothing was found.

Randomness comes from ``numpy.random.Generator`` with the PCG64 bit
generator, seeded from ``ProbeConfig.seed``.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .core import Instance, ResourceError, SolverStats, SubsetSolution, decode_position
from .enumerative import DEFAULT_MAX_N


@dataclass(frozen=True)
class ProbeConfig:
    piece_length: int
    repeat_times: int
    seed: int | None = 0
    max_n: int = DEFAULT_MAX_N

    def __post_init__(self):
        if self.piece_length < 1:
            raise ValueError("piece_length must be >= 1")
        if self.repeat_times < 1:
            raise ValueError("repeat_times must be >= 1")


def make_rng(seed: int | None) -> np.random.Generator:
    return np.random.Generator(np.random.PCG64(seed))


def piece_from_draws(instance: Instance, draws: Sequence[int]) -> list[tuple[int, int]]:
    """Deduplicate 1-based index draws into ascending ``(index, weight)`` pairs."""
    return [(i, instance.weight(i)) for i in sorted(set(int(d) for d in draws))]


def sample_piece(
    instance: Instance, piece_length: int, rng: np.random.Generator
) -> list[tuple[int, int]]:
    draws = rng.integers(1, instance.n + 1, size=piece_length)
    return piece_from_draws(instance, draws)


def _first_zero(target: int, piece: list[tuple[int, int]], stats: SolverStats) -> int | None:
    # Only the freshly appended half can hold a new zero; position 1 (the
    # empty subset) is never inspected.
    buf = np.empty(1 << len(piece), dtype=np.int64)
    buf[0] = target
    m = 1
    for _, w in piece:
        fresh = buf[m : 2 * m]
        np.subtract(buf[:m], w, out=fresh)
        stats.ops += m
        hits = np.flatnonzero(fresh == 0)
        if hits.size:
            return m + int(hits[0]) + 1
        m *= 2
    return None


def solve_probabilistic(
    instance: Instance, config: ProbeConfig, stats: SolverStats | None = None
) -> SubsetSolution | None:
    if config.piece_length > config.max_n:
        raise ResourceError(
            f"piece_length = {config.piece_length} exceeds max_n = {config.max_n}"
        )
    if stats is None:
        stats = SolverStats()
    rng = make_rng(config.seed)
    for r in range(1, config.repeat_times + 1):
        stats.rounds = r
        piece = sample_piece(instance, config.piece_length, rng)
        stats.peak_residuals = max(stats.peak_residuals, 1 << len(piece))
        k = _first_zero(instance.target, piece, stats)
        if k is not None:
            local = decode_position(k, len(piece))
            return SubsetSolution.from_indices(instance, (piece[j - 1][0] for j in local))
    return None
