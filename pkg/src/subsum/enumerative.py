"""Exhaustive solver over the doubling residual sequence.

The sequence starts as ``[t]``; processing weight ``w_j`` appends a copy of
the whole sequence with ``w_j`` subtracted.  Every zero marks a solution,
recoverable from its position alone (see :func:`subsum.core.decode_position`).

The full sequence has ``2**n`` entries, so it is never held in memory at
once.  The low ``L = log2(chunk_size)`` weights are expanded into a single
buffer of ``chunk_size`` residuals; each setting of the remaining high bits
shifts that buffer by a constant, applied in place.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator

import numpy as np

from .core import (
    Instance,
    PreconditionError,
    ResourceError,
    SolverStats,
    SubsetSolution,
    decode_position,
)

DEFAULT_MAX_N = 30
DEFAULT_CHUNK = 1 << 20


@dataclass(frozen=True)
class EnumerationConfig:
    max_n: int = DEFAULT_MAX_N
    chunk_size: int = DEFAULT_CHUNK
    solution_limit: int | None = None

    def __post_init__(self):
        if self.chunk_size < 1 or self.chunk_size & (self.chunk_size - 1):
            raise ValueError(f"chunk_size must be a power of two, got {self.chunk_size}")
        if not 1 <= self.max_n <= 62:
            raise ValueError(f"max_n must be in 1..62, got {self.max_n}")
        if self.solution_limit is not None and self.solution_limit < 1:
            raise ValueError("solution_limit must be positive")


@dataclass
class ResidualBlock:
    """Contiguous run of the doubling sequence starting at 1-based ``start``."""

    start: int
    values: np.ndarray

    def __len__(self):
        return len(self.values)

    def zero_positions(self) -> np.ndarray:
        return np.flatnonzero(self.values == 0) + self.start


class SolutionList(list):
    """List of solutions; ``truncated`` is set when a solution limit cut it short."""

    truncated: bool = False


def expand_round(block: ResidualBlock, w: int) -> ResidualBlock:
    """One doubling step: ``T -> T || (T - w)``."""
    if block.start != 1:
        raise PreconditionError("expand_round needs a sequence prefix (start == 1)")
    values = np.asarray(block.values, dtype=np.int64)
    return ResidualBlock(1, np.concatenate([values, values - np.int64(w)]))


def doubling_sequence(instance: Instance) -> np.ndarray:
    """Materialize all ``2**n`` residuals.  Only sensible for small ``n``."""
    block = ResidualBlock(1, np.array([instance.target], dtype=np.int64))
    for w in instance.weights:
        block = expand_round(block, w)
    return block.values


def iter_residual_blocks(
    instance: Instance, chunk_size: int = DEFAULT_CHUNK, stats: SolverStats | None = None
) -> Iterator[ResidualBlock]:
    """Yield the doubling sequence in ascending blocks of at most ``chunk_size``.

    The yielded blocks share one buffer which is overwritten on the next
    iteration; copy ``values`` to keep them.
    """
    n = instance.n
    low = min(n, chunk_size.bit_length() - 1)
    size = 1 << low
    buf = np.empty(size, dtype=np.int64)
    buf[0] = instance.target
    m = 1
    for w in instance.weights[:low]:
        np.subtract(buf[:m], w, out=buf[m : 2 * m])
        m *= 2
    if stats is not None:
        stats.ops += size - 1
        stats.peak_residuals = max(stats.peak_residuals, size)

    high = instance.weights[low:]
    prev = 0
    for h in range(1 << len(high)):
        shift = 0
        bits, j = h, 0
        while bits:
            if bits & 1:
                shift += high[j]
            bits >>= 1
            j += 1
        if shift != prev:
            buf -= shift - prev
            if stats is not None:
                stats.ops += size
            prev = shift
        yield ResidualBlock(h * size + 1, buf)


def solve_all(
    instance: Instance,
    config: EnumerationConfig | None = None,
    stats: SolverStats | None = None,
) -> SolutionList:
    """Every non-empty subset summing to the target, by ascending position.

    The empty subset at position 1 is never reported, even when ``t == 0``.
    """
    config = config or EnumerationConfig()
    if instance.n > config.max_n:
        raise ResourceError(
            f"n = {instance.n} exceeds max_n = {config.max_n} for exhaustive enumeration"
        )
    if stats is None:
        stats = SolverStats()
    limit = config.solution_limit
    positions: list[int] = []
    truncated = False
    for block in iter_residual_blocks(instance, config.chunk_size, stats):
        zeros = block.zero_positions()
        if block.start == 1 and zeros.size and zeros[0] == 1:
            zeros = zeros[1:]
        if zeros.size == 0:
            continue
        if limit is not None and len(positions) + zeros.size > limit:
            positions.extend(int(k) for k in zeros[: limit - len(positions)])
            truncated = True
            break
        positions.extend(int(k) for k in zeros)

    stats.rounds = instance.n
    stats.truncated = truncated
    out = SolutionList(
        SubsetSolution.from_indices(instance, decode_position(k, instance.n)) for k in positions
    )
    out.truncated = truncated
    return out
