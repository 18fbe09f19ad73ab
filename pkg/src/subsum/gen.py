"""Seeded instance generators (PCG64 via ``numpy.random.Generator``).

Random targets are drawn uniformly from ``[1, sum(w)]``.  This is a
convention of this package, not a property of any particular benchmark.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import Instance, SubsetSolution


@dataclass(frozen=True)
class GenSpec:
    n: int
    bit_length: int = 20
    planted_size: int | None = None
    seed: int | None = 0

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("n must be >= 1")
        if not 1 <= self.bit_length <= 40:
            raise ValueError("bit_length must be in [1, 40]")
        if self.planted_size is not None and not 1 <= self.planted_size <= self.n:
            raise ValueError("planted_size must be in [1, n]")


def _weights(spec: GenSpec, rng: np.random.Generator) -> list[int]:
    return [int(x) for x in rng.integers(1, 1 << spec.bit_length, size=spec.n)]


def gen_random(spec: GenSpec) -> Instance:
    if spec.planted_size is not None:
        raise ValueError("gen_random takes no planted_size; use gen_planted")
    rng = np.random.Generator(np.random.PCG64(spec.seed))
    weights = _weights(spec, rng)
    target = int(rng.integers(1, sum(weights), endpoint=True))
    return Instance(target, tuple(weights))


def gen_planted(spec: GenSpec) -> tuple[Instance, SubsetSolution]:
    """Instance whose target is the sum of ``planted_size`` random weights."""
    if spec.planted_size is None:
        raise ValueError("gen_planted needs planted_size")
    rng = np.random.Generator(np.random.PCG64(spec.seed))
    weights = _weights(spec, rng)
    picked = sorted(int(i) + 1 for i in rng.choice(spec.n, size=spec.planted_size, replace=False))
    instance = Instance(sum(weights[i - 1] for i in picked), tuple(weights))
    return instance, SubsetSolution.from_indices(instance, picked)


def trial_seed(seed: int, *key: int) -> int:
    """Stable 63-bit seed derived from a base seed and integer coordinates."""
    state = np.random.SeedSequence([seed, *key]).generate_state(2, dtype=np.uint32)
    return (int(state[0]) << 31) ^ int(state[1])
