"""Problem and solution data model shared by every solver.

Positions in the doubling residual sequence are 1-indexed.  Position ``k``
corresponds to the subset mask ``k - 1``: bit ``j - 1`` set means weight
``w_j`` has been subtracted from the target.
"""
from __future__ import annotations

import hashlib
import json
import operator
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Sequence

MAGNITUDE_LIMIT = 1 << 62


class SubsetSumError(Exception):
    """Base class for all errors raised by this package."""


class InstanceError(SubsetSumError, ValueError):
    """Malformed instance: parse failure, empty weight list, magnitude overflow."""


class PreconditionError(SubsetSumError, ValueError):
    """A solver was called on an instance outside its domain."""


class ResourceError(SubsetSumError, RuntimeError):
    """A configured resource bound (weight count, piece length, ...) was exceeded."""


class CertificateError(SubsetSumError, ValueError):
    """A candidate solution does not sum to the target."""


class PositionError(SubsetSumError, IndexError):
    pass


@dataclass(frozen=True)
class Instance:
    target: int
    weights: tuple[int, ...]

    def __post_init__(self):
        try:
            target = operator.index(self.target)
            weights = tuple(operator.index(w) for w in self.weights)
        except TypeError as exc:
            raise InstanceError(f"target and weights must be integers: {exc}") from None
        if not weights:
            raise InstanceError("weight list is empty")
        bound = abs(target) + sum(abs(w) for w in weights)
        if bound >= MAGNITUDE_LIMIT:
            raise InstanceError(
                f"|t| + sum|w_i| = {bound} exceeds the 64-bit residual bound 2**62"
            )
        object.__setattr__(self, "target", target)
        object.__setattr__(self, "weights", weights)

    @property
    def n(self) -> int:
        return len(self.weights)

    def weight(self, index: int) -> int:
        """Weight at a 1-based index."""
        return self.weights[index - 1]

    def digest(self) -> str:
        return hashlib.sha256(format_instance(self).encode()).hexdigest()[:16]


@dataclass(frozen=True)
class SubsetSolution:
    """A non-empty index set whose weights sum to ``target``.

    The sum is checked on construction, so holding one is a certificate.
    """

    indices: tuple[int, ...]
    values: tuple[int, ...]
    target: int

    def __post_init__(self):
        indices = tuple(self.indices)
        values = tuple(self.values)
        object.__setattr__(self, "indices", indices)
        object.__setattr__(self, "values", values)
        if not indices:
            raise CertificateError("a solution must be non-empty")
        if len(indices) != len(values):
            raise CertificateError("indices and values differ in length")
        if indices[0] < 1 or any(a >= b for a, b in zip(indices, indices[1:])):
            raise CertificateError(f"indices must be strictly increasing and >= 1: {indices}")
        if sum(values) != self.target:
            raise CertificateError(f"values {values} sum to {sum(values)}, not {self.target}")

    @classmethod
    def from_indices(cls, instance: Instance, indices: Iterable[int]) -> "SubsetSolution":
        idx = sorted(indices)
        if len(set(idx)) != len(idx):
            raise CertificateError(f"duplicate indices: {idx}")
        if idx and not (1 <= idx[0] and idx[-1] <= instance.n):
            raise CertificateError(f"indices {idx} out of range 1..{instance.n}")
        return cls(tuple(idx), tuple(instance.weight(i) for i in idx), instance.target)

    def check(self, instance: Instance) -> None:
        """Re-validate against an instance (bounds, value mapping, sum)."""
        if self.target != instance.target:
            raise CertificateError("solution target differs from instance target")
        if self.indices[-1] > instance.n:
            raise CertificateError(f"index {self.indices[-1]} out of range 1..{instance.n}")
        if any(instance.weight(i) != v for i, v in zip(self.indices, self.values)):
            raise CertificateError("solution values do not match instance weights")

    def __len__(self):
        return len(self.indices)


@dataclass
class SolverStats:
    """Counters filled in by solvers when a stats object is passed."""

    ops: int = 0
    rounds: int = 0
    peak_residuals: int = 0
    truncated: bool = False
    extra: dict = field(default_factory=dict)

    def as_dict(self) -> dict:
        d = {
            "ops": self.ops,
            "rounds": self.rounds,
            "peak_residuals": self.peak_residuals,
            "truncated": self.truncated,
        }
        d.update(self.extra)
        return d


def decode_position(k: int, n: int) -> tuple[int, ...]:
    """Indices subtracted at 1-based position ``k`` of an ``n``-weight sequence.

    Reads bit ``j - 1`` of ``k - 1``, i.e. bit ``j`` of ``2(k - 1)`` whose
    lowest bit is always zero padding.
    """
    if not 1 <= k <= (1 << n):
        raise PositionError(f"position {k} outside 1..2**{n}")
    mask = k - 1
    out = []
    j = 1
    while mask:
        if mask & 1:
            out.append(j)
        mask >>= 1
        j += 1
    return tuple(out)


def position_of(subset: Iterable[int], n: int) -> int:
    k = 1
    for j in set(subset):
        if not 1 <= j <= n:
            raise PositionError(f"index {j} outside 1..{n}")
        k += 1 << (j - 1)
    return k


def residual_at(instance: Instance, k: int) -> int:
    return instance.target - sum(instance.weight(j) for j in decode_position(k, instance.n))


# -- instance I/O ------------------------------------------------------------


def parse_instance(text: str) -> Instance:
    """Parse the two-line text format or the JSON object format."""
    stripped = text.strip()
    if stripped.startswith("{"):
        try:
            obj = json.loads(stripped)
        except json.JSONDecodeError as exc:
            raise InstanceError(f"bad JSON instance: {exc}") from None
        if not isinstance(obj, dict) or "target" not in obj or "weights" not in obj:
            raise InstanceError('JSON instance needs "target" and "weights"')
        target, weights = obj["target"], obj["weights"]
        if not isinstance(weights, list):
            raise InstanceError('"weights" must be an array of integers')
        if isinstance(target, bool) or any(isinstance(w, bool) for w in weights):
            raise InstanceError("booleans are not integers here")
        return Instance(target, tuple(weights))

    lines = [ln for ln in stripped.splitlines() if ln.strip()]
    if not lines:
        raise InstanceError("empty instance")
    if len(lines) > 2:
        raise InstanceError(f"expected 2 lines (target, weights), got {len(lines)}")
    try:
        target = int(lines[0].strip())
        weights = tuple(int(tok) for tok in lines[1].split()) if len(lines) > 1 else ()
    except ValueError as exc:
        raise InstanceError(f"bad integer in instance text: {exc}") from None
    return Instance(target, weights)


def load_instance(path: str | Path) -> Instance:
    return parse_instance(Path(path).read_text())


def format_instance(instance: Instance, fmt: str = "text") -> str:
    if fmt == "json":
        return json.dumps({"target": instance.target, "weights": list(instance.weights)})
    if fmt != "text":
        raise ValueError(f"unknown instance format {fmt!r}")
    return f"{instance.target}\n{' '.join(map(str, instance.weights))}\n"


def sorted_solutions(solutions: Sequence[SubsetSolution], n: int) -> list[SubsetSolution]:
    """Order solutions by their position in the doubling sequence."""
    return sorted(solutions, key=lambda s: position_of(s.indices, n))
