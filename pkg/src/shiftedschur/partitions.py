"""Strict partitions, shifted-diagram profiles, Maya diagrams and sampling."""

from __future__ import annotations

import json
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator

import numpy as np


@dataclass(frozen=True, order=True)
class StrictPartition:
    parts: tuple[int, ...] = ()

    def __post_init__(self):
        parts = tuple(int(x) for x in self.parts)
        if any(x <= 0 for x in parts):
            raise ValueError(f"parts must be positive: {parts}")
        if any(x <= y for x, y in zip(parts, parts[1:])):
            raise ValueError(f"parts must be strictly decreasing: {parts}")
        object.__setattr__(self, "parts", parts)

    @classmethod
    def of(cls, *parts: int) -> "StrictPartition":
        return cls(tuple(sorted(parts, reverse=True)))

    def __len__(self):
        return len(self.parts)

    def __iter__(self):
        return iter(self.parts)

    def __contains__(self, item):
        return item in self.parts

    @property
    def length(self) -> int:
        return len(self.parts)

    @property
    def size(self) -> int:
        return sum(self.parts)

    @property
    def parity(self) -> int:
        """0 for even length, 1 for odd length."""
        return len(self.parts) % 2

    def maya(self) -> "MayaView":
        return MayaView(frozenset(self.parts))

    def to_json(self) -> str:
        return json.dumps(list(self.parts))

    @classmethod
    def from_json(cls, text: str) -> "StrictPartition":
        return cls.of(*json.loads(text))

    def __str__(self):
        return "(" + ",".join(map(str, self.parts)) + ")"


@dataclass(frozen=True)
class MayaView:
    """Occupied sites (white stones) of the Maya diagram on the positive integers."""

    occupied: frozenset[int]

    def partition(self) -> StrictPartition:
        return StrictPartition.of(*self.occupied)

    def stones(self, length: int) -> str:
        """Sites ``1..length`` as a string, ``o`` for white, ``x`` for black."""
        return "".join("o" if i in self.occupied else "x" for i in range(1, length + 1))


def profile(lam: StrictPartition, x: int) -> int:
    """Height of the shifted Young diagram at integer ``x >= 0``."""
    if x < 0:
        raise ValueError("profile is defined for x >= 0")
    return x + 2 * sum(1 for part in lam.parts if x < part)


@lru_cache(maxsize=None)
def _distinct(n: int, largest: int) -> tuple[tuple[int, ...], ...]:
    # partitions of n into distinct parts, each part <= largest
    if n == 0:
        return ((),)
    out = []
    for first in range(min(n, largest), 0, -1):
        for rest in _distinct(n - first, first - 1):
            out.append((first,) + rest)
    return tuple(out)


def strict_partitions_of(n: int) -> list[StrictPartition]:
    return [StrictPartition(p) for p in _distinct(n, n)]


def enumerate_strict(max_size: int) -> Iterator[StrictPartition]:
    """Every strict partition with ``|lam| <= max_size``, in nondecreasing size."""
    if max_size < 0:
        raise ValueError("max_size must be nonnegative")
    for n in range(max_size + 1):
        for parts in _distinct(n, n):
            yield StrictPartition(parts)


def count_distinct(n: int) -> int:
    return len(_distinct(n, n))


class TruncationError(RuntimeError):
    pass


def sample(params, max_size: int, count: int, seed: int, tail_tol: float = 1e-6) -> list[StrictPartition]:
    """Draw from the shifted Schur measure by inverse CDF over enumerated weights.

    Raises TruncationError when the mass outside ``|lam| <= max_size``
    exceeds ``tail_tol`` (relative to the total).
    """
    from .schur_q import partition_function, weights

    lams = list(enumerate_strict(max_size))
    w = weights(lams, params)
    Z = partition_function(params)
    tail = 1.0 - np.sum(w) / Z
    if tail > tail_tol:
        raise TruncationError(f"tail mass {tail:.3e} beyond |lam| <= {max_size} exceeds {tail_tol}")
    cdf = np.cumsum(w)
    cdf /= cdf[-1]
    rng = np.random.Generator(np.random.Philox(seed))
    u = rng.random(count)
    idx = np.searchsorted(cdf, u, side="right")
    idx = np.minimum(idx, len(lams) - 1)
    return [lams[i] for i in idx]
