"""Compositions, partitions with heights, and harmonic-number tables."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb, factorial, prod
from typing import List, Tuple

__all__ = [
    "Composition",
    "Partition",
    "HarmonicTable",
    "enumerate_compositions",
    "enumerate_partitions",
    "harmonic",
    "curly_h",
    "binomial",
    "run_lengths",
]

TABLE_SIZE = 64


@dataclass(frozen=True)
class Composition:
    """An ordered sequence of positive integers."""

    parts: Tuple[int, ...]

    def __post_init__(self):
        if any(p < 1 for p in self.parts):
            raise ValueError(f"composition parts must be positive: {self.parts}")

    @property
    def length(self) -> int:
        return len(self.parts)

    @property
    def weight(self) -> int:
        return sum(self.parts)

    def __iter__(self):
        return iter(self.parts)

    def __len__(self):
        return len(self.parts)

    def __getitem__(self, i):
        return self.parts[i]


def run_lengths(parts) -> Tuple[int, ...]:
    """Lengths of the maximal runs of equal consecutive entries."""
    out: List[int] = []
    prev = None
    for p in parts:
        if out and p == prev:
            out[-1] += 1
        else:
            out.append(1)
        prev = p
    return tuple(out)


@dataclass(frozen=True)
class Partition(Composition):
    """A non-decreasing composition together with its height."""

    def __post_init__(self):
        super().__post_init__()
        if any(a > b for a, b in zip(self.parts, self.parts[1:])):
            raise ValueError(f"partition parts must be non-decreasing: {self.parts}")

    @property
    def height(self) -> Tuple[int, ...]:
        return run_lengths(self.parts)

    @property
    def height_factorial(self) -> int:
        return prod(factorial(h) for h in self.height)


def enumerate_compositions(weight: int) -> List[Composition]:
    """All ``2**(weight-1)`` compositions of ``weight``.

    >>> [c.parts for c in enumerate_compositions(3)]
    [(1, 1, 1), (1, 2), (2, 1), (3,)]
    """
    if weight < 1:
        raise ValueError(f"composition weight must be >= 1, got {weight}")
    return [Composition(p) for p in _compositions(weight)]


@lru_cache(maxsize=None)
def _compositions(w: int) -> Tuple[Tuple[int, ...], ...]:
    if w == 0:
        return ((),)
    out = []
    for first in range(1, w + 1):
        for rest in _compositions(w - first):
            out.append((first,) + rest)
    return tuple(out)


def enumerate_partitions(weight: int, max_part: int = None) -> List[Partition]:
    """Partitions of ``weight`` (non-decreasing) with parts ``<= max_part``."""
    if weight < 1:
        raise ValueError(f"partition weight must be >= 1, got {weight}")
    if max_part is None:
        max_part = weight
    return [Partition(p) for p in _partitions(weight, 1, max_part)]


@lru_cache(maxsize=None)
def _partitions(w: int, lo: int, hi: int) -> Tuple[Tuple[int, ...], ...]:
    if w == 0:
        return ((),)
    out = []
    for first in range(lo, min(w, hi) + 1):
        for rest in _partitions(w - first, first, hi):
            out.append((first,) + rest)
    return tuple(out)


class HarmonicTable:
    """Memoized exact harmonic numbers ``H_s`` and the sums ``curly_h(a, b)``."""

    def __init__(self, size: int = TABLE_SIZE):
        self.size = size
        self._h = [Fraction(0)]
        for i in range(1, size + 1):
            self._h.append(self._h[-1] + Fraction(1, i))
        self._ch = {}

    def harmonic(self, s: int) -> Fraction:
        if s < 0:
            raise ValueError(f"harmonic index must be >= 0, got {s}")
        while s >= len(self._h):
            self._h.append(self._h[-1] + Fraction(1, len(self._h)))
        return self._h[s]

    def curly_h(self, a: int, b: int) -> Fraction:
        if a < 0 or a > b:
            raise ValueError(f"curly_h needs 0 <= a <= b, got a={a}, b={b}")
        key = (a, b)
        v = self._ch.get(key)
        if v is None:
            v = sum(
                (self.harmonic(i) * Fraction(comb(a, i), comb(b, i)) for i in range(1, a + 1)),
                Fraction(0),
            )
            self._ch[key] = v
        return v


_TABLE = HarmonicTable()


def harmonic(s: int) -> Fraction:
    """``H_s = 1 + 1/2 + ... + 1/s``, with ``H_0 = 0``."""
    return _TABLE.harmonic(s)


def curly_h(a: int, b: int) -> Fraction:
    """``sum_{i=1..a} H_i * C(a, i) / C(b, i)``."""
    return _TABLE.curly_h(a, b)


def binomial(n: int, k: int) -> int:
    """``C(n, k)``, zero outside ``0 <= k <= n``."""
    if k < 0 or n < 0 or k > n:
        return 0
    return comb(n, k)
