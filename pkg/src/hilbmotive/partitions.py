"""Partitions stored by multiplicity, plus symmetric-group conjugacy data."""
from __future__ import annotations

import json
import math
from functools import lru_cache, total_ordering
from typing import Iterator, Mapping


@total_ordering
class Partition:
    """A partition alpha = (1^{a_1}, 2^{a_2}, ...) kept as the map i -> a_i."""

    __slots__ = ("_mult", "_key")

    def __init__(self, multiplicities: Mapping[int, int] = ()):
        items = multiplicities.items() if isinstance(multiplicities, Mapping) else multiplicities
        mult: dict[int, int] = {}
        for i, a in items:
            i, a = int(i), int(a)
            if i < 1 or a < 0:
                raise ValueError(f"bad multiplicity {i}^{a}")
            if a:
                mult[i] = mult.get(i, 0) + a
        self._mult = dict(sorted(mult.items()))
        self._key = tuple(self._mult.items())

    @classmethod
    def from_parts(cls, parts) -> Partition:
        mult: dict[int, int] = {}
        for p in parts:
            mult[p] = mult.get(p, 0) + 1
        return cls(mult)

    @property
    def multiplicities(self) -> dict[int, int]:
        return dict(self._mult)

    def mult(self, i: int) -> int:
        return self._mult.get(i, 0)

    @property
    def n(self) -> int:
        return sum(i * a for i, a in self._mult.items())

    @property
    def length(self) -> int:
        return sum(self._mult.values())

    def parts(self) -> tuple[int, ...]:
        """Parts in weakly decreasing order."""
        return tuple(i for i, a in sorted(self._mult.items(), reverse=True) for _ in range(a))

    def __eq__(self, other):
        return isinstance(other, Partition) and self._key == other._key

    def __lt__(self, other):
        return self.parts() < other.parts()

    def __hash__(self):
        return hash(self._key)

    def __repr__(self):
        return f"Partition({self})"

    def __str__(self):
        if not self._mult:
            return "()"
        return "(" + ",".join(str(i) if a == 1 else f"{i}^{a}" for i, a in self._mult.items()) + ")"

    def to_json(self) -> dict[str, int]:
        return {str(i): a for i, a in self._mult.items()}

    @classmethod
    def from_json(cls, data) -> Partition:
        if isinstance(data, str):
            data = json.loads(data)
        return cls({int(k): v for k, v in data.items()})

    @classmethod
    def parse(cls, text: str) -> Partition:
        """Inverse of ``str``: accepts ``"(1^2,3)"`` and plain part lists ``"3,1,1"``."""
        body = text.strip().strip("()").strip()
        if not body:
            return cls()
        mult: dict[int, int] = {}
        for tok in body.split(","):
            if "^" in tok:
                i, a = tok.split("^")
            else:
                i, a = tok, 1
            mult[int(i)] = mult.get(int(i), 0) + int(a)
        return cls(mult)


def enumerate_partitions(n: int) -> list[Partition]:
    """All partitions of n in reverse-lexicographic order of their part lists.

    For n = 4 this is (4), (3,1), (2,2), (2,1,1), (1,1,1,1).
    """
    if n < 0:
        raise ValueError("n must be nonnegative")
    return list(_partitions_cached(n))


@lru_cache(maxsize=None)
def _partitions_cached(n: int) -> tuple[Partition, ...]:
    return tuple(Partition.from_parts(p) for p in _parts(n, n))


def _parts(n: int, largest: int) -> Iterator[tuple[int, ...]]:
    if n == 0:
        yield ()
        return
    for head in range(min(n, largest), 0, -1):
        for tail in _parts(n - head, head):
            yield (head,) + tail


def partition_combine(alpha: Partition, beta: Partition, l: int = 1) -> Partition:
    """l*alpha + beta, i.e. multiplicities l*a_i + b_i."""
    if l < 0:
        raise ValueError("l must be nonnegative")
    mult = {i: l * a for i, a in alpha.multiplicities.items()}
    for i, b in beta.multiplicities.items():
        mult[i] = mult.get(i, 0) + b
    return Partition(mult)


def age_and_centralizer(alpha: Partition) -> tuple[int, int]:
    """Age and centralizer order of a permutation of cycle type alpha acting on S^n.

    An i-cycle has eigenvalues exp(2 pi i j/i), j = 0..i-1, each twice on the
    surface power, so its age is i - 1; the centralizer order is
    prod_i i^{a_i} a_i!.
    """
    age = alpha.n - alpha.length
    z = 1
    for i, a in alpha.multiplicities.items():
        z *= i ** a * math.factorial(a)
    return age, z


def partition_count(n: int) -> int:
    """p(n) through Euler's pentagonal-number recurrence (independent of enumeration)."""
    return _pentagonal_table(n)[n]


@lru_cache(maxsize=None)
def _pentagonal_table(n: int) -> tuple[int, ...]:
    p = [1] + [0] * n
    for m in range(1, n + 1):
        total, k = 0, 1
        while True:
            g1 = k * (3 * k - 1) // 2
            if g1 > m:
                break
            sign = 1 if k % 2 else -1
            total += sign * p[m - g1]
            g2 = k * (3 * k + 1) // 2
            if g2 <= m:
                total += sign * p[m - g2]
            k += 1
        p[m] = total
    return tuple(p)
