"""Integer partitions: conjugation, dominance order and enumeration.

A partition doubles as the Jordan type of a unipotent element: the parts are
the Jordan block sizes.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from functools import cached_property, lru_cache
from typing import Iterable, Iterator

MAX_ENUMERATE = 40


class PartitionError(ValueError):
    pass


@dataclass(frozen=True, order=True)
class Partition:
    """Weakly decreasing tuple of positive integers."""

    parts: tuple[int, ...]

    def __post_init__(self):
        parts = tuple(int(p) for p in self.parts)
        if any(p < 1 for p in parts):
            raise PartitionError(f"parts must be positive: {parts}")
        if any(parts[i] < parts[i + 1] for i in range(len(parts) - 1)):
            raise PartitionError(f"parts must be weakly decreasing: {parts}")
        object.__setattr__(self, "parts", parts)

    @classmethod
    def of(cls, parts: Iterable[int]) -> Partition:
        """Build from any iterable of parts; zeros dropped, order normalised."""
        return cls(tuple(sorted((p for p in parts if p != 0), reverse=True)))

    @classmethod
    def from_multiplicities(cls, mult: dict[int, int]) -> Partition:
        parts: list[int] = []
        for size in sorted(mult, reverse=True):
            parts.extend([size] * mult[size])
        return cls.of(parts)

    @property
    def n(self) -> int:
        return sum(self.parts)

    def __len__(self) -> int:
        return len(self.parts)

    def __iter__(self) -> Iterator[int]:
        return iter(self.parts)

    @cached_property
    def multiplicities(self) -> dict[int, int]:
        """Map block size i -> m_i, the number of parts equal to i."""
        return dict(sorted(Counter(self.parts).items()))

    def is_trivial(self) -> bool:
        return all(p == 1 for p in self.parts)

    def to_json(self) -> list[int]:
        return list(self.parts)

    def __str__(self) -> str:
        if not self.parts:
            return "()"
        chunks = []
        for size, m in sorted(self.multiplicities.items(), reverse=True):
            chunks.append(f"{size}^{m}" if m > 1 else str(size))
        return "(" + ",".join(chunks) + ")"


def conjugate(p: Partition) -> Partition:
    if not p.parts:
        return p
    return Partition(tuple(sum(1 for x in p.parts if x >= k) for k in range(1, p.parts[0] + 1)))


def _prefix_sums(parts: tuple[int, ...], length: int) -> list[int]:
    out, acc = [], 0
    for i in range(length):
        acc += parts[i] if i < len(parts) else 0
        out.append(acc)
    return out


def dominance_leq(p: Partition, q: Partition) -> bool:
    """True iff p is dominated by q (every prefix sum of p is at most q's)."""
    if p.n != q.n:
        raise PartitionError(f"incomparable sizes {p.n} and {q.n}")
    length = max(len(p), len(q))
    return all(a <= b for a, b in zip(_prefix_sums(p.parts, length), _prefix_sums(q.parts, length)))


def _descending(n: int, largest: int) -> Iterator[tuple[int, ...]]:
    if n == 0:
        yield ()
        return
    for first in range(min(n, largest), 0, -1):
        for rest in _descending(n - first, first):
            yield (first,) + rest


@lru_cache(maxsize=None)
def _enumerate_cached(n: int) -> tuple[Partition, ...]:
    return tuple(Partition(t) for t in _descending(n, n))


def enumerate_partitions(n: int) -> tuple[Partition, ...]:
    """All partitions of n in reverse-lexicographic order: (n) first, (1^n) last."""
    if not 1 <= n <= MAX_ENUMERATE:
        raise PartitionError(f"n={n} outside enumeration guard [1, {MAX_ENUMERATE}]")
    return _enumerate_cached(n)


def partitions_upto(n: int) -> tuple[Partition, ...]:
    """Partitions of 0..n; includes the empty partition of 0."""
    out = [Partition(())]
    for k in range(1, n + 1):
        out.extend(enumerate_partitions(k))
    return tuple(out)


def richardson_blocks(p: Partition) -> tuple[int, ...]:
    """Parabolic block sizes whose Richardson class has Jordan type p."""
    return conjugate(p).parts


def parse_partition(text: str) -> Partition:
    """Parse "3,1", "[3,1]" or the exponent form "2^2,1^8"."""
    body = text.strip().strip("[]()")
    if not body:
        return Partition(())
    parts: list[int] = []
    for token in body.split(","):
        token = token.strip()
        if not token:
            continue
        if "^" in token:
            size, mult = token.split("^")
            parts.extend([int(size)] * int(mult))
        else:
            parts.append(int(token))
    return Partition.of(parts)
