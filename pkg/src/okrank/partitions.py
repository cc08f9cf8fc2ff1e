"""Partitions and overpartitions: data types, enumeration, successive Durfee
squares and the classical rank statistics.

Overpartitions are kept in a canonical order: values weakly decreasing, and
the overlined copy of a value (there is at most one) comes before the plain
copies.  The text format is comma separated with a trailing ``o`` marking an
overlined part, e.g. ``"13,10,9,7o,6,4o,4,4,3,1,1,1"``.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

from .series import DomainError

__all__ = [
    "Overpartition",
    "Partition",
    "ParseError",
    "conjugate",
    "count_overpartitions",
    "count_partitions",
    "crank",
    "d_rank",
    "durfee_sizes",
    "dyson_rank",
    "enumerate_overpartitions",
    "enumerate_partitions",
    "generalized_durfee",
    "iter_overpartitions",
    "k_rank",
    "parse_overpartition",
    "parse_partition",
    "parts_below_durfee",
    "rank_stat",
]


class ParseError(ValueError):
    """Malformed partition or overpartition text."""


@dataclass(frozen=True)
class Partition:
    parts: tuple[int, ...] = ()

    def __post_init__(self):
        parts = tuple(int(p) for p in self.parts)
        if any(p <= 0 for p in parts):
            raise ValueError(f"parts must be positive: {parts}")
        if any(parts[i] < parts[i + 1] for i in range(len(parts) - 1)):
            raise ValueError(f"parts must be weakly decreasing: {parts}")
        object.__setattr__(self, "parts", parts)

    @classmethod
    def of(cls, parts: Iterable[int]) -> "Partition":
        """Partition from parts in any order."""
        return cls(tuple(sorted(parts, reverse=True)))

    @classmethod
    def _trusted(cls, parts: tuple[int, ...]) -> "Partition":
        obj = object.__new__(cls)
        object.__setattr__(obj, "parts", parts)
        return obj

    @property
    def weight(self) -> int:
        return sum(self.parts)

    @property
    def largest(self) -> int:
        return self.parts[0] if self.parts else 0

    def __len__(self):
        return len(self.parts)

    def __iter__(self):
        return iter(self.parts)

    def __getitem__(self, i):
        return self.parts[i]

    def __bool__(self):
        return bool(self.parts)

    def __str__(self):
        return ",".join(map(str, self.parts))


@dataclass(frozen=True)
class Overpartition:
    parts: tuple[tuple[int, bool], ...] = ()

    def __post_init__(self):
        parts = tuple((int(v), bool(o)) for v, o in self.parts)
        seen_over = set()
        for i, (v, o) in enumerate(parts):
            if v <= 0:
                raise ValueError(f"parts must be positive: {v}")
            if o:
                if v in seen_over:
                    raise ValueError(f"value {v} is overlined twice")
                seen_over.add(v)
            if i:
                pv, po = parts[i - 1]
                if pv < v:
                    raise ValueError("values must be weakly decreasing")
                if pv == v and o and not po:
                    raise ValueError(f"overlined {v} must precede its plain copies")
        object.__setattr__(self, "parts", parts)

    @classmethod
    def of(cls, plain: Iterable[int] = (), overlined: Iterable[int] = ()) -> "Overpartition":
        """Overpartition from a multiset of plain parts and a set of overlined values."""
        over = list(overlined)
        if len(set(over)) != len(over):
            raise ValueError("an overlined value may appear only once")
        items = [(v, False) for v in plain] + [(v, True) for v in over]
        return cls(tuple(sorted(items, key=lambda p: (-p[0], not p[1]))))

    @classmethod
    def _trusted(cls, parts: tuple[tuple[int, bool], ...]) -> "Overpartition":
        obj = object.__new__(cls)
        object.__setattr__(obj, "parts", parts)
        return obj

    @classmethod
    def from_partition(cls, p: Partition) -> "Overpartition":
        return cls._trusted(tuple((v, False) for v in p.parts))

    @property
    def values(self) -> tuple[int, ...]:
        return tuple(v for v, _ in self.parts)

    @property
    def overlined(self) -> tuple[int, ...]:
        """Overlined values, descending."""
        return tuple(v for v, o in self.parts if o)

    @property
    def plain(self) -> tuple[int, ...]:
        """Non-overlined values, descending."""
        return tuple(v for v, o in self.parts if not o)

    @property
    def weight(self) -> int:
        return sum(v for v, _ in self.parts)

    @property
    def largest(self) -> int:
        return self.parts[0][0] if self.parts else 0

    @property
    def overline_count(self) -> int:
        return sum(1 for _, o in self.parts if o)

    def underlying(self) -> Partition:
        return Partition._trusted(self.values)

    def __len__(self):
        return len(self.parts)

    def __iter__(self):
        return iter(self.parts)

    def __bool__(self):
        return bool(self.parts)

    def __str__(self):
        return format_overpartition(self)


# ---------------------------------------------------------------- text format


def _tokens(text: str) -> list[str]:
    text = text.strip()
    if not text:
        return []
    return [t.strip() for t in text.split(",")]


def parse_overpartition(text: str) -> Overpartition:
    """Parse ``"7o,6,4o,4"``; the text must already be in canonical order."""
    parts = []
    for tok in _tokens(text):
        over = tok.endswith("o")
        digits = tok[:-1] if over else tok
        if not digits.isdigit():
            raise ParseError(f"bad part {tok!r}")
        parts.append((int(digits), over))
    try:
        return Overpartition(tuple(parts))
    except ValueError as exc:
        raise ParseError(f"{text!r}: {exc}") from None


def parse_partition(text: str) -> Partition:
    parts = []
    for tok in _tokens(text):
        if not tok.isdigit():
            raise ParseError(f"bad part {tok!r}")
        parts.append(int(tok))
    try:
        return Partition(tuple(parts))
    except ValueError as exc:
        raise ParseError(f"{text!r}: {exc}") from None


def format_overpartition(o: Overpartition) -> str:
    return ",".join(f"{v}o" if over else str(v) for v, over in o.parts)


# ---------------------------------------------------------------- enumeration


def _partitions(n: int, cap: int) -> Iterator[tuple[int, ...]]:
    if n == 0:
        yield ()
        return
    for first in range(min(n, cap), 0, -1):
        for rest in _partitions(n - first, first):
            yield (first,) + rest


def enumerate_partitions(n: int) -> list[Partition]:
    """All partitions of n in reverse lexicographic order."""
    if n < 0:
        raise ValueError("n must be non-negative")
    return [Partition._trusted(p) for p in _partitions(n, n)]


def iter_overpartitions(n: int) -> Iterator[Overpartition]:
    for p in _partitions(n, n):
        distinct = sorted(set(p), reverse=True)
        for mask in itertools.product((False, True), repeat=len(distinct)):
            over = {v for v, m in zip(distinct, mask) if m}
            parts = []
            prev = None
            for v in p:
                parts.append((v, v in over and v != prev))
                prev = v
            yield Overpartition._trusted(tuple(parts))


def enumerate_overpartitions(n: int) -> list[Overpartition]:
    """All overpartitions of n; each partition is followed by its overlined variants."""
    if n < 0:
        raise ValueError("n must be non-negative")
    return list(iter_overpartitions(n))


def count_partitions(n: int) -> int:
    """p(n) by Euler's pentagonal recurrence."""
    p = [1] + [0] * n
    for m in range(1, n + 1):
        k, total = 1, 0
        while True:
            g1 = k * (3 * k - 1) // 2
            if g1 > m:
                break
            sign = 1 if k % 2 else -1
            total += sign * p[m - g1]
            g2 = g1 + k
            if g2 <= m:
                total += sign * p[m - g2]
            k += 1
        p[m] = total
    return p[n]


def count_overpartitions(n: int) -> int:
    """Overpartitions of n, from the distinct-part and ordinary counts."""
    dist = [1] + [0] * n
    for part in range(1, n + 1):
        for m in range(n, part - 1, -1):
            dist[m] += dist[m - part]
    return sum(dist[i] * count_partitions(n - i) for i in range(n + 1))


# ---------------------------------------------------------------- Ferrers shapes


def _parts(p) -> tuple[int, ...]:
    if isinstance(p, Overpartition):
        return p.values
    if isinstance(p, Partition):
        return p.parts
    return tuple(p)


def conjugate(p: Partition | Sequence[int]) -> Partition:
    parts = _parts(p)
    if not parts:
        return Partition()
    cols = []
    for c in range(1, parts[0] + 1):
        cols.append(sum(1 for v in parts if v >= c))
    return Partition._trusted(tuple(cols))


def _durfee_side(parts: Sequence[int]) -> int:
    d = 0
    while d < len(parts) and parts[d] >= d + 1:
        d += 1
    return d


def _durfee_walk(parts: Sequence[int], depth: int) -> tuple[list[int], tuple[int, ...]]:
    sizes = []
    rest = tuple(parts)
    for _ in range(depth):
        d = _durfee_side(rest)
        sizes.append(d)
        rest = rest[d:]
    return sizes, rest


def durfee_sizes(p, depth: int) -> list[int]:
    """Sides ``[n_1, ..., n_depth]`` of the successive Durfee squares, zero padded."""
    if depth < 1:
        raise ValueError("depth must be at least 1")
    return _durfee_walk(_parts(p), depth)[0]


def durfee_size(p, i: int) -> int | None:
    """``n_i``; ``n_0`` is infinite and reported as None."""
    if i == 0:
        return None
    return durfee_sizes(p, i)[-1]


def parts_below_durfee(p, depth: int) -> tuple[int, Partition]:
    """Number of parts strictly below the ``depth``-th Durfee square, and those parts.

    ``depth = 0`` counts every part (the zeroth square is infinite).
    """
    if depth < 0:
        raise ValueError("depth must be non-negative")
    rest = _durfee_walk(_parts(p), depth)[1]
    return len(rest), Partition._trusted(rest)


def generalized_durfee(o: Overpartition) -> int:
    """Largest N with (overlined parts) + (plain parts >= N) >= N."""
    j = o.overline_count
    plain = o.plain
    n = 0
    while j + sum(1 for v in plain if v >= n + 1) >= n + 1:
        n += 1
    return n


# ---------------------------------------------------------------- statistics


def _nonempty(parts: Sequence[int], name: str) -> None:
    if not parts:
        raise DomainError(f"{name} of the empty partition is undefined")


def dyson_rank(p) -> int:
    parts = _parts(p)
    _nonempty(parts, "rank")
    return parts[0] - len(parts)


def crank(p) -> int:
    parts = _parts(p)
    _nonempty(parts, "crank")
    ones = sum(1 for v in parts if v == 1)
    if ones == 0:
        return parts[0]
    return sum(1 for v in parts if v > ones) - ones


def d_rank(o: Overpartition) -> int:
    """Largest part minus number of parts, for an overpartition."""
    if not isinstance(o, Overpartition):
        raise TypeError("d_rank takes an Overpartition")
    return dyson_rank(o.values)


def k_rank(p, k: int) -> int:
    """Garvan's k-rank.

    Columns right of the first Durfee square whose length is at most
    ``n_{k-1}``, minus the number of parts below the (k-1)-th square.
    """
    if k < 2:
        raise ValueError("k_rank needs k >= 2")
    parts = _parts(p)
    _nonempty(parts, "k-rank")
    sizes, rest = _durfee_walk(parts, k - 1)
    first, limit = sizes[0], sizes[-1]
    cols = conjugate(parts).parts[first:]
    return sum(1 for c in cols if c <= limit) - len(rest)


def rank_stat(obj, stat: str, k: int | None = None) -> int:
    """Dispatch by name: ``dyson``, ``crank``, ``d_rank`` or ``k_rank`` (needs ``k``)."""
    if stat == "dyson":
        return dyson_rank(obj)
    if stat == "crank":
        return crank(obj)
    if stat == "d_rank":
        return d_rank(obj)
    if stat == "k_rank":
        if k is None:
            raise ValueError("k_rank needs k")
        return k_rank(obj, k)
    raise ValueError(f"unknown statistic {stat!r}")
