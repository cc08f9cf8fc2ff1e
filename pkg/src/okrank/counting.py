"""Rank tables by generating function, multisum and enumeration.

Every table maps ``(n, m, j)`` to a count for ``1 <= n <= max_n``; ``m`` is
the rank-like statistic and ``j`` the number of overlined parts (always 0
for the ordinary-partition statistics and for ``Nbar``, which sums over j).

Statistics:

``N``       Dyson rank of partitions
``M``       crank of partitions
``N_k``     Garvan k-rank, partitions with at least k-1 Durfee squares
``Nbar``    D-rank of overpartitions
``Nbar_k``  kbar-rank of overpartitions whose beta has at least k-2
            Durfee squares, refined by overline count

The crank generating function disagrees with the combinatorial crank at
n = 1 (it gives M(0,1) = -1, M(+-1,1) = 1); both tables keep their own
values and comparisons skip n = 1 for ``M``.
"""
from __future__ import annotations

import io
import json
from collections import defaultdict
from dataclasses import dataclass, field
from typing import Callable

from . import bijection, partitions
from .qobjects import (
    bilateral_sum,
    mono,
    poch,
    poch_inf,
    poch_inf_inverse,
    poch_inverse,
    poch_inverse_valuation,
    poch_valuation,
    quad,
)
from .series import MarkerPoly, Ring, TruncatedSeries, _from_planes, make_monomial, zero

__all__ = [
    "METHODS",
    "STATS",
    "RankTable",
    "UsageError",
    "VerificationFailure",
    "a_sum_check",
    "chain_sum",
    "multisum_series",
    "rank_table",
    "reduction_check_a0",
    "self_conjugate_by_overlines",
    "self_conjugate_count",
    "self_conjugate_series",
]

STATS = ("N", "M", "N_k", "Nbar", "Nbar_k")
METHODS = ("gf", "multisum", "enum")
STAT_ALIASES = {"n": "N", "m": "M", "nk": "N_k", "nbar": "Nbar", "nbark": "Nbar_k"}


class UsageError(ValueError):
    """Unsupported statistic, method or parameter combination."""


class VerificationFailure(AssertionError):
    """Two routes that should agree do not."""


# ---------------------------------------------------------------- the table


@dataclass
class RankTable:
    stat: str
    method: str
    max_n: int
    k: int | None = None
    entries: dict[tuple[int, int, int], int] = field(default_factory=dict)

    def count(self, n: int, m: int, j: int = 0) -> int:
        return self.entries.get((n, m, j), 0)

    def total(self, n: int) -> int:
        return sum(c for (nn, _, _), c in self.entries.items() if nn == n)

    def by_m(self, n: int) -> dict[int, int]:
        out: dict[int, int] = defaultdict(int)
        for (nn, m, _), c in self.entries.items():
            if nn == n:
                out[m] += c
        return dict(out)

    def j_slice(self, j: int) -> dict[tuple[int, int], int]:
        return {(n, m): c for (n, m, jj), c in self.entries.items() if jj == j}

    def j_sum(self) -> dict[tuple[int, int], int]:
        out: dict[tuple[int, int], int] = defaultdict(int)
        for (n, m, _), c in self.entries.items():
            out[(n, m)] += c
        return {key: c for key, c in out.items() if c}

    def restrict(self, lo: int = 1, hi: int | None = None) -> dict[tuple[int, int, int], int]:
        hi = self.max_n if hi is None else hi
        return {key: c for key, c in self.entries.items() if lo <= key[0] <= hi}

    def asymmetries(self) -> list[tuple[int, int, int]]:
        """Keys whose count differs from the count at ``-m``."""
        return sorted(key for key, c in self.entries.items()
                      if self.count(key[0], -key[1], key[2]) != c)

    def diff(self, other: "RankTable", lo: int = 1, hi: int | None = None) -> list:
        """Sorted ``(n, m, j, mine, theirs)`` for every disagreement in ``lo..hi``."""
        hi = min(self.max_n, other.max_n) if hi is None else hi
        a, b = self.restrict(lo, hi), other.restrict(lo, hi)
        return sorted((key + (a.get(key, 0), b.get(key, 0)))
                      for key in set(a) | set(b) if a.get(key, 0) != b.get(key, 0))

    def to_series(self) -> TruncatedSeries:
        """``sum count * q^n z^m a^j`` as a marker series known through ``q^max_n``."""
        planes: list[dict] = [dict() for _ in range(self.max_n + 1)]
        for (n, m, j), c in self.entries.items():
            planes[n][(m, j)] = c
        return _from_planes([MarkerPoly(p) for p in planes], 0, self.max_n, Ring.MARKER_INTEGER)

    def rows(self) -> list[tuple[int, int, int, int]]:
        return [key + (c,) for key, c in sorted(self.entries.items())]

    def to_tsv(self) -> str:
        buf = io.StringIO()
        buf.write("n\tm\tj\tcount\n")
        for n, m, j, c in self.rows():
            buf.write(f"{n}\t{m}\t{j}\t{c}\n")
        return buf.getvalue()

    def to_dict(self) -> dict:
        return {
            "stat": self.stat,
            "method": self.method,
            "k": self.k,
            "max_n": self.max_n,
            "entries": [list(r) for r in self.rows()],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)

    @classmethod
    def from_dict(cls, d: dict) -> "RankTable":
        entries = {(int(n), int(m), int(j)): int(c) for n, m, j, c in d["entries"]}
        return cls(d["stat"], d["method"], int(d["max_n"]), d.get("k"), entries)

    @classmethod
    def from_json(cls, text: str) -> "RankTable":
        return cls.from_dict(json.loads(text))


def _collect(series: TruncatedSeries, max_n: int, entries: dict, m: int | None = None) -> None:
    for n, z, a, c in series.items():
        if 1 <= n <= max_n and c:
            key = (n, z if m is None else m, a)
            entries[key] = entries.get(key, 0) + int(c)


# ---------------------------------------------------------------- generating functions


def _rank_like_gf(max_n: int, weight: Callable[[int], int]) -> dict:
    """``1/(q;q)_inf * sum_{n>=1} (-1)^{n-1} q^{weight(n) + |m| n} (1 - q^n)`` for every m."""
    prefactor = poch_inf_inverse(mono(1, 1), 1, max_n)
    entries: dict = {}
    for m in range(max_n + 1):
        coeffs = [0] * (max_n + 1)
        n = 1
        while weight(n) + m * n <= max_n:
            e = weight(n) + m * n
            sign = 1 if n % 2 else -1
            coeffs[e] += sign
            if e + n <= max_n:
                coeffs[e + n] -= sign
            n += 1
        inner = _from_planes(coeffs, 0, max_n, Ring.INTEGER)
        prod = prefactor * inner
        for sgn in ((1, -1) if m else (1,)):
            _collect(prod, max_n, entries, sgn * m)
    return entries


def _nk_weight(k: int) -> Callable[[int], int]:
    return lambda n: n * ((2 * k - 1) * n - 1) // 2


def _nbar_gf(max_n: int) -> dict:
    ring = Ring.INTEGER
    prefactor = (poch_inf(mono(-1, 1), 1, max_n) * poch_inf_inverse(mono(1, 1), 1, max_n)).scale(2)
    terms = []
    n = 1
    while n * n <= max_n:
        base = make_monomial(1 if n % 2 else -1, n * n, max_n, ring=ring)
        terms.append((n, base.mul_one_minus(mono(1, n)).div_one_plus(mono(1, n))))
        n += 1
    entries: dict = {}
    for m in range(max_n + 1):
        total = zero(max_n, ring)
        for n, t in terms:
            if n * n + m * n <= max_n:
                total = total + t.times_monomial(1, m * n).truncate(max_n)
        prod = prefactor * total
        for sgn in ((1, -1) if m else (1,)):
            _collect(prod, max_n, entries, sgn * m)
    return entries


def _poch_ratio(n: int, trunc: int) -> TruncatedSeries:
    """``(-1/a;q)_n / (-aq;q)_n`` for any integer n, through ``q^trunc``."""
    num_arg, den_arg = mono(-1, 0, a=-1), mono(-1, 1, a=1)
    v_num = poch_valuation(num_arg, n)
    v_den = poch_inverse_valuation(den_arg, n)
    if v_num + v_den > trunc:
        return zero(trunc, Ring.MARKER_INTEGER)
    num = poch(num_arg, n, trunc - v_den, ring=Ring.MARKER_INTEGER)
    den = poch_inverse(den_arg, n, trunc - v_num, ring=Ring.MARKER_INTEGER)
    return (num * den).truncate(trunc)


def kgen_terms(k: int, trunc: int) -> list[tuple[int, TruncatedSeries]]:
    """``(n, (-1)^{n-1} a^n q^{(k-1)n^2} (1-q^n) (-1/a;q)_n/(-aq;q)_n)`` for n >= 1."""
    out = []
    n = 1
    while (k - 1) * n * n <= trunc:
        e = (k - 1) * n * n
        t = _poch_ratio(n, trunc - e).times_monomial(1 if n % 2 else -1, e, 0, n)
        out.append((n, t.mul_one_minus(mono(1, n)).truncate(trunc)))
        n += 1
    return out


def kgen_prefactor(trunc: int) -> TruncatedSeries:
    """``(-aq;q)_inf / (q;q)_inf``."""
    return (poch_inf(mono(-1, 1, a=1), 1, trunc, ring=Ring.MARKER_INTEGER)
            * poch_inf_inverse(mono(1, 1), 1, trunc))


def _nbark_gf(k: int, max_n: int) -> dict:
    prefactor = kgen_prefactor(max_n)
    terms = kgen_terms(k, max_n)
    entries: dict = {}
    for m in range(max_n + 1):
        total = zero(max_n, Ring.MARKER_INTEGER)
        for n, t in terms:
            if (k - 1) * n * n + m * n <= max_n:
                total = total + t.times_monomial(1, m * n).truncate(max_n)
        prod = prefactor * total
        for sgn in ((1, -1) if m else (1,)):
            _collect(prod, max_n, entries, sgn * m)
    return entries


# ---------------------------------------------------------------- multisums


def chain_sum(k: int, trunc: int, tail: Callable[[int, int], TruncatedSeries],
              r_min: int = 0, linear_from: int | None = None) -> TruncatedSeries:
    """The Durfee-chain multisum

        sum_{n_1 >= ... >= n_{k-1} >= r_min}
            a^{n_1} q^{C(n_1+1,2) + n_2^2 + ... + n_{k-1}^2 + n_i + ... + n_{k-1}} (-1/a;q)_{n_1}
            / ((q;q)_{n_1-n_2} ... (q;q)_{n_{k-2}-n_{k-1}}) * tail(n_{k-1})

    where the linear term starts at ``i = linear_from`` (absent when None).
    ``tail(r, t)`` must return a unit-valuation series through ``q^t``.
    """
    if k < 2:
        raise UsageError("chain sums need k >= 2")
    depth = k - 1
    lin = (lambda i: 1 if linear_from is not None and i >= linear_from else 0)
    top = 0
    while (top + 1) * (top + 2) // 2 <= trunc:
        top += 1
    level: dict[int, TruncatedSeries] = {}
    for n1 in range(top + 1):
        e = n1 * (n1 + 1) // 2 + lin(1) * n1
        if e > trunc:
            continue
        ratio = poch(mono(-1, 0, a=-1), n1, trunc - e, ring=Ring.MARKER_INTEGER)
        level[n1] = ratio.times_monomial(1, e, 0, n1)
    for i in range(2, depth + 1):
        nxt: dict[int, TruncatedSeries] = {}
        for ni in range(top + 1):
            e = ni * ni + lin(i) * ni
            if e > trunc:
                continue
            acc = zero(trunc - e, Ring.MARKER_INTEGER)
            for prev, h in level.items():
                if prev < ni or h.valuation > trunc - e:
                    continue
                acc = acc + h.truncate(trunc - e) * poch_inverse(mono(1, 1), prev - ni, trunc - e)
            if not acc.is_zero():
                nxt[ni] = acc.times_monomial(1, e)
        level = nxt
    total = zero(trunc, Ring.MARKER_INTEGER)
    for r, h in level.items():
        if r < r_min:
            continue
        total = total + (h * tail(r, trunc)).truncate(trunc)
    return total


def _zq_tail(r: int, trunc: int) -> TruncatedSeries:
    """``1 / ((zq;q)_r (q/z;q)_r)``."""
    return (poch_inverse(mono(1, 1, z=1), r, trunc, ring=Ring.MARKER_INTEGER)
            * poch_inverse(mono(1, 1, z=-1), r, trunc, ring=Ring.MARKER_INTEGER))


def _q2_tail(r: int, trunc: int) -> TruncatedSeries:
    return poch_inverse(mono(1, 2), r, trunc, base=2, ring=Ring.MARKER_INTEGER)


def _q_tail(r: int, trunc: int) -> TruncatedSeries:
    return poch_inverse(mono(1, 1), r, trunc, ring=Ring.MARKER_INTEGER)


def multisum_series(k: int, trunc: int, r_min: int = 1) -> TruncatedSeries:
    """The z,a-marked multisum with last index at least ``r_min``."""
    return chain_sum(k, trunc, _zq_tail, r_min=r_min)


# ---------------------------------------------------------------- enumeration


def _bump(entries: dict, key: tuple[int, int, int]) -> None:
    entries[key] = entries.get(key, 0) + 1


def _enum_partitions(max_n: int, stat: Callable, keep: Callable = lambda p: True) -> dict:
    entries: dict = {}
    for n in range(1, max_n + 1):
        for p in partitions.enumerate_partitions(n):
            if keep(p):
                _bump(entries, (n, stat(p), 0))
    return entries


def _enum_nbar(max_n: int) -> dict:
    entries: dict = {}
    for n in range(1, max_n + 1):
        for o in partitions.iter_overpartitions(n):
            _bump(entries, (n, partitions.d_rank(o), 0))
    return entries


def _enum_nbark(k: int, max_n: int) -> dict:
    entries: dict = {}
    for n in range(1, max_n + 1):
        for o in partitions.iter_overpartitions(n):
            v = bijection.over_to_vector(o)
            if bijection.has_durfee_depth(v, k):
                _bump(entries, (n, bijection.vector_kbar_rank(v, k), o.overline_count))
    return entries


# ---------------------------------------------------------------- dispatch


def canonical_stat(stat: str) -> str:
    if stat in STATS:
        return stat
    if stat.lower() in STAT_ALIASES:
        return STAT_ALIASES[stat.lower()]
    raise UsageError(f"unknown statistic {stat!r}")


def rank_table(stat: str, method: str, max_n: int, k: int | None = None) -> RankTable:
    stat = canonical_stat(stat)
    if method not in METHODS:
        raise UsageError(f"unknown method {method!r}")
    if max_n < 1:
        raise UsageError("max_n must be at least 1")
    if stat in ("N_k", "Nbar_k"):
        if k is None:
            raise UsageError(f"{stat} needs k")
        low = 1 if (stat == "N_k" and method == "gf") else 2
        if k < low:
            raise UsageError(f"{stat}/{method} needs k >= {low}")
    else:
        k = None

    key = (stat, method)
    if key == ("N", "gf"):
        entries = _rank_like_gf(max_n, _nk_weight(2))
    elif key == ("M", "gf"):
        entries = _rank_like_gf(max_n, _nk_weight(1))
    elif key == ("N_k", "gf"):
        entries = _rank_like_gf(max_n, _nk_weight(k))
    elif key == ("Nbar", "gf"):
        entries = _nbar_gf(max_n)
    elif key == ("Nbar_k", "gf"):
        entries = _nbark_gf(k, max_n)
    elif key == ("Nbar_k", "multisum"):
        entries = {}
        _collect(multisum_series(k, max_n), max_n, entries)
    elif key == ("N", "enum"):
        entries = _enum_partitions(max_n, partitions.dyson_rank)
    elif key == ("M", "enum"):
        entries = _enum_partitions(max_n, partitions.crank)
    elif key == ("N_k", "enum"):
        entries = _enum_partitions(
            max_n, lambda p: partitions.k_rank(p, k),
            lambda p: partitions.durfee_sizes(p, k - 1)[-1] >= 1)
    elif key == ("Nbar", "enum"):
        entries = _enum_nbar(max_n)
    elif key == ("Nbar_k", "enum"):
        entries = _enum_nbark(k, max_n)
    else:
        raise UsageError(f"no {method} route for {stat}")
    entries = {key: c for key, c in entries.items() if c}
    return RankTable(stat, method, max_n, k, entries)


# ---------------------------------------------------------------- self-conjugate overpartitions


def self_conjugate_series(k: int, side: str, trunc: int) -> TruncatedSeries:
    """Both sides of the self-k-conjugate generating function identity, marked by a.

    ``lhs`` is the Durfee-chain multisum with last index >= 0 and tail
    ``1/(q^2;q^2)_r``; ``rhs`` is
    ``(-aq;q)_inf/(q;q)_inf sum_n (-1/a;q)_n (-1)^n a^n q^{(k-1)n^2 + C(n+1,2)} / (-aq;q)_n``.
    """
    if k < 2:
        raise UsageError("k must be at least 2")
    if side == "lhs":
        return chain_sum(k, trunc, _q2_tail, r_min=0)
    if side != "rhs":
        raise UsageError("side is 'lhs' or 'rhs'")
    ring = Ring.MARKER_INTEGER

    def term(n: int, t: int) -> TruncatedSeries:
        e = (k - 1) * n * n + n * (n + 1) // 2
        if e > t:
            return zero(t, ring)
        return _poch_ratio(n, t - e).times_monomial((-1) ** (n % 2), e, 0, n)

    # valuation of term n is (k-1)n^2 + C(n+1,2) for n >= 0 and
    # (k-1)n^2 + C(|n|,2) + |n| for n < 0; both exceed (k-1)n^2
    total = bilateral_sum(term, quad(k - 1, 0, 0), trunc, ring)
    return kgen_prefactor(trunc) * total


def self_conjugate_count(k: int, max_n: int) -> dict[int, int]:
    """Self-k-conjugate overpartitions of each n <= max_n, by enumeration."""
    return {n: sum(1 for o in partitions.iter_overpartitions(n)
                   if bijection.is_self_k_conjugate(o, k))
            for n in range(max_n + 1)}


def self_conjugate_by_overlines(k: int, max_n: int) -> dict[tuple[int, int], int]:
    """Self-k-conjugate overpartitions keyed by (n, number of overlined parts)."""
    out: dict[tuple[int, int], int] = defaultdict(int)
    for n in range(max_n + 1):
        for o in partitions.iter_overpartitions(n):
            if bijection.is_self_k_conjugate(o, k):
                out[(n, o.overline_count)] += 1
    return dict(out)


# ---------------------------------------------------------------- reductions


def reduction_check_a0(k: int, max_n: int) -> dict:
    """Check that the overline-free slice of the Nbar_k table is the N_k table."""
    bar = rank_table("Nbar_k", "gf", max_n, k).j_slice(0)
    plain = {(n, m): c for (n, m, _), c in rank_table("N_k", "gf", max_n, k).entries.items()}
    bad = sorted(key for key in set(bar) | set(plain) if bar.get(key, 0) != plain.get(key, 0))
    if bad:
        n, m = bad[0]
        raise VerificationFailure(
            f"Nbar_{k}(m={m}, n={n}, j=0) = {bar.get((n, m), 0)} but N_{k} = {plain.get((n, m), 0)}")
    return {"k": k, "max_n": max_n, "checked": len(plain), "status": "pass"}


def a_sum_check(max_n: int) -> dict:
    """Check that summing the k = 2 table over overline counts gives the D-rank table."""
    summed = rank_table("Nbar_k", "gf", max_n, 2).j_sum()
    plain = {(n, m): c for (n, m, _), c in rank_table("Nbar", "gf", max_n).entries.items()}
    bad = sorted(key for key in set(summed) | set(plain) if summed.get(key, 0) != plain.get(key, 0))
    if bad:
        n, m = bad[0]
        raise VerificationFailure(f"sum_j Nbar_2({m},{n},j) != Nbar({m},{n})")
    return {"max_n": max_n, "checked": len(plain), "status": "pass"}
