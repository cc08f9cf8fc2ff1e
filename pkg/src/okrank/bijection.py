"""Vector partitions and their correspondence with overpartitions.

A vector partition ``(gamma, delta, alpha, beta)`` has a staircase ``gamma =
(N, N-1, ..., 1)`` (stored as ``gamma_len = N``), ``delta`` a set of distinct
integers in ``[0, N-1]``, and ``alpha``, ``beta`` ordinary partitions with
parts at most N.  :func:`over_to_vector` and :func:`vector_to_over` are
mutually inverse and transport

    largest part   = N + len(alpha)
    number of parts = N + len(beta)
    overlined parts = N - len(delta)

The kbar-rank and the k-conjugation are defined on the vector side.
"""
from __future__ import annotations

import json
from dataclasses import dataclass

from .partitions import (
    Overpartition,
    Partition,
    conjugate,
    durfee_sizes,
    generalized_durfee,
    parts_below_durfee,
)

__all__ = [
    "VectorPartition",
    "ValidationError",
    "has_durfee_depth",
    "is_self_k_conjugate",
    "k_conjugate",
    "kbar_rank",
    "over_to_vector",
    "vector_kbar_rank",
    "vector_to_over",
    "conjugate_overpartition",
]


class ValidationError(ValueError):
    """A vector partition violates its structural invariants."""


@dataclass(frozen=True)
class VectorPartition:
    gamma_len: int
    delta: tuple[int, ...] = ()
    alpha: Partition = Partition()
    beta: Partition = Partition()

    def __post_init__(self):
        if not isinstance(self.alpha, Partition):
            object.__setattr__(self, "alpha", Partition.of(self.alpha))
        if not isinstance(self.beta, Partition):
            object.__setattr__(self, "beta", Partition.of(self.beta))
        object.__setattr__(self, "delta", tuple(sorted((int(s) for s in self.delta), reverse=True)))

    @property
    def gamma(self) -> tuple[int, ...]:
        return tuple(range(self.gamma_len, 0, -1))

    @property
    def weight(self) -> int:
        n = self.gamma_len
        return n * (n + 1) // 2 + sum(self.delta) + self.alpha.weight + self.beta.weight

    def validate(self) -> "VectorPartition":
        n = self.gamma_len
        if n < 0:
            raise ValidationError("gamma_len must be non-negative")
        d = self.delta
        if len(set(d)) != len(d):
            raise ValidationError(f"delta parts must be distinct: {d}")
        if any(s < 0 or s >= n for s in d):
            raise ValidationError(f"delta parts must lie in [0, {n - 1}]: {d}")
        if self.alpha.largest > n:
            raise ValidationError(f"alpha has a part larger than {n}")
        if self.beta.largest > n:
            raise ValidationError(f"beta has a part larger than {n}")
        return self

    @classmethod
    def _make(cls, n: int, delta: tuple[int, ...], alpha: Partition,
              beta: Partition) -> "VectorPartition":
        # fields already normalized by the caller
        obj = object.__new__(cls)
        for name, val in (("gamma_len", n), ("delta", delta), ("alpha", alpha), ("beta", beta)):
            object.__setattr__(obj, name, val)
        return obj

    def to_dict(self) -> dict:
        return {
            "gamma_len": self.gamma_len,
            "delta": list(self.delta),
            "alpha": list(self.alpha.parts),
            "beta": list(self.beta.parts),
        }

    @classmethod
    def from_dict(cls, d: dict) -> "VectorPartition":
        try:
            v = cls(int(d["gamma_len"]), tuple(d["delta"]), Partition.of(d["alpha"]),
                    Partition.of(d["beta"]))
        except (KeyError, TypeError, ValueError) as exc:
            raise ValidationError(f"bad vector partition: {exc}") from None
        return v.validate()

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    @classmethod
    def from_json(cls, text: str) -> "VectorPartition":
        return cls.from_dict(json.loads(text))


def vector_to_over(v: VectorPartition) -> Overpartition:
    v.validate()
    n = v.gamma_len
    cols = list(conjugate(v.alpha).parts)
    cols += [0] * (n - len(cols))
    sigma = [cols[i] + n - i for i in range(n)]
    over = [True] * n
    # delta parts address the original positions, so apply before sorting
    for s in v.delta:
        sigma[s] += s
        over[s] = False
    items = list(zip(sigma, over)) + [(b, False) for b in v.beta.parts]
    items.sort(key=lambda p: (-p[0], not p[1]))
    return Overpartition._trusted(tuple(items))


def over_to_vector(lam: Overpartition) -> VectorPartition:
    j = lam.overline_count
    n = generalized_durfee(lam)
    plain = lam.plain
    mu = plain[: n - j]
    beta = plain[n - j:]
    sigma_desc = list(lam.overlined)
    delta = []
    for t in range(n, j, -1):
        val = mu[t - j - 1]
        s = len(sigma_desc)
        # largest s with val - t - s + j + 1 < sigma_s, sigma_0 = infinity
        while s > 0 and not (val - t - s + j + 1 < sigma_desc[s - 1]):
            s -= 1
        sigma_desc.insert(s, val - t - s + j + 1)
        delta.append(t + s - j - 1)
    eta = [sigma_desc[i] + i - n for i in range(n)]
    alpha = conjugate([e for e in eta if e > 0])
    return VectorPartition._make(n, tuple(sorted(delta, reverse=True)), alpha,
                                 Partition._trusted(tuple(beta)))


# ---------------------------------------------------------------- statistics


def _beta_window(beta: Partition, k: int) -> tuple[int | None, int, tuple[int, ...]]:
    """``(n_{k-2}(beta), t_{k-2}(beta), parts below)``; the side is None when k = 2."""
    count, rest = parts_below_durfee(beta, k - 2)
    side = None if k == 2 else durfee_sizes(beta, k - 2)[-1]
    return side, count, rest.parts


def has_durfee_depth(v: VectorPartition, k: int) -> bool:
    """Whether beta has at least k-2 successive Durfee squares (vacuous for k = 2)."""
    if k < 2:
        raise ValueError("k must be at least 2")
    return k == 2 or durfee_sizes(v.beta, k - 2)[-1] >= 1


def vector_kbar_rank(v: VectorPartition, k: int) -> int:
    if k < 2:
        raise ValueError("k must be at least 2")
    side, below, _ = _beta_window(v.beta, k)
    small = len(v.alpha) if side is None else sum(1 for a in v.alpha if a <= side)
    return small - below


def kbar_rank(lam: Overpartition, k: int) -> int:
    """Number of alpha parts at most ``n_{k-2}(beta)`` minus parts of beta below that square."""
    return vector_kbar_rank(over_to_vector(lam), k)


def k_conjugate(v: VectorPartition, k: int) -> VectorPartition:
    """Exchange the alpha parts counted by the kbar-rank with the beta parts below its square.

    The exchanged beta rows are all at most ``n_{k-2}(beta)`` and so are the
    incoming alpha parts, so the first k-2 Durfee squares of beta are
    unchanged and the operation is always defined.
    """
    if k < 2:
        raise ValueError("k must be at least 2")
    v.validate()
    side, below, rest = _beta_window(v.beta, k)
    if side is None:
        return VectorPartition._make(v.gamma_len, v.delta, v.beta, v.alpha)
    keep_alpha = [a for a in v.alpha if a > side]
    moved = [a for a in v.alpha if a <= side]
    top = v.beta.parts[: len(v.beta) - below]
    alpha = Partition._trusted(tuple(keep_alpha) + rest)
    beta = Partition._trusted(top + tuple(moved))
    out = VectorPartition._make(v.gamma_len, v.delta, alpha, beta)
    if durfee_sizes(beta, k - 2) != durfee_sizes(v.beta, k - 2):
        raise ValidationError("k-conjugation changed the Durfee squares of beta")
    return out


def is_self_k_conjugate(lam: Overpartition, k: int) -> bool:
    v = over_to_vector(lam)
    return k_conjugate(v, k) == v


def conjugate_overpartition(lam: Overpartition, k: int) -> Overpartition:
    return vector_to_over(k_conjugate(over_to_vector(lam), k))
