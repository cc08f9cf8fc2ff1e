"""Exact truncated Laurent series in q.

A series stores a dense block of coefficients for the exponents
``min_order .. trunc_order``; anything above ``trunc_order`` is unknown, not
zero.  Coefficients may carry two Laurent markers, ``z`` and ``a``, in which
case each q-coefficient is a :class:`MarkerPoly`.  Internally the block is a
``(q, z, a)`` integer array plus one common denominator for the rational
rings, so products reduce to integer convolutions (see :mod:`okrank.kernels`).

Every operation computes the largest order at which its result is provably
correct; there is no global precision setting.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from typing import Iterator, Mapping, Union

import numpy as np

from . import kernels

__all__ = [
    "Comparison",
    "DomainError",
    "InversionError",
    "MarkerPoly",
    "Ring",
    "RingError",
    "SeriesError",
    "SeriesRangeError",
    "SignedMonomial",
    "TruncatedSeries",
    "TruncationError",
    "add",
    "coeff_at",
    "equal_up_to",
    "from_coeffs",
    "invert",
    "make_monomial",
    "mul",
]

_LIMIT = 2**62


class SeriesError(Exception):
    """Base class for series-level failures."""


class RingError(SeriesError, TypeError):
    """Operands live in incompatible coefficient rings."""


class InversionError(SeriesError, ZeroDivisionError):
    pass


class SeriesRangeError(SeriesError, IndexError):
    pass


class TruncationError(SeriesError, ValueError):
    pass


class DomainError(SeriesError, ValueError):
    """A q-object was requested at an argument where it vanishes or has a pole."""


class Ring(enum.Enum):
    INTEGER = "Integer"
    RATIONAL = "Rational"
    MARKER_INTEGER = "MarkerPoly-over-Integer"
    MARKER_RATIONAL = "MarkerPoly-over-Rational"

    @property
    def rational(self) -> bool:
        return self in (Ring.RATIONAL, Ring.MARKER_RATIONAL)

    @property
    def markers(self) -> bool:
        return self in (Ring.MARKER_INTEGER, Ring.MARKER_RATIONAL)

    @staticmethod
    def of(rational: bool, markers: bool) -> "Ring":
        if markers:
            return Ring.MARKER_RATIONAL if rational else Ring.MARKER_INTEGER
        return Ring.RATIONAL if rational else Ring.INTEGER

    def join(self, other: "Ring") -> "Ring":
        # markers embed freely (a marker-free series is constant in z and a);
        # the base ring must match exactly
        if self.rational != other.rational:
            raise RingError(f"ring mismatch: {self.value} vs {other.value}")
        return Ring.of(self.rational, self.markers or other.markers)


@dataclass(frozen=True)
class SignedMonomial:
    """``sign * q^q_exp * z^z_exp * a^a_exp`` with ``sign`` in {+1, -1}."""

    sign: int
    q_exp: int
    a_exp: int = 0
    z_exp: int = 0

    def __post_init__(self):
        if self.sign not in (1, -1):
            raise ValueError("sign must be +1 or -1")

    def inverse(self) -> "SignedMonomial":
        return SignedMonomial(self.sign, -self.q_exp, -self.a_exp, -self.z_exp)

    def __mul__(self, other: "SignedMonomial") -> "SignedMonomial":
        return SignedMonomial(
            self.sign * other.sign,
            self.q_exp + other.q_exp,
            self.a_exp + other.a_exp,
            self.z_exp + other.z_exp,
        )

    def __truediv__(self, other: "SignedMonomial") -> "SignedMonomial":
        return self * other.inverse()

    def shift(self, q: int) -> "SignedMonomial":
        return SignedMonomial(self.sign, self.q_exp + q, self.a_exp, self.z_exp)

    @property
    def has_markers(self) -> bool:
        return bool(self.a_exp or self.z_exp)

    def __str__(self):
        bits = []
        if self.q_exp:
            bits.append(f"q^{self.q_exp}")
        if self.z_exp:
            bits.append(f"z^{self.z_exp}")
        if self.a_exp:
            bits.append(f"a^{self.a_exp}")
        body = "*".join(bits) or "1"
        return ("-" if self.sign < 0 else "") + body


Scalar = Union[int, Fraction]


class MarkerPoly:
    """Sparse Laurent polynomial in the markers z and a.

    Keys are ``(z_exp, a_exp)``; zero coefficients are never stored.
    Instances are immutable.
    """

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[tuple[int, int], Scalar] | None = None):
        clean = {}
        for key, c in (terms or {}).items():
            if c:
                m, j = key
                clean[(int(m), int(j))] = c
        self._terms = clean
        self._hash = None

    @classmethod
    def monomial(cls, c: Scalar = 1, z: int = 0, a: int = 0) -> "MarkerPoly":
        return cls({(z, a): c})

    @classmethod
    def coerce(cls, x) -> "MarkerPoly":
        if isinstance(x, MarkerPoly):
            return x
        return cls({(0, 0): x})

    @property
    def terms(self) -> dict[tuple[int, int], Scalar]:
        return dict(self._terms)

    def __iter__(self):
        return iter(sorted(self._terms.items()))

    def __len__(self):
        return len(self._terms)

    def __bool__(self):
        return bool(self._terms)

    def __getitem__(self, key: tuple[int, int]) -> Scalar:
        return self._terms.get(key, 0)

    def __add__(self, other):
        other = MarkerPoly.coerce(other)
        out = dict(self._terms)
        for k, c in other._terms.items():
            out[k] = out.get(k, 0) + c
        return MarkerPoly(out)

    __radd__ = __add__

    def __neg__(self):
        return MarkerPoly({k: -c for k, c in self._terms.items()})

    def __sub__(self, other):
        return self + (-MarkerPoly.coerce(other))

    def __rsub__(self, other):
        return MarkerPoly.coerce(other) - self

    def __mul__(self, other):
        other = MarkerPoly.coerce(other)
        out: dict[tuple[int, int], Scalar] = {}
        for (m1, j1), c1 in self._terms.items():
            for (m2, j2), c2 in other._terms.items():
                k = (m1 + m2, j1 + j2)
                out[k] = out.get(k, 0) + c1 * c2
        return MarkerPoly(out)

    __rmul__ = __mul__

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = MarkerPoly.coerce(other)
        if not isinstance(other, MarkerPoly):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    def __repr__(self):
        if not self._terms:
            return "MarkerPoly(0)"
        return f"MarkerPoly({self})"

    def __str__(self):
        out = []
        for (m, j), c in sorted(self._terms.items()):
            mono = "*".join(
                s for s in (f"z^{m}" if m else "", f"a^{j}" if j else "") if s
            )
            if not mono:
                out.append(str(c))
            elif c == 1:
                out.append(mono)
            elif c == -1:
                out.append("-" + mono)
            else:
                out.append(f"{c}*{mono}")
        return " + ".join(out).replace("+ -", "- ")


@dataclass(frozen=True)
class Comparison:
    """Outcome of comparing two series up to some order.

    Truthy when equal.  On mismatch, ``q_exp`` is the smallest differing
    exponent and ``(z_exp, a_exp)`` the first differing marker term there.
    """

    equal: bool
    order: int
    q_exp: int | None = None
    z_exp: int | None = None
    a_exp: int | None = None
    lhs: Scalar | None = None
    rhs: Scalar | None = None

    def __bool__(self):
        return self.equal


# ---------------------------------------------------------------- helpers


def _maxabs(x: np.ndarray) -> int:
    if x.size == 0:
        return 0
    return int(np.abs(x).max())


def _scale(x: np.ndarray, f: int) -> np.ndarray:
    if f == 1:
        return x
    if x.dtype != object and _maxabs(x) * abs(f) < _LIMIT:
        return x * np.int64(f)
    return x.astype(object) * f


def _accumulate(dst: np.ndarray, idx, src: np.ndarray) -> np.ndarray:
    """``dst[idx] += src`` with promotion to Python ints when int64 could overflow."""
    if dst.dtype != object and (src.dtype == object or _maxabs(dst) + _maxabs(src) >= _LIMIT):
        dst = dst.astype(object)
    dst[idx] += src
    return dst


def _demote(x: np.ndarray) -> np.ndarray:
    if x.dtype == object and _maxabs(x) < _LIMIT:
        return x.astype(np.int64)
    return x


def _array_gcd(x: np.ndarray, start: int) -> int:
    if x.dtype != object:
        g = int(np.gcd.reduce(x.ravel())) if x.size else 0
        return math.gcd(g, start)
    return reduce(math.gcd, (int(v) for v in x.flat if v), start)


def _split_scalar(c: Scalar) -> tuple[int, int]:
    if isinstance(c, Fraction):
        return c.numerator, c.denominator
    if isinstance(c, (int, np.integer)):
        return int(c), 1
    raise TypeError(f"unsupported scalar {c!r}")


# ---------------------------------------------------------------- the series


class TruncatedSeries:
    """Immutable truncated Laurent series; see the module docstring."""

    __slots__ = ("min_order", "trunc_order", "z_min", "a_min", "den", "ring", "_c")

    def __init__(self, coeffs: np.ndarray, min_order: int, trunc_order: int,
                 ring: Ring, z_min: int = 0, a_min: int = 0, den: int = 1):
        # normalizing constructor; callers pass freshly built arrays
        if trunc_order < min_order:
            coeffs = np.zeros((1, 1, 1), dtype=np.int64)
            min_order = trunc_order
            z_min = a_min = 0
            den = 1
        c = coeffs
        if c.ndim != 3 or c.shape[0] != trunc_order - min_order + 1:
            raise ValueError("coefficient block does not match the order window")
        den = int(den)
        if den <= 0:
            raise ValueError("denominator must be positive")
        if not ring.rational and den != 1:
            raise RingError("integer ring with a denominator")
        nzq = np.flatnonzero(c.reshape(c.shape[0], -1).any(axis=1)) if c.size else []
        if len(nzq) == 0:
            c = np.zeros((1, 1, 1), dtype=np.int64)
            min_order = trunc_order
            z_min = a_min = 0
            den = 1
        else:
            first = int(nzq[0])
            if first:
                c = c[first:]
                min_order += first
            zs = np.flatnonzero(c.any(axis=(0, 2)))
            as_ = np.flatnonzero(c.any(axis=(0, 1)))
            z0, z1 = int(zs[0]), int(zs[-1]) + 1
            a0, a1 = int(as_[0]), int(as_[-1]) + 1
            if z0 or a0 or z1 < c.shape[1] or a1 < c.shape[2]:
                c = c[:, z0:z1, a0:a1]
                z_min += z0
                a_min += a0
            if den != 1:
                g = _array_gcd(c, den)
                if g > 1:
                    c = c // g
                    den //= g
            c = _demote(c)
        if not ring.markers and (c.shape[1:] != (1, 1) or z_min or a_min):
            raise RingError("marker terms in a marker-free ring")
        c = np.ascontiguousarray(c)
        c.flags.writeable = False
        init = object.__setattr__
        init(self, "_c", c)
        init(self, "min_order", int(min_order))
        init(self, "trunc_order", int(trunc_order))
        init(self, "z_min", int(z_min))
        init(self, "a_min", int(a_min))
        init(self, "den", den)
        init(self, "ring", ring)

    def __setattr__(self, name, value):
        raise AttributeError("TruncatedSeries is immutable")

    # ---------------------------------------------------------- inspection

    @property
    def coeff_array(self) -> np.ndarray:
        """Read-only ``(q, z, a)`` numerator block (divide by ``den``)."""
        return self._c

    def is_zero(self) -> bool:
        return not self._c.any()

    @property
    def valuation(self) -> int:
        """Lowest exponent with a nonzero coefficient; ``trunc_order + 1`` if none is known."""
        return self.trunc_order + 1 if self.is_zero() else self.min_order

    def coeff(self, n: int):
        """Exact coefficient of q^n.

        Raises SeriesRangeError above ``trunc_order``; below ``min_order``
        the coefficient is a known zero.
        """
        if n > self.trunc_order:
            raise SeriesRangeError(f"q^{n} lies above the truncation order {self.trunc_order}")
        if n < self.min_order:
            return MarkerPoly() if self.ring.markers else self._scalar(0)
        plane = self._c[n - self.min_order]
        if not self.ring.markers:
            return self._scalar(int(plane[0, 0]))
        terms = {}
        for m, j in zip(*np.nonzero(plane)):
            terms[(int(m) + self.z_min, int(j) + self.a_min)] = self._scalar(int(plane[m, j]))
        return MarkerPoly(terms)

    def _scalar(self, num: int):
        if self.ring.rational:
            return Fraction(num, self.den)
        return num

    def items(self) -> Iterator[tuple[int, int, int, Scalar]]:
        """Nonzero terms as ``(q_exp, z_exp, a_exp, coefficient)``, q-major order."""
        for i, m, j in zip(*np.nonzero(self._c)):
            yield (int(i) + self.min_order, int(m) + self.z_min, int(j) + self.a_min,
                   self._scalar(int(self._c[i, m, j])))

    def coefficients(self, start: int = 0) -> list:
        return [self.coeff(n) for n in range(start, self.trunc_order + 1)]

    def marker_coeff(self, n: int, z: int = 0, a: int = 0) -> Scalar:
        """Coefficient of ``q^n z^z a^a``."""
        if n > self.trunc_order:
            raise SeriesRangeError(f"q^{n} lies above the truncation order {self.trunc_order}")
        i, m, j = n - self.min_order, z - self.z_min, a - self.a_min
        c = self._c
        if 0 <= i < c.shape[0] and 0 <= m < c.shape[1] and 0 <= j < c.shape[2]:
            return self._scalar(int(c[i, m, j]))
        return self._scalar(0)

    def check_finished(self) -> None:
        """Support bounds of a fully assembled object: ``0 <= a_exp <= n``, ``|z_exp| <= n``."""
        for n, m, j, _ in self.items():
            if j < 0 or j > n or abs(m) > n:
                raise ValueError(f"term q^{n} z^{m} a^{j} violates the marker support bound")

    def __repr__(self):
        terms = []
        for n, m, j, c in self.items():
            mono = "*".join(s for s in (
                f"q^{n}" if n else "", f"z^{m}" if m else "", f"a^{j}" if j else "") if s)
            terms.append(f"{c}*{mono}" if mono else str(c))
            if len(terms) >= 12:
                terms.append("...")
                break
        body = " + ".join(terms) if terms else "0"
        return f"TruncatedSeries({body} + O(q^{self.trunc_order + 1}), {self.ring.value})"

    # ---------------------------------------------------------- construction helpers

    def _rebuild(self, coeffs, min_order=None, trunc_order=None, z_min=None,
                 a_min=None, den=None, ring=None) -> "TruncatedSeries":
        return TruncatedSeries(
            coeffs,
            self.min_order if min_order is None else min_order,
            self.trunc_order if trunc_order is None else trunc_order,
            self.ring if ring is None else ring,
            self.z_min if z_min is None else z_min,
            self.a_min if a_min is None else a_min,
            self.den if den is None else den,
        )

    def _box(self, lo: int, hi: int, z0: int, z1: int, a0: int, a1: int,
             scale: int = 1) -> np.ndarray:
        """Numerators (times ``scale``) placed into the box q∈[lo,hi], z∈[z0,z1), a∈[a0,a1)."""
        c = self._c
        out = np.zeros((hi - lo + 1, z1 - z0, a1 - a0),
                       dtype=object if c.dtype == object else np.int64)
        src_lo = max(lo, self.min_order)
        src_hi = min(hi, self.min_order + c.shape[0] - 1)
        if src_lo > src_hi:
            return out
        block = c[src_lo - self.min_order: src_hi - self.min_order + 1]
        block = _scale(block, scale)
        if block.dtype == object:
            out = out.astype(object)
        zo, ao = self.z_min - z0, self.a_min - a0
        out[src_lo - lo: src_hi - lo + 1, zo: zo + c.shape[1], ao: ao + c.shape[2]] = block
        return out

    def truncate(self, order: int) -> "TruncatedSeries":
        if order > self.trunc_order:
            raise TruncationError(
                f"cannot raise truncation order from {self.trunc_order} to {order}")
        if order == self.trunc_order:
            return self
        keep = order - self.min_order + 1
        if keep <= 0:
            return zero(order, self.ring)
        return self._rebuild(self._c[:keep].copy(), trunc_order=order)

    def _extend(self, order: int) -> "TruncatedSeries":
        """Declare the unknown tail to be zero up to ``order`` (used for polynomials)."""
        if order <= self.trunc_order:
            return self.truncate(order)
        c = self._c
        pad = np.zeros((order - self.trunc_order,) + c.shape[1:], dtype=c.dtype)
        return self._rebuild(np.concatenate([c, pad]), trunc_order=order)

    def as_polynomial(self, order: int) -> "TruncatedSeries":
        """Treat this series as exact (all terms known) and re-truncate at ``order``."""
        return self._extend(order)

    def to_ring(self, ring: Ring) -> "TruncatedSeries":
        if ring == self.ring:
            return self
        if self.ring.markers and not ring.markers:
            if self._c.shape[1:] != (1, 1) or self.z_min or self.a_min:
                raise RingError("series has marker terms")
        if self.ring.rational and not ring.rational and self.den != 1:
            raise RingError("series has non-integral coefficients")
        return self._rebuild(self._c.copy(), ring=ring)

    def to_rational(self) -> "TruncatedSeries":
        return self.to_ring(Ring.of(True, self.ring.markers))

    # ---------------------------------------------------------- arithmetic

    def __neg__(self):
        return self._rebuild(_scale(self._c, -1))

    def __add__(self, other):
        if isinstance(other, (int, Fraction, MarkerPoly)):
            if self.trunc_order < 0:
                return self
            other = make_monomial(other, 0, self.trunc_order, ring=_scalar_ring(other, self.ring))
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        ring = self.ring.join(other.ring)
        top = min(self.trunc_order, other.trunc_order)
        lo = min(self.min_order, other.min_order)
        if lo > top:
            return zero(top, ring)
        z0 = min(self.z_min, other.z_min)
        z1 = max(self.z_min + self._c.shape[1], other.z_min + other._c.shape[1])
        a0 = min(self.a_min, other.a_min)
        a1 = max(self.a_min + self._c.shape[2], other.a_min + other._c.shape[2])
        den = self.den * other.den // math.gcd(self.den, other.den)
        x = self._box(lo, top, z0, z1, a0, a1, den // self.den)
        y = other._box(lo, top, z0, z1, a0, a1, den // other.den)
        total = _accumulate(x, slice(None), y)
        return TruncatedSeries(total, lo, top, ring, z0, a0, den)

    def __radd__(self, other):
        return self.__add__(other)

    def __sub__(self, other):
        if isinstance(other, (int, Fraction, MarkerPoly)):
            return self + (-other)
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, np.integer, Fraction)):
            return self.scale(other)
        if isinstance(other, MarkerPoly):
            # an exact constant: known far enough not to limit the product
            top = max(self.trunc_order - min(self.valuation, self.trunc_order), 0)
            other = make_monomial(other, 0, top, ring=_scalar_ring(other, self.ring))
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        ring = self.ring.join(other.ring)
        va, vb = self.valuation, other.valuation
        top = min(self.trunc_order + vb, other.trunc_order + va)
        if self.is_zero() or other.is_zero():
            return zero(top, ring)
        length = top - va - vb + 1
        prod = kernels.conv3(self._c[:length], other._c[:length], length)
        return TruncatedSeries(prod, va + vb, top, ring, self.z_min + other.z_min,
                               self.a_min + other.a_min, self.den * other.den)

    __rmul__ = __mul__

    def scale(self, c: Scalar) -> "TruncatedSeries":
        num, den = _split_scalar(c)
        if den != 1 and not self.ring.rational:
            raise RingError("non-integral scalar in an integer ring")
        return self._rebuild(_scale(self._c, num), den=self.den * den)

    def times_monomial(self, c: Scalar = 1, q: int = 0, z: int = 0, a: int = 0) -> "TruncatedSeries":
        """Multiply by ``c * q^q z^z a^a`` (shifts the window)."""
        out = self.scale(c) if c != 1 else self
        if (z or a) and not out.ring.markers:
            out = out.to_ring(Ring.of(out.ring.rational, True))
        return out._rebuild(out._c, min_order=out.min_order + q,
                            trunc_order=out.trunc_order + q,
                            z_min=out.z_min + z, a_min=out.a_min + a)

    def times(self, x: SignedMonomial) -> "TruncatedSeries":
        return self.times_monomial(x.sign, x.q_exp, x.z_exp, x.a_exp)

    def mul_one_minus(self, x: SignedMonomial) -> "TruncatedSeries":
        """``self * (1 - x)``."""
        return self - self.times(x)

    def mul_one_plus(self, x: SignedMonomial) -> "TruncatedSeries":
        return self + self.times(x)

    def div_one_minus(self, x: SignedMonomial) -> "TruncatedSeries":
        """``self / (1 - x)`` for a signed monomial ``x``.

        Positive q-exponents expand geometrically; negative ones are first
        rewritten as ``-x^{-1} / (1 - x^{-1})``.  A q-free ``x`` is only
        allowed without markers (``1 - x`` must be a scalar).
        """
        e = x.q_exp
        if e == 0:
            if x.has_markers:
                raise DomainError(f"1 - ({x}) is not a unit power series in q")
            c = 1 - x.sign
            if c == 0:
                raise DomainError("division by 1 - 1")
            return self.scale(Fraction(1, c))
        if e < 0:
            y = x.inverse()
            return self.times_monomial(-y.sign, y.q_exp, y.z_exp, y.a_exp).div_one_minus(y)
        if self.is_zero():
            return self
        ring = self.ring
        if x.has_markers and not ring.markers:
            ring = Ring.of(ring.rational, True)
        c = self._c
        steps = (c.shape[0] - 1) // e
        dz, da = x.z_exp, x.a_exp
        z0 = self.z_min + min(0, dz * steps)
        z1 = self.z_min + c.shape[1] + max(0, dz * steps)
        a0 = self.a_min + min(0, da * steps)
        a1 = self.a_min + c.shape[2] + max(0, da * steps)
        box = self._box(self.min_order, self.trunc_order, z0, z1, a0, a1)
        out = kernels.geom(box, x.sign, e, dz, da)
        return TruncatedSeries(out, self.min_order, self.trunc_order, ring, z0, a0, self.den)

    def div_one_plus(self, x: SignedMonomial) -> "TruncatedSeries":
        return self.div_one_minus(SignedMonomial(-x.sign, x.q_exp, x.a_exp, x.z_exp))

    def invert(self) -> "TruncatedSeries":
        """Multiplicative inverse; the lowest term must be a unit monomial."""
        if self.is_zero():
            raise InversionError("series is zero throughout its window")
        lead = self._c[0]
        nz = np.argwhere(lead != 0)
        if len(nz) != 1:
            raise InversionError("leading coefficient is not a monomial, hence not a unit")
        m, j = (int(v) for v in nz[0])
        u = int(lead[m, j])
        if not self.ring.rational and abs(u) != 1:
            raise InversionError(f"leading coefficient {u} is not invertible over the integers")
        v = self.min_order
        zs, as_ = m + self.z_min, j + self.a_min
        w = self.times_monomial(1, -v, -zs, -as_)
        top = w.trunc_order
        inv0 = Fraction(self.den, u) if self.ring.rational else u
        t = make_monomial(inv0, 0, 0, ring=Ring.of(self.ring.rational, False))
        prec = 1
        while prec < top + 1:
            prec = min(2 * prec, top + 1)
            t = t._extend(prec - 1)
            err = 1 - w.truncate(prec - 1) * t
            t = (t + t * err).truncate(prec - 1)
        if self.ring.markers:
            t = t.to_ring(Ring.of(self.ring.rational, True))
        return t.times_monomial(1, -v, -zs, -as_)

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(Fraction(1) / Fraction(other))
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        return self * other.invert()

    def __pow__(self, k: int):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return self.invert() ** (-k)
        out = None
        base = self
        while k:
            if k & 1:
                out = base if out is None else out * base
            k >>= 1
            if k:
                base = base * base
        return out if out is not None else one(self.trunc_order, self.ring)

    def equal_up_to(self, other: "TruncatedSeries", order: int) -> Comparison:
        return equal_up_to(self, other, order)


# ---------------------------------------------------------------- module-level API


def _scalar_ring(c, like: Ring) -> Ring:
    if isinstance(c, MarkerPoly):
        rational = any(isinstance(v, Fraction) and v.denominator != 1 for _, v in c)
        return Ring.of(like.rational or rational, True)
    if isinstance(c, Fraction) and c.denominator != 1:
        return Ring.of(True, like.markers)
    return like


def zero(trunc: int, ring: Ring = Ring.INTEGER) -> TruncatedSeries:
    return TruncatedSeries(np.zeros((1, 1, 1), dtype=np.int64), trunc, trunc, ring)


def one(trunc: int, ring: Ring = Ring.INTEGER) -> TruncatedSeries:
    return make_monomial(1, 0, trunc, ring=ring)


def make_monomial(c, e: int, trunc: int, ring: Ring | None = None,
                  z: int = 0, a: int = 0) -> TruncatedSeries:
    """The series ``c * q^e (* z^z a^a)`` known through ``q^trunc``."""
    if trunc < e:
        raise TruncationError(f"truncation order {trunc} below the monomial exponent {e}")
    if ring is None:
        if isinstance(c, MarkerPoly):
            ring = _scalar_ring(c, Ring.MARKER_INTEGER)
        elif isinstance(c, Fraction) and c.denominator != 1:
            ring = Ring.RATIONAL
        else:
            ring = Ring.INTEGER
        if z or a:
            ring = Ring.of(ring.rational, True)
    poly = MarkerPoly.coerce(c) * MarkerPoly.monomial(1, z, a)
    return _from_planes([poly], e, trunc, ring)


def _from_planes(planes: list, min_order: int, trunc: int, ring: Ring) -> TruncatedSeries:
    polys = [MarkerPoly.coerce(p) for p in planes]
    keys = [k for p in polys for k, _ in p]
    if not keys:
        return zero(trunc, ring)
    if (not ring.markers) and any(k != (0, 0) for k in keys):
        raise RingError("marker terms in a marker-free ring")
    den = 1
    for p in polys:
        for _, v in p:
            den = den * _split_scalar(v)[1] // math.gcd(den, _split_scalar(v)[1])
    if den != 1 and not ring.rational:
        raise RingError("non-integral coefficient in an integer ring")
    z0 = min(k[0] for k in keys)
    z1 = max(k[0] for k in keys) + 1
    a0 = min(k[1] for k in keys)
    a1 = max(k[1] for k in keys) + 1
    length = trunc - min_order + 1
    arr = np.zeros((max(length, 1), z1 - z0, a1 - a0), dtype=object)
    for i, p in enumerate(polys[:length]):
        for (m, j), v in p:
            arr[i, m - z0, j - a0] = int(Fraction(v) * den)
    return TruncatedSeries(arr, min_order, trunc, ring, z0, a0, den)


def from_coeffs(coeffs, min_order: int = 0, trunc: int | None = None,
                ring: Ring | None = None) -> TruncatedSeries:
    """Series with the given coefficient list starting at ``q^min_order``.

    ``trunc`` defaults to the last listed exponent.
    """
    coeffs = list(coeffs)
    if trunc is None:
        trunc = min_order + len(coeffs) - 1
    if ring is None:
        markers = any(isinstance(c, MarkerPoly) for c in coeffs)
        rational = any(
            (isinstance(c, Fraction) and c.denominator != 1)
            or (isinstance(c, MarkerPoly) and _scalar_ring(c, Ring.MARKER_INTEGER).rational)
            for c in coeffs)
        ring = Ring.of(rational, markers)
    if trunc < min_order:
        return zero(trunc, ring)
    coeffs = coeffs[: trunc - min_order + 1]
    coeffs += [0] * (trunc - min_order + 1 - len(coeffs))
    return _from_planes(coeffs, min_order, trunc, ring)


def add(s1: TruncatedSeries, s2: TruncatedSeries) -> TruncatedSeries:
    return s1 + s2


def mul(s1: TruncatedSeries, s2: TruncatedSeries) -> TruncatedSeries:
    return s1 * s2


def invert(s: TruncatedSeries) -> TruncatedSeries:
    return s.invert()


def coeff_at(s: TruncatedSeries, n: int):
    return s.coeff(n)


def equal_up_to(s1: TruncatedSeries, s2: TruncatedSeries, order: int) -> Comparison:
    """Compare all coefficients (marker terms included) through ``q^order``.

    Differences above ``order`` are invisible by construction.
    """
    if order > s1.trunc_order or order > s2.trunc_order:
        raise TruncationError(
            f"order {order} exceeds a truncation order ({s1.trunc_order}, {s2.trunc_order})")
    lo = min(s1.min_order, s2.min_order)
    if lo > order:
        return Comparison(True, order)
    z0 = min(s1.z_min, s2.z_min)
    z1 = max(s1.z_min + s1._c.shape[1], s2.z_min + s2._c.shape[1])
    a0 = min(s1.a_min, s2.a_min)
    a1 = max(s1.a_min + s1._c.shape[2], s2.a_min + s2._c.shape[2])
    x = s1._box(lo, order, z0, z1, a0, a1, s2.den)
    y = s2._box(lo, order, z0, z1, a0, a1, s1.den)
    if x.dtype != y.dtype:
        x, y = x.astype(object), y.astype(object)
    diff = np.argwhere(x != y)
    if not len(diff):
        return Comparison(True, order)
    i, m, j = (int(v) for v in diff[0])
    rational = s1.ring.rational or s2.ring.rational
    lhs = Fraction(int(x[i, m, j]), s1.den * s2.den)
    rhs = Fraction(int(y[i, m, j]), s1.den * s2.den)
    if not rational:
        lhs, rhs = int(lhs), int(rhs)
    return Comparison(False, order, i + lo, m + z0, j + a0, lhs, rhs)
