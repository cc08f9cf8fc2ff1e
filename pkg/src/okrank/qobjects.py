"""Builders for the named q-objects: Pochhammer symbols, Gaussian binomials,
the theta function j(z;q), Appell-Lerch sums and the tenth-order mock theta
functions X and chi.

Each builder takes the target truncation order and returns a series whose
``trunc_order`` is exactly that order.  Arguments are signed monomials; a
base ``p`` means the nome is ``q^p``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

from .series import (
    DomainError,
    Ring,
    SignedMonomial,
    TruncatedSeries,
    TruncationError,
    make_monomial,
    one,
    zero,
)


def mono(sign: int, q: int, a: int = 0, z: int = 0) -> SignedMonomial:
    return SignedMonomial(sign, q, a, z)


def _ring_for(args, rational=False) -> Ring:
    return Ring.of(rational, any(x.has_markers for x in args))


def _check_factor(x: SignedMonomial) -> None:
    if x.sign == 1 and x.q_exp == 0 and not x.has_markers:
        raise DomainError("factor (1 - 1) vanishes")


def product_one_minus(factors: list[SignedMonomial], trunc: int,
                      ring: Ring | None = None) -> TruncatedSeries:
    """``prod (1 - x)`` over the given monomials, correct through ``q^trunc``."""
    ring = ring or _ring_for(factors)
    for x in factors:
        _check_factor(x)
    neg = sum(x.q_exp for x in factors if x.q_exp < 0)
    if neg > trunc:
        return zero(trunc, ring)
    out = one(trunc - neg, ring)
    for x in sorted(factors, key=lambda f: -f.q_exp):
        out = out.mul_one_minus(x)
    return out.truncate(trunc)


def quotient_one_minus(factors: list[SignedMonomial], trunc: int,
                       ring: Ring | None = None) -> TruncatedSeries:
    """``1 / prod (1 - x)``; negative q-exponents are normalized before expanding."""
    ring = ring or _ring_for(factors)
    for x in factors:
        _check_factor(x)
        if x.q_exp == 0 and x.has_markers:
            raise DomainError(f"1/(1 - {x}) is not a power series in q")
    shift = sum(-x.q_exp for x in factors if x.q_exp < 0)
    if shift > trunc:
        return zero(trunc, ring)
    out = one(trunc - shift, ring)
    for x in factors:
        out = out.div_one_minus(x)
    return out.truncate(trunc)


def inverse_valuation(factors: list[SignedMonomial]) -> int:
    return sum(-x.q_exp for x in factors if x.q_exp < 0)


def product_valuation(factors: list[SignedMonomial]) -> int:
    return sum(x.q_exp for x in factors if x.q_exp < 0)


def poch_factors(arg: SignedMonomial, n: int, base: int = 1) -> tuple[list[SignedMonomial], bool]:
    """Factors of ``(arg; q^base)_n`` and whether they sit in the denominator.

    Negative ``n`` uses ``(x;q)_{-n} = 1/(x q^{-n};q)_n``.
    """
    if n >= 0:
        return [arg.shift(base * i) for i in range(n)], False
    return [arg.shift(-base * i) for i in range(1, -n + 1)], True


def poch_finite(arg: SignedMonomial, n: int, trunc: int, base: int = 1,
                ring: Ring | None = None) -> TruncatedSeries:
    """``(arg; q^base)_n = prod_{i<n} (1 - arg q^{base i})`` for ``n >= 0``."""
    if n < 0:
        raise ValueError("poch_finite needs n >= 0; use poch for negative n")
    return product_one_minus(poch_factors(arg, n, base)[0], trunc, ring)


def poch(arg: SignedMonomial, n: int, trunc: int, base: int = 1,
         ring: Ring | None = None) -> TruncatedSeries:
    """``(arg; q^base)_n`` for any integer ``n``."""
    factors, inverted = poch_factors(arg, n, base)
    if inverted:
        return quotient_one_minus(factors, trunc, ring)
    return product_one_minus(factors, trunc, ring)


def poch_inverse(arg: SignedMonomial, n: int, trunc: int, base: int = 1,
                 ring: Ring | None = None) -> TruncatedSeries:
    """``1 / (arg; q^base)_n`` for any integer ``n``."""
    factors, inverted = poch_factors(arg, n, base)
    if inverted:
        return product_one_minus(factors, trunc, ring)
    return quotient_one_minus(factors, trunc, ring)


def poch_valuation(arg: SignedMonomial, n: int, base: int = 1) -> int:
    factors, inverted = poch_factors(arg, n, base)
    return inverse_valuation(factors) if inverted else product_valuation(factors)


def poch_inverse_valuation(arg: SignedMonomial, n: int, base: int = 1) -> int:
    factors, inverted = poch_factors(arg, n, base)
    return product_valuation(factors) if inverted else inverse_valuation(factors)


def _infinite_factors(arg: SignedMonomial, base: int, cutoff: int) -> list[SignedMonomial]:
    """Factors of ``(arg; q^base)_inf``: every negative exponent, then those up to ``cutoff``."""
    if base < 1:
        raise ValueError("base must be a positive integer")
    factors = []
    i = 0
    while True:
        e = arg.q_exp + base * i
        if e >= 0 and e > cutoff:
            return factors
        factors.append(arg.shift(base * i))
        i += 1


def poch_inf(arg: SignedMonomial, base: int, trunc: int,
             ring: Ring | None = None) -> TruncatedSeries:
    """``(arg; q^base)_inf`` through ``q^trunc``; a vanishing factor is a DomainError."""
    neg = product_valuation(_infinite_factors(arg, base, -1))
    return product_one_minus(_infinite_factors(arg, base, trunc - neg), trunc, ring)


def poch_inf_inverse(arg: SignedMonomial, base: int, trunc: int,
                     ring: Ring | None = None) -> TruncatedSeries:
    """``1 / (arg; q^base)_inf``."""
    shift = inverse_valuation(_infinite_factors(arg, base, -1))
    return quotient_one_minus(_infinite_factors(arg, base, trunc - shift), trunc, ring)


def gauss_binomial(n: int, m: int, trunc: int | None = None) -> TruncatedSeries:
    """Gaussian binomial ``[n, m]_q``; zero when ``m > n`` (by convention)."""
    if trunc is None:
        trunc = max(m * (n - m), 0)
    if m < 0 or n < 0:
        raise ValueError("gauss_binomial needs 0 <= m, n")
    if m > n:
        return zero(trunc)
    m = min(m, n - m)
    # exact polynomial: build at full degree then re-truncate
    deg = m * (n - m)
    out = one(deg)
    for i in range(1, m + 1):
        out = out.mul_one_minus(mono(1, n - m + i)).as_polynomial(deg)
        out = out.div_one_minus(mono(1, i))
    return out.as_polynomial(trunc)


def jtheta(z: SignedMonomial, base: int, trunc: int, ring: Ring | None = None) -> TruncatedSeries:
    """``j(z; q^p) = (z;q^p)_inf (q^p/z;q^p)_inf (q^p;q^p)_inf``."""
    if z.has_markers:
        raise ValueError("theta arguments are plain signed q-monomials")
    if z.sign == 1 and z.q_exp % base == 0:
        raise DomainError(f"j({z}; q^{base}) vanishes identically")
    other = SignedMonomial(z.sign, base - z.q_exp)
    # the negative-exponent factors lower the order; everything else is
    # needed through trunc - (their total exponent)
    cutoff = trunc - jtheta_valuation(z, base)
    factors = []
    for x in (z, other, mono(1, base)):
        factors.extend(_infinite_factors(x, base, cutoff))
    return product_one_minus(factors, trunc, ring)


def jtheta_valuation(z: SignedMonomial, base: int) -> int:
    other = SignedMonomial(z.sign, base - z.q_exp)
    total = 0
    for x in (z, other):
        e = x.q_exp
        while e < 0:
            total += e
            e += base
    return total


# ---------------------------------------------------------------- bilateral sums


class CertificateError(AssertionError):
    """A term of a bilateral sum fell below its claimed valuation bound."""


@dataclass(frozen=True)
class QuadraticBound:
    """Lower bound ``c2 n^2 + c1 n + c0`` (``c2 > 0``) on the valuation of term n."""

    c2: Fraction
    c1: Fraction
    c0: Fraction

    def __post_init__(self):
        if self.c2 <= 0:
            raise ValueError("leading coefficient must be positive")

    def __call__(self, n: int) -> Fraction:
        return self.c2 * n * n + self.c1 * n + self.c0

    def window(self, trunc: int) -> range:
        """All n with bound(n) <= trunc; outside it every term is O(q^{trunc+1})."""
        c2, c1, c0 = (Fraction(v) for v in (self.c2, self.c1, self.c0))
        disc = c1 * c1 - 4 * c2 * (c0 - trunc)
        if disc < 0:
            return range(0)
        root = math.isqrt(int(disc.numerator * disc.denominator)) / disc.denominator
        centre = -c1 / (2 * c2)
        half = (root + 1) / (2 * c2)
        lo = math.floor(centre - half) - 1
        hi = math.ceil(centre + half) + 1
        while self(lo) <= trunc:
            lo -= 1
        while self(hi) <= trunc:
            hi += 1
        return range(lo + 1, hi)


def quad(c2, c1=0, c0=0) -> QuadraticBound:
    return QuadraticBound(Fraction(c2), Fraction(c1), Fraction(c0))


def bilateral_sum(term: Callable[[int, int], TruncatedSeries], bound: QuadraticBound,
                  trunc: int, ring: Ring) -> TruncatedSeries:
    """Sum ``term(n, trunc)`` over all integers n.

    ``bound`` certifies the omitted range: the quadratic lower bound on each
    term's valuation exceeds ``trunc`` outside ``bound.window(trunc)``.  The
    bound is re-checked on every term that is actually built.
    """
    total = zero(trunc, ring)
    for n in bound.window(trunc):
        t = term(n, trunc)
        if not t.is_zero() and t.valuation < bound(n):
            raise CertificateError(f"term {n} has valuation {t.valuation} < bound {bound(n)}")
        total = total + t
    return total.truncate(trunc)


def with_precision(build: Callable[[int], TruncatedSeries], trunc: int,
                   extra: tuple[int, ...] = (0, 4, 12, 32, 80)) -> TruncatedSeries:
    """Call ``build`` with growing working order until it reaches ``trunc``."""
    last = None
    for e in extra:
        out = build(trunc + e)
        if out.trunc_order >= trunc:
            return out.truncate(trunc)
        last = out
    raise TruncationError(
        f"could not reach order {trunc} (got {last.trunc_order if last else None})")


# ---------------------------------------------------------------- Appell-Lerch sums


def appell_lerch_sum(x: SignedMonomial, z: SignedMonomial, base: int, trunc: int) -> TruncatedSeries:
    """The bilateral sum ``sum_n (-1)^n q^{p C(n,2)} z^n / (1 - q^{p(n-1)} x z)`` alone."""
    if x.has_markers or z.has_markers:
        raise ValueError("Appell-Lerch arguments are plain signed q-monomials")
    xz = x * z
    # pole check: x z q^{p(n-1)} == +1 for some n
    if xz.sign == 1 and xz.q_exp % base == 0:
        raise DomainError(f"pole at n = {1 - xz.q_exp // base}: denominator 1 - q^0")

    def term(n: int, t: int) -> TruncatedSeries:
        e = base * n * (n - 1) // 2 + n * z.q_exp
        sign = (-1) ** (n % 2) * z.sign ** (n % 2)
        d = xz.shift(base * (n - 1))
        shift = max(0, -d.q_exp)
        if e + shift > t:
            return zero(t, Ring.RATIONAL)
        return make_monomial(sign, e, t - shift, ring=Ring.RATIONAL).div_one_minus(d)

    # valuation of term n is e(n) + max(0, -d(n)) >= p n(n-1)/2 + n e_z
    bound = quad(Fraction(base, 2), z.q_exp - Fraction(base, 2), 0)
    return bilateral_sum(term, bound, trunc, Ring.RATIONAL)


def appell_lerch(x: SignedMonomial, z: SignedMonomial, base: int, trunc: int) -> TruncatedSeries:
    """``m(x, q^p, z)``: the bilateral sum divided by ``j(z; q^p)`` (Rational ring)."""
    vj = jtheta_valuation(z, base)

    def build(t: int) -> TruncatedSeries:
        theta = jtheta(z, base, t + 2 * max(vj, 0) - 2 * min(vj, 0), ring=Ring.RATIONAL)
        if theta.valuation != vj:
            raise AssertionError("theta valuation bookkeeping is off")
        s = appell_lerch_sum(x, z, base, t + max(vj, 0))
        return s * theta.invert()

    return with_precision(build, trunc)


def jacobi_bilateral_sum(z: SignedMonomial, base: int, trunc: int) -> TruncatedSeries:
    """``sum_n (-1)^n q^{p C(n+1,2)} / (1 - z q^{p n})``."""
    if z.has_markers:
        raise ValueError("plain signed q-monomial expected")
    if z.sign == 1 and z.q_exp % base == 0:
        raise DomainError(f"pole at n = {-z.q_exp // base}")
    ring = Ring.RATIONAL

    def term(n: int, t: int) -> TruncatedSeries:
        e = base * n * (n + 1) // 2
        d = z.shift(base * n)
        shift = max(0, -d.q_exp)
        if e + shift > t:
            return zero(t, ring)
        return make_monomial((-1) ** (n % 2), e, t - shift, ring=ring).div_one_minus(d)

    return bilateral_sum(term, quad(Fraction(base, 2), Fraction(base, 2), 0), trunc, ring)


# ---------------------------------------------------------------- mock theta functions


def mock_X(trunc: int) -> TruncatedSeries:
    """``X(q) = sum_n (-1)^n q^{n^2} / (-q;q)_{2n}``."""
    if trunc < 0:
        raise ValueError("trunc must be non-negative")
    total = zero(trunc)
    n = 0
    while n * n <= trunc:
        den = poch_inverse(mono(-1, 1), 2 * n, trunc - n * n)
        total = total + den.times_monomial((-1) ** n, n * n)
        n += 1
    return total


def mock_chi(trunc: int) -> TruncatedSeries:
    """``chi(q) = sum_n (-1)^n q^{(n+1)^2} / (-q;q)_{2n+1}``."""
    if trunc < 0:
        raise ValueError("trunc must be non-negative")
    total = zero(trunc)
    n = 0
    while (n + 1) ** 2 <= trunc:
        e = (n + 1) ** 2
        den = poch_inverse(mono(-1, 1), 2 * n + 1, trunc - e)
        total = total + den.times_monomial((-1) ** n, e)
        n += 1
    return total
