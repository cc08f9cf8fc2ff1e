"""Registry of q-series identities and the verifier that checks them.

Each case is a pair of series builders taking a truncation order.  The
verifier expands both sides, retrying with a larger working order when a
builder loses precision, and reports the first differing coefficient.
"""
from __future__ import annotations

import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable

from . import counting
from .qobjects import (
    appell_lerch,
    bilateral_sum,
    jacobi_bilateral_sum,
    jtheta,
    mock_chi,
    mock_X,
    mono,
    poch,
    poch_inf,
    poch_inf_inverse,
    poch_inverse,
    quad,
)
from .series import (
    DomainError,
    MarkerPoly,
    Ring,
    SignedMonomial,
    TruncatedSeries,
    TruncationError,
    equal_up_to,
    from_coeffs,
    make_monomial,
    one,
    zero,
)

__all__ = [
    "IdentityCase",
    "UnknownIdentity",
    "VerificationReport",
    "get_case",
    "list_identities",
    "registry",
    "verify",
    "verify_all",
]

Builder = Callable[[int], TruncatedSeries]
QQ = Ring.RATIONAL
ZZ = Ring.INTEGER
MZ = Ring.MARKER_INTEGER


class UnknownIdentity(counting.UsageError, KeyError):
    def __str__(self):
        return f"unknown identity {self.args[0]!r}"


@dataclass(frozen=True)
class IdentityCase:
    id: str
    ring: Ring
    markers: frozenset
    lhs: Builder
    rhs: Builder
    default_order: int
    anchor: str


@dataclass
class VerificationReport:
    id: str
    order: int
    outcome: str
    mismatch: dict | None = None
    ms: float = 0.0
    error: str | None = None

    @property
    def ok(self) -> bool:
        return self.outcome == "equal"

    def to_dict(self, timing: bool = True) -> dict:
        d = {"id": self.id, "order": self.order, "outcome": self.outcome}
        if self.mismatch is not None:
            d["mismatch"] = self.mismatch
        if self.error is not None:
            d["error"] = self.error
        if timing:
            d["ms"] = round(self.ms, 3)
        return d


# ---------------------------------------------------------------- small builders


def _laurent(coeffs: dict[int, int], trunc: int, ring: Ring = ZZ) -> TruncatedSeries:
    """Laurent polynomial ``sum c q^e`` known through ``q^trunc``."""
    keep = {e: c for e, c in coeffs.items() if e <= trunc and c}
    if not keep:
        return zero(trunc, ring)
    lo = min(keep)
    return from_coeffs([keep.get(e, 0) for e in range(lo, trunc + 1)], lo, trunc, ring)


def _over_one_minus(numer: dict[int, int], dens: list[SignedMonomial], trunc: int,
                    ring: Ring = QQ) -> TruncatedSeries:
    """``numer / prod (1 - x)`` with the numerator a Laurent polynomial in q."""
    shift = sum(-x.q_exp for x in dens if x.q_exp < 0)
    out = _laurent(numer, trunc - shift, ring)
    for x in dens:
        out = out.div_one_minus(x)
    return out


def _bilateral(exponent: Callable[[int], int], numer: Callable[[int], dict[int, int]],
               dens: Callable[[int], list[SignedMonomial]], bound, trunc: int,
               ring: Ring = QQ) -> TruncatedSeries:
    """``sum_n (-1)^n q^{exponent(n)} numer(n) / prod(1 - dens(n))``."""

    def term(n: int, t: int) -> TruncatedSeries:
        e = exponent(n)
        sign = -1 if n % 2 else 1
        num = {e + d: sign * c for d, c in numer(n).items()}
        return _over_one_minus(num, dens(n), t, ring)

    return bilateral_sum(term, bound, trunc, ring)


def _z_poly(terms: dict[tuple[int, int], int]) -> MarkerPoly:
    return MarkerPoly(terms)


def _theta(z: SignedMonomial, base: int, t: int) -> TruncatedSeries:
    return jtheta(z, base, t, ring=QQ)


def _q_poch_inf(p: int, t: int) -> TruncatedSeries:
    """``(q^p; q^p)_inf``."""
    return poch_inf(mono(1, p), p, t, ring=QQ)


# ---------------------------------------------------------------- table-backed cases


def _table(stat: str, method: str, k: int | None = None) -> Builder:
    return lambda t: counting.rank_table(stat, method, max(t, 1), k).to_series().truncate(t)


def _crank_enum_corrected(t: int) -> TruncatedSeries:
    # the generating function also counts q(z - 1) at n = 1
    base = counting.rank_table("M", "enum", max(t, 1)).to_series().truncate(t)
    if t < 1:
        return base
    return base + make_monomial(_z_poly({(1, 0): 1, (0, 0): -1}), 1, t, ring=MZ)


def _j_slice_series(k: int) -> Builder:
    def build(t: int) -> TruncatedSeries:
        table = counting.rank_table("Nbar_k", "gf", max(t, 1), k)
        table.entries = {key: c for key, c in table.entries.items() if key[2] == 0}
        return table.to_series().truncate(t)
    return build


def _j_sum_series(t: int) -> TruncatedSeries:
    table = counting.rank_table("Nbar_k", "gf", max(t, 1), 2)
    table.entries = {(n, m, 0): c for (n, m), c in table.j_sum().items()}
    return table.to_series().truncate(t)


def _multisum(k: int) -> Builder:
    return lambda t: counting.multisum_series(k, t)


# ---------------------------------------------------------------- multiple-series specializations


def _z_factor(n: int, t: int) -> TruncatedSeries:
    """``(1-z)(1-1/z) / ((1-z q^n)(1-q^n/z))``."""
    out = one(t, MZ)
    out = out.mul_one_minus(mono(1, 0, z=1)).mul_one_minus(mono(1, 0, z=-1))
    return out.div_one_minus(mono(1, n, z=1)).div_one_minus(mono(1, n, z=-1))


def _kfold_sum(k: int, t: int, with_z: bool) -> TruncatedSeries:
    """``1 + sum_{n>=1} (-1)^n a^n (-1/a;q)_n q^{(k-1)n^2 + [z] n} (1+q^n) / (-aq;q)_n * [z-factor]``."""
    total = one(t, MZ)
    n = 1
    lin = 1 if with_z else 0
    while (k - 1) * n * n + lin * n <= t:
        e = (k - 1) * n * n + lin * n
        term = counting._poch_ratio(n, t - e).times_monomial((-1) ** (n % 2), e, 0, n)
        term = term.mul_one_plus(mono(1, n))
        if with_z:
            term = term * _z_factor(n, t)
        total = total + term.truncate(t)
        n += 1
    return total


def _kfold1_rhs(k: int, t: int) -> TruncatedSeries:
    """Right side written over the increments ``m_1, ..., m_{k-1} >= 0``."""
    grouped: dict[int, TruncatedSeries] = {}

    def walk(prefix: list[int]):
        partial = [sum(prefix[: i + 1]) for i in range(len(prefix))]
        big = partial[-1] if prefix else 0
        # every partial sum below the full one contributes its square
        e = big * (big + 1) // 2 + sum(s * s for s in partial[:-1])
        if e > t:
            return
        if len(prefix) == k - 1:
            piece = poch(mono(-1, 0, a=-1), big, t - e, ring=MZ).times_monomial(1, e, 0, big)
            for m in prefix[1:]:
                piece = piece * poch_inverse(mono(1, 1), m, t - e)
            m1 = prefix[0]
            grouped[m1] = grouped.get(m1, zero(t, MZ)) + piece.truncate(t)
            return
        m = 0
        while True:
            nxt = prefix + [m]
            p = [sum(nxt[: i + 1]) for i in range(len(nxt))]
            if p[-1] * (p[-1] + 1) // 2 + sum(s * s for s in p[:-1]) > t:
                break
            walk(nxt)
            m += 1

    walk([])
    total = zero(t, MZ)
    for m1, piece in grouped.items():
        tail = (poch_inverse(mono(1, 1, z=1), m1, t, ring=MZ)
                * poch_inverse(mono(1, 1, z=-1), m1, t, ring=MZ))
        total = total + (piece * tail).truncate(t)
    prefactor = poch_inf(mono(1, 1), 1, t, ring=MZ) * poch_inf_inverse(mono(-1, 1, a=1), 1, t)
    return prefactor * total


def _bilateral_a(K: int, c: int, t: int) -> TruncatedSeries:
    """``(-aq;q)_inf/(q;q)_inf sum_n (-1)^n a^n q^{K n^2 + c n} (-1/a;q)_n / (-aq;q)_n``."""

    def term(n: int, tt: int) -> TruncatedSeries:
        e = K * n * n + c * n
        # the ratio has valuation |n| for n < 0, so the term valuation is
        # at least K n^2 + (c - 1) n
        if e + max(0, -n) > tt:
            return zero(tt, MZ)
        return counting._poch_ratio(n, tt - e).times_monomial((-1) ** (n % 2), e, 0, n)

    total = bilateral_sum(term, quad(K, c - 1, 0), t, MZ)
    return counting.kgen_prefactor(t) * total


def _garvan_lhs(n: int) -> Builder:
    return lambda t: _z_factor(n, t - n).times_monomial(1, n) if t >= n else zero(t, MZ)


def _garvan_rhs(n: int) -> Builder:
    def build(t: int) -> TruncatedSeries:
        terms = {}
        m = 0
        while m * n <= t:
            terms.setdefault(m * n, {})[(m, 0)] = 1
            if m:
                terms[m * n][(-m, 0)] = 1
            m += 1
        geo = from_coeffs([MarkerPoly(terms.get(e, {})) for e in range(t + 1)], 0, t, MZ)
        frac = one(t, MZ).mul_one_minus(mono(1, n)).div_one_plus(mono(1, n))
        return one(t, MZ) - frac * geo
    return build


# ---------------------------------------------------------------- self-conjugate and mock theta chain


def _skcon(k: int, side: str) -> Builder:
    return lambda t: counting.self_conjugate_series(k, side, t)


def eqmock_lhs(t: int) -> TruncatedSeries:
    """``sum_{n1>=n2>=0} (-1;q)_{n1} q^{C(n1+1,2)+n2^2} / ((q;q)_{n1-n2} (q^2;q^2)_{n2})``."""
    total = zero(t, ZZ)
    n1 = 0
    while n1 * (n1 + 1) // 2 <= t:
        for n2 in range(n1 + 1):
            e = n1 * (n1 + 1) // 2 + n2 * n2
            if e > t:
                break
            piece = poch(mono(-1, 0), n1, t - e)
            piece = piece * poch_inverse(mono(1, 1), n1 - n2, t - e)
            piece = piece * poch_inverse(mono(1, 2), n2, t - e, base=2)
            total = total + piece.times_monomial(1, e)
        n1 += 1
    return total


def _prefactor_2(t: int) -> TruncatedSeries:
    """``2 (-q;q)_inf / (q;q)_inf``."""
    return (poch_inf(mono(-1, 1), 1, t, ring=QQ)
            * poch_inf_inverse(mono(1, 1), 1, t, ring=QQ)).scale(2)


def _c5(n: int) -> int:
    return 5 * n * (n - 1) // 2


def _sum_over_1_plus_qn(t: int) -> TruncatedSeries:
    """``sum_n (-1)^n q^{5 C(n,2) + 3n} / (1 + q^n)``."""
    return _bilateral(lambda n: _c5(n) + 3 * n, lambda n: {0: 1}, lambda n: [mono(-1, n)],
                      quad(Fraction(5, 2), Fraction(-1, 2)), t)


def _dissected_sum(t: int) -> TruncatedSeries:
    return _bilateral(lambda n: _c5(n) + 3 * n,
                      lambda n: {i * n: (-1) ** i for i in range(5)} if n else {0: 1},
                      lambda n: [mono(-1, 5 * n)],
                      quad(Fraction(5, 2), Fraction(-1, 2)), t)


def _five_sum(c: int) -> Builder:
    """``sum_n (-1)^n q^{5 C(n,2) + c n} / (1 + q^{5n})``."""
    return lambda t: _bilateral(lambda n: _c5(n) + c * n, lambda n: {0: 1},
                                lambda n: [mono(-1, 5 * n)],
                                quad(Fraction(5, 2), Fraction(2 * c - 15, 2)), t)


def _five_sums(t: int) -> TruncatedSeries:
    out = zero(t, QQ)
    for c, s in ((3, 1), (4, -1), (5, 1), (6, -1), (7, 1)):
        out = out + _five_sum(c)(t).scale(s)
    return out


def _three_sums(t: int) -> TruncatedSeries:
    return (_five_sum(3)(t).scale(2) - _five_sum(4)(t).scale(2) + _five_sum(5)(t))


def _appell_form(t: int) -> TruncatedSeries:
    first = _theta(mono(1, 3), 5, t) * appell_lerch(mono(-1, 2), mono(1, 3), 5, t)
    second = _theta(mono(1, 4), 5, t) * appell_lerch(mono(-1, 1), mono(1, 4), 5, t)
    third = _q_poch_inf(5, t) ** 3 * _theta(mono(-1, 0), 5, t).invert()
    return first.scale(2) - second.scale(2) + third


def _jacobi_rhs(z: SignedMonomial, base: int) -> Builder:
    return lambda t: _q_poch_inf(base, t) ** 3 * _theta(z, base, t).invert()


def _tenord_x_rhs(t: int) -> TruncatedSeries:
    m = appell_lerch(mono(-1, 2), mono(1, 4), 5, t)
    q = _theta(mono(1, 3), 10, t) * _theta(mono(1, 5), 10, t) * _theta(mono(1, 1), 5, t).invert()
    return m.scale(2) - q


def _tenord_chi_rhs(t: int) -> TruncatedSeries:
    m = appell_lerch(mono(-1, 1), mono(1, 2), 5, t)
    q = _theta(mono(1, 1), 10, t) * _theta(mono(1, 5), 10, t) * _theta(mono(1, 2), 5, t).invert()
    return m.scale(2) + q.times_monomial(1, 1)


def check_mmtrans_parameters(x: SignedMonomial, base: int, z0: SignedMonomial,
                             z1: SignedMonomial) -> None:
    """Reject parameter triples where either side has a pole or a vanishing theta."""
    for name, z in (("z0", z0), ("z1", z1), ("z1/z0", z1 / z0), ("x z0 z1", x * z0 * z1),
                    ("x z0", x * z0), ("x z1", x * z1)):
        if z.sign == 1 and z.q_exp % base == 0:
            raise DomainError(f"j({name}; q^{base}) vanishes for {name} = {z}")


def _mmtrans(x: SignedMonomial, base: int, z0: SignedMonomial, z1: SignedMonomial):
    check_mmtrans_parameters(x, base, z0, z1)

    def lhs(t: int) -> TruncatedSeries:
        return appell_lerch(x, z1, base, t) - appell_lerch(x, z0, base, t)

    def rhs(t: int) -> TruncatedSeries:
        num = _q_poch_inf(base, t) ** 3 * _theta(z1 / z0, base, t) * _theta(x * z0 * z1, base, t)
        den = (_theta(z0, base, t) * _theta(z1, base, t) * _theta(x * z0, base, t)
               * _theta(x * z1, base, t))
        return (num * den.invert()).times(z0)

    return lhs, rhs


def _mdif(x: SignedMonomial, za: SignedMonomial, zb: SignedMonomial, sign: int, zden: SignedMonomial):
    def lhs(t: int) -> TruncatedSeries:
        return appell_lerch(x, za, 5, t) - appell_lerch(x, zb, 5, t)

    def rhs(t: int) -> TruncatedSeries:
        den = _theta(zden, 5, t) * _theta(mono(-1, 5), 5, t)
        return (_q_poch_inf(5, t) ** 3 * den.invert()).scale(sign)

    return lhs, rhs


def _eqmock_rhs(t: int) -> TruncatedSeries:
    mq = poch_inf(mono(-1, 1), 1, t, ring=QQ)
    x_part = mq * mock_X(t).to_rational() * (poch_inf(mono(1, 1), 5, t, ring=QQ)
                                             * poch_inf(mono(1, 4), 5, t, ring=QQ)).invert()
    chi_part = mq * mock_chi(t).to_rational() * (poch_inf(mono(1, 2), 5, t, ring=QQ)
                                                 * poch_inf(mono(1, 3), 5, t, ring=QQ)).invert()
    last = poch_inf(mono(1, 1), 1, t, ring=QQ) * mq.invert()
    return x_part.scale(2) - chi_part.scale(2) - last


def _bracket_lhs(t: int) -> TruncatedSeries:
    a = (_theta(mono(1, 3), 5, t) * _theta(mono(1, 3), 10, t) * _theta(mono(1, 5), 10, t)
         * _theta(mono(1, 1), 5, t).invert())
    b = (_theta(mono(1, 4), 5, t) * _theta(mono(1, 1), 10, t) * _theta(mono(1, 5), 10, t)
         * _theta(mono(1, 2), 5, t).invert()).times_monomial(1, 1)
    c = _q_poch_inf(5, t) ** 3 * _theta(mono(-1, 0), 5, t).invert()
    return a + b - c.scale(3)


def _bracket_rhs(t: int) -> TruncatedSeries:
    ratio = poch_inf(mono(1, 1), 1, t, ring=QQ) * poch_inf_inverse(mono(-1, 1), 1, t, ring=QQ)
    return (ratio * ratio).scale(Fraction(-1, 2))


# ---------------------------------------------------------------- registry


def _build_registry() -> list[IdentityCase]:
    cases: list[IdentityCase] = []

    def add(id_, ring, markers, lhs, rhs, order, anchor):
        cases.append(IdentityCase(id_, ring, frozenset(markers), lhs, rhs, order, anchor))

    add("dyson-rank-gf", ZZ, "z", _table("N", "gf"), _table("N", "enum"), 40,
        "Dyson rank generating function against enumeration of partitions")
    add("crank-gf", ZZ, "z", _table("M", "gf"), _crank_enum_corrected, 40,
        "crank generating function against enumeration, plus the q(z-1) term at n = 1")
    for k in range(2, 6):
        add(f"nk-gf-k{k}", ZZ, "z", _table("N_k", "gf", k), _table("N_k", "enum", k), 25,
            f"Garvan {k}-rank generating function against Durfee dissection enumeration")
    add("op2-gf", ZZ, "z", _table("Nbar", "gf"), _table("Nbar", "enum"), 20,
        "D-rank generating function for overpartitions against enumeration")
    for k in (2, 3, 4):
        add(f"kgen-vs-multisum-k{k}", ZZ, "za", _table("Nbar_k", "gf", k), _multisum(k), 40,
            f"kbar-rank generating function equals the Durfee chain multisum, k = {k}")
    for k in (2, 3, 4):
        add(f"comrank-enum-k{k}", ZZ, "za", _table("Nbar_k", "gf", k), _table("Nbar_k", "enum", k),
            16, f"kbar-rank generating function counts overpartitions by kbar-rank, k = {k}")
    for k in (2, 3, 4):
        add(f"parkr-k{k}", ZZ, "z", _j_slice_series(k), _table("N_k", "gf", k), 30,
            f"a = 0 slice of the kbar-rank generating function is the {k}-rank one")
    add("op2-asum", ZZ, "z", _j_sum_series, _table("Nbar", "gf"), 20,
        "a = 1 specialization at k = 2 is the D-rank generating function")
    for k in (3, 4):
        add(f"kfold1-k{k}", ZZ, "za",
            lambda t, k=k: _kfold_sum(k, t, True), lambda t, k=k: _kfold1_rhs(k, t), 30,
            f"z-marked specialization of the k-fold Whipple transformation, k = {k}")
    for k in (3, 4):
        add(f"kfold2-k{k}", ZZ, "za",
            lambda t, k=k: counting.kgen_prefactor(t) * _kfold_sum(k, t, True),
            lambda t, k=k: counting.chain_sum(k, t, counting._zq_tail, r_min=0), 30,
            f"multiplied-through specialization with Durfee chain right side, k = {k}")
    for k in (3, 4):
        add(f"kfold4-k{k}", ZZ, "a",
            lambda t, k=k: counting.kgen_prefactor(t) * _kfold_sum(k, t, False),
            lambda t, k=k: counting.chain_sum(k - 1, t, counting._q_tail, r_min=0), 30,
            f"z = 1 part of the specialization equals the depth {k - 2} chain, k = {k}")
        add(f"kfold4-bilateral-k{k}", ZZ, "a",
            lambda t, k=k: counting.kgen_prefactor(t) * _kfold_sum(k, t, False),
            lambda t, k=k: _bilateral_a(k - 1, 1, t), 30,
            f"folding the one-sided sum into a bilateral sum, k = {k}")
    for n in range(1, 9):
        add(f"garvan-lemma36-n{n}", ZZ, "z", _garvan_lhs(n), _garvan_rhs(n), 40,
            f"partial fraction expansion of q^n(1-z)(1-1/z)/((1-zq^n)(1-q^n/z)), n = {n}")
    for K in (2, 3):
        add(f"corteel-mallet-spec-K{K}", ZZ, "a",
            lambda t, K=K: _bilateral_a(K, 1, t),
            lambda t, K=K: counting.chain_sum(K, t, counting._q_tail, r_min=0), 40,
            f"bilateral a-sum equals the Durfee chain with tail 1/(q;q), K = {K}, i = K")
        for i in range(1, K):
            add(f"corteel-mallet-K{K}-i{i}", ZZ, "a",
                lambda t, K=K, i=i: _bilateral_a(K, K - i + 1, t),
                lambda t, K=K, i=i: counting.chain_sum(K, t, counting._q_tail, r_min=0,
                                                       linear_from=i), 40,
                f"bilateral a-sum with linear exponent {K - i + 1}, K = {K}, i = {i}")
    for k in (2, 3, 4):
        add(f"skcon-k{k}", ZZ, "a", _skcon(k, "lhs"), _skcon(k, "rhs"), 40,
            f"self-{k}-conjugate overpartition multisum against its bilateral form")
    add("twocm1-step1", QQ, "", eqmock_lhs,
        lambda t: _prefactor_2(t) * _sum_over_1_plus_qn(t), 60,
        "a = 1, k = 3 specialization: multisum equals 2(-q)/(q) times a bilateral sum")
    add("twocm1-step2", QQ, "", _sum_over_1_plus_qn, _dissected_sum, 60,
        "1/(1+x) = (1-x+x^2-x^3+x^4)/(1+x^5) inside the bilateral sum")
    add("twocm1-step3", QQ, "", _five_sums, _three_sums, 60,
        "five bilateral sums over 1+q^{5n} collapse to three by n -> -n")
    add("twocm1-step4", QQ, "", _three_sums, _appell_form, 60,
        "three bilateral sums as theta times Appell-Lerch sums plus a Jacobi sum")
    jacobi = [(5, mono(1, 1), "q"), (5, mono(1, 2), "q2"), (5, mono(-1, 1), "-q"),
              (1, mono(-1, 1), "-q"), (1, mono(-1, 0), "-1"), (1, mono(-1, 2), "-q2")]
    for base, z, label in jacobi:
        add(f"jacobi-bilateral-b{base}-z{label}", QQ, "",
            lambda t, z=z, base=base: jacobi_bilateral_sum(z, base, t), _jacobi_rhs(z, base), 60,
            f"sum (-1)^n q^C(n+1,2)/(1 - z q^n) = (q;q)^3/j(z;q) in base q^{base}, z = {label}")
    add("tenord-X", QQ, "", lambda t: mock_X(t).to_rational(), _tenord_x_rhs, 60,
        "X(q) = 2 m(-q^2, q^5, q^4) - j(q^3;q^10) j(q^5;q^10) / j(q;q^5)")
    add("tenord-chi", QQ, "", lambda t: mock_chi(t).to_rational(), _tenord_chi_rhs, 60,
        "chi(q) = 2 m(-q, q^5, q^2) + q j(q;q^10) j(q^5;q^10) / j(q^2;q^5)")
    for i, (x, base, z0, z1) in enumerate([
            (mono(-1, 2), 5, mono(1, 3), mono(1, 4)),
            (mono(-1, 1), 5, mono(1, 2), mono(1, 4)),
            (mono(1, 1), 7, mono(1, 2), mono(1, 3))], start=1):
        lhs, rhs = _mmtrans(x, base, z0, z1)
        add(f"mmtrans-inst{i}", QQ, "", lhs, rhs, 60,
            f"m(x,q,z1) - m(x,q,z0) theta quotient at x = {x}, base q^{base}, z0 = {z0}, z1 = {z1}")
    lhs, rhs = _mdif(mono(-1, 2), mono(1, 3), mono(1, 4), -1, mono(1, 3))
    add("mdif1", QQ, "", lhs, rhs, 60,
        "m(-q^2,q^5,q^3) - m(-q^2,q^5,q^4) = -(q^5;q^5)^3 / (j(q^3;q^5) j(-q^5;q^5))")
    lhs, rhs = _mdif(mono(-1, 1), mono(1, 4), mono(1, 2), 1, mono(1, 4))
    add("mdif2", QQ, "", lhs, rhs, 60,
        "m(-q,q^5,q^4) - m(-q,q^5,q^2) = (q^5;q^5)^3 / (j(q^4;q^5) j(-q^5;q^5))")
    add("eqmock", QQ, "", eqmock_lhs, _eqmock_rhs, 60,
        "self-3-conjugate generating function at a = 1 in terms of X(q) and chi(q)")
    add("bracket-modular", QQ, "", _bracket_lhs, _bracket_rhs, 60,
        "theta-quotient combination equals -(q;q)^2 / (2 (-q;q)^2)")
    return cases


_REGISTRY: dict[str, IdentityCase] | None = None


def registry() -> dict[str, IdentityCase]:
    global _REGISTRY
    if _REGISTRY is None:
        _REGISTRY = {c.id: c for c in _build_registry()}
    return _REGISTRY


def list_identities() -> list[str]:
    return list(registry())


# short names for a representative member of a parametrized family
ALIASES = {
    "jacobi-bilateral": "jacobi-bilateral-b5-zq",
    "corteel-mallet-spec": "corteel-mallet-spec-K2",
}


def get_case(id_: str) -> IdentityCase:
    try:
        return registry()[ALIASES.get(id_, id_)]
    except KeyError:
        raise UnknownIdentity(id_) from None


# ---------------------------------------------------------------- verification


def _expand(build: Builder, order: int, extra=(0, 2, 6, 16, 40)) -> TruncatedSeries:
    last = None
    for e in extra:
        s = build(order + e)
        if s.trunc_order >= order:
            return s.truncate(order)
        last = s
    raise TruncationError(f"builder reached only q^{last.trunc_order}, wanted q^{order}")


def _show(v) -> str:
    return str(v)


def verify(id_: str, order: int | None = None,
           perturb: tuple[int, int] | None = None) -> VerificationReport:
    """Expand both sides of a registered case and compare through ``q^order``.

    ``perturb = (e, c)`` adds ``c q^e`` to the left side (harness self-test).
    """
    case = get_case(id_)
    id_ = case.id
    order = case.default_order if order is None else int(order)
    if order < 0:
        raise counting.UsageError("order must be non-negative")
    start = time.perf_counter()
    try:
        lhs = _expand(case.lhs, order)
        rhs = _expand(case.rhs, order)
    except DomainError as exc:
        raise DomainError(f"{id_}: {exc}") from exc
    if lhs.ring.rational != rhs.ring.rational:
        lhs, rhs = lhs.to_rational(), rhs.to_rational()
    if perturb is not None:
        e, c = perturb
        if e <= order:
            lhs = lhs + make_monomial(c, e, order, ring=Ring.of(lhs.ring.rational, False))
    cmp = equal_up_to(lhs, rhs, order)
    ms = (time.perf_counter() - start) * 1000.0
    if cmp.equal:
        return VerificationReport(id_, order, "equal", None, ms)
    mismatch = {"q_exp": cmp.q_exp, "z_exp": cmp.z_exp, "a_exp": cmp.a_exp,
                "lhs": _show(cmp.lhs), "rhs": _show(cmp.rhs)}
    return VerificationReport(id_, order, "mismatch", mismatch, ms)


def _scaled(case: IdentityCase, scale: float) -> int:
    return max(1, int(round(case.default_order * scale)))


def _verify_entry(args: tuple[str, int]) -> VerificationReport:
    id_, order = args
    try:
        return verify(id_, order)
    except Exception as exc:  # reported per case; the aggregate status catches it
        return VerificationReport(id_, order, "error", None, 0.0, f"{type(exc).__name__}: {exc}")


def verify_all(scale: float = 1.0, jobs: int = 1, ids: list[str] | None = None) -> list[VerificationReport]:
    """Run every registered case at ``scale * default_order``, in registry order."""
    if not 0 < scale <= 1:
        raise counting.UsageError("scale must lie in (0, 1]")
    names = list_identities() if ids is None else list(ids)
    work = [(i, _scaled(get_case(i), scale)) for i in names]
    if jobs <= 1:
        return [_verify_entry(w) for w in work]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(_verify_entry, work))
