from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from okrank import kernels
from okrank.series import (
    DomainError,
    InversionError,
    MarkerPoly,
    Ring,
    RingError,
    SeriesRangeError,
    SignedMonomial,
    TruncationError,
    equal_up_to,
    from_coeffs,
    make_monomial,
    one,
    zero,
)

from oracles import euler_product, pentagonal

small_ints = st.integers(-20, 20)


@st.composite
def series(draw, ring=Ring.INTEGER, max_len=12):
    lo = draw(st.integers(-3, 4))
    coeffs = draw(st.lists(small_ints, min_size=1, max_size=max_len))
    trunc = lo + len(coeffs) - 1 + draw(st.integers(0, 3))
    return from_coeffs(coeffs, lo, trunc, ring)


@st.composite
def marker_series(draw):
    lo = draw(st.integers(0, 3))
    n = draw(st.integers(1, 6))
    planes = [MarkerPoly({(draw(st.integers(-2, 2)), draw(st.integers(0, 2))): draw(small_ints)})
              for _ in range(n)]
    return from_coeffs(planes, lo, lo + n - 1, Ring.MARKER_INTEGER)


def test_pentagonal_numbers_from_product():
    n = 60
    s = one(n)
    for e in range(1, n + 1):
        s = s.mul_one_minus(SignedMonomial(1, e))
    assert [s.coeff(i) for i in range(n + 1)] == pentagonal(n) == euler_product(n)


def test_partition_generating_function_inverse():
    from okrank.partitions import count_partitions

    n = 50
    s = from_coeffs(pentagonal(n), 0, n).invert()
    assert [s.coeff(i) for i in range(n + 1)] == [count_partitions(i) for i in range(n + 1)]


def test_product_truncation_uses_valuations():
    a = from_coeffs([1, 1], 2, 10)          # q^2 + q^3 + O(q^11)
    b = from_coeffs([1], 0, 5)              # 1 + O(q^6)
    assert (a * b).trunc_order == min(10 + 0, 5 + 2)


def test_coefficient_below_window_is_zero_and_above_raises():
    s = from_coeffs([3], 4, 6)
    assert s.coeff(0) == 0
    with pytest.raises(SeriesRangeError):
        s.coeff(7)


def test_integer_and_rational_do_not_mix():
    a = from_coeffs([1, 2], 0, 3)
    b = from_coeffs([Fraction(1, 2)], 0, 3)
    with pytest.raises(RingError):
        a + b
    assert (a.to_rational() + b).coeff(0) == Fraction(3, 2)


def test_markers_embed_into_plain_series():
    a = from_coeffs([1, 1], 0, 3)
    m = make_monomial(MarkerPoly.monomial(1, z=1), 1, 3)
    assert (a * m).marker_coeff(2, z=1) == 1


def test_invert_requires_unit_lead_over_integers():
    with pytest.raises(InversionError):
        from_coeffs([2, 1], 0, 4).invert()
    inv = from_coeffs([2, 1], 0, 4, Ring.RATIONAL).invert()
    assert inv.coeff(0) == Fraction(1, 2) and inv.coeff(1) == Fraction(-1, 4)


def test_division_by_one_minus_one_is_a_domain_error():
    with pytest.raises(DomainError):
        one(4).div_one_minus(SignedMonomial(1, 0))


def test_monomial_above_truncation_rejected():
    with pytest.raises(TruncationError):
        make_monomial(1, 5, 4)


def test_equal_up_to_reports_first_difference():
    a = from_coeffs([1, 2, 3, 4], 0, 3)
    b = from_coeffs([1, 2, 5, 4], 0, 3)
    cmp = equal_up_to(a, b, 3)
    assert not cmp and (cmp.q_exp, cmp.lhs, cmp.rhs) == (2, 3, 5)
    assert equal_up_to(a, b, 1)
    with pytest.raises(TruncationError):
        equal_up_to(a, b, 4)


@given(series(), series(), series())
def test_multiplication_is_associative(a, b, c):
    left, right = (a * b) * c, a * (b * c)
    t = min(left.trunc_order, right.trunc_order)
    assert left.trunc_order == right.trunc_order
    assert equal_up_to(left, right, t)


@given(series(), series())
def test_addition_commutes_and_subtraction_cancels(a, b):
    s = a + b
    assert equal_up_to(s, b + a, s.trunc_order)
    d = s - b
    assert equal_up_to(d, a, d.trunc_order)


@given(st.integers(-3, 3), st.lists(small_ints, min_size=1, max_size=10), st.sampled_from([1, -1]))
def test_inverse_times_self_is_one(lo, tail, lead):
    s = from_coeffs([lead] + tail, lo, lo + len(tail) + 2)
    prod = s * s.invert()
    assert equal_up_to(prod, one(prod.trunc_order), prod.trunc_order)


@given(marker_series(), marker_series())
def test_marker_products_commute(a, b):
    x, y = a * b, b * a
    assert equal_up_to(x, y, x.trunc_order)


@given(st.integers(1, 5), st.sampled_from([1, -1]), st.integers(-2, 2), st.integers(0, 2))
def test_div_one_minus_undoes_mul_one_minus(e, sign, dz, da):
    s = from_coeffs(list(range(1, 12)), 0, 10)
    x = SignedMonomial(sign, e, da, dz)
    back = s.mul_one_minus(x).div_one_minus(x)
    assert equal_up_to(back, s, 10)


def test_negative_exponent_division():
    # 1/(1 - q^-2) = -q^2/(1 - q^2)
    s = one(10).div_one_minus(SignedMonomial(1, -2))
    assert [s.coeff(i) for i in range(0, 11)] == [0, 0, -1, 0, -1, 0, -1, 0, -1, 0, -1]


def test_zero_series_has_valuation_above_truncation():
    z = zero(7)
    assert z.is_zero() and z.valuation == 8


# ---------------------------------------------------------------- kernels


arrays = st.tuples(st.integers(1, 8), st.integers(1, 3), st.integers(1, 3)).flatmap(
    lambda shape: st.tuples(
        st.lists(st.integers(-1000, 1000), min_size=shape[0] * shape[1] * shape[2],
                 max_size=shape[0] * shape[1] * shape[2]).map(
            lambda v, s=shape: np.array(v, dtype=np.int64).reshape(s)),
        st.lists(st.integers(-1000, 1000), min_size=shape[0] * shape[1] * shape[2],
                 max_size=shape[0] * shape[1] * shape[2]).map(
            lambda v, s=shape: np.array(v, dtype=np.int64).reshape(s))))


@given(arrays)
def test_backends_agree_on_conv3(pair):
    a, b = pair
    results = [kernels.conv3(a, b, a.shape[0], backend=bk) for bk in kernels.available_backends()]
    for r in results[1:]:
        assert np.array_equal(np.asarray(r, dtype=object), np.asarray(results[0], dtype=object))


@given(arrays, st.sampled_from([1, -1]), st.integers(1, 3), st.integers(-1, 1), st.integers(0, 1))
def test_backends_agree_on_geom(pair, coef, dq, dz, da):
    s = pair[0]
    results = [kernels.geom(s, coef, dq, dz, da, backend=bk) for bk in kernels.available_backends()]
    for r in results[1:]:
        assert np.array_equal(np.asarray(r, dtype=object), np.asarray(results[0], dtype=object))


def test_overflow_falls_back_to_exact_integers():
    big = 2**61
    s = from_coeffs([big, big], 0, 1)
    sq = s * s
    assert sq.coeff(0) == big * big and sq.coeff(1) == 2 * big * big


def test_pure_python_fallback_selected_by_environment():
    import os
    import subprocess
    import sys

    code = ("import okrank; from okrank.counting import rank_table; "
            "print(okrank.BACKEND); print(rank_table('nbark', 'gf', 15, 3).to_json())")
    env = dict(os.environ, OKRANK_PURE_PYTHON="1")
    pure = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True,
                          check=True).stdout.splitlines()
    env.pop("OKRANK_PURE_PYTHON")
    default = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True,
                             text=True, check=True).stdout.splitlines()
    assert pure[0] == "python"
    assert pure[1] == default[1]
