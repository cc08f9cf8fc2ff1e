from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from okrank.qobjects import (
    CertificateError,
    appell_lerch,
    bilateral_sum,
    gauss_binomial,
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
from okrank.series import DomainError, Ring, equal_up_to, make_monomial, one, zero

from oracles import binomial_poly, mock_chi_oracle, mock_x_oracle, pentagonal


def coeffs(s, n, start=0):
    return [s.coeff(i) for i in range(start, n + 1)]


def test_euler_product_matches_pentagonal_theorem():
    assert coeffs(poch_inf(mono(1, 1), 1, 40), 40) == pentagonal(40)


@given(st.integers(0, 9), st.integers(0, 9))
def test_gauss_binomial_matches_recurrence(n, m):
    poly = gauss_binomial(n, m)
    expected = binomial_poly(n, m)
    if m > n:
        assert poly.is_zero()
        return
    got = coeffs(poly, len(expected) - 1)
    assert got == expected
    assert sum(got) == __import__("math").comb(n, m)


@given(st.integers(-4, 4), st.integers(-3, 3), st.sampled_from([1, -1]))
def test_pochhammer_extends_to_negative_length(n, e, sign):
    # (x;q)_n (x q^n; q)_{-n} = 1
    x = mono(sign, e)
    if any(x.shift(i).q_exp == 0 and sign == 1 for i in range(min(n, 0), max(n, 0) + 1)):
        return
    t = 15
    try:
        left = poch(x, n, t + 30, ring=Ring.RATIONAL)
        right = poch(x.shift(n), -n, t + 30, ring=Ring.RATIONAL)
    except DomainError:
        return
    prod = left * right
    assert equal_up_to(prod, one(prod.trunc_order, Ring.RATIONAL), min(t, prod.trunc_order))


def test_pochhammer_inverse_is_inverse():
    p = poch(mono(-1, 1), 6, 30)
    assert equal_up_to(p * poch_inverse(mono(-1, 1), 6, 30), one(30), 30)
    inf = poch_inf(mono(1, 2), 3, 30) * poch_inf_inverse(mono(1, 2), 3, 30)
    assert equal_up_to(inf, one(30), 30)


def test_jacobi_triple_product():
    # j(x; q) expanded as sum_n (-1)^n q^{C(n,2)} x^n at x = -q^2, q^5 base gives
    # sum_n q^{5C(n,2)+2n}
    t = 60
    theta = jtheta(mono(-1, 2), 5, t)
    series = zero(t)
    for n in range(-10, 11):
        e = 5 * n * (n - 1) // 2 + 2 * n
        if 0 <= e <= t:
            series = series + make_monomial(1, e, t)
    assert equal_up_to(theta, series, t)


def test_vanishing_theta_is_rejected():
    with pytest.raises(DomainError):
        jtheta(mono(1, 5), 5, 10)


def test_bilateral_sum_checks_its_certificate():
    def term(n, t):
        e = n * n
        return make_monomial(1, e - 3, t) if e - 3 <= t else zero(t)

    with pytest.raises(CertificateError):
        bilateral_sum(term, quad(1, 0, 0), 20, Ring.INTEGER)
    ok = bilateral_sum(term, quad(1, 0, -3), 20, Ring.INTEGER)
    assert ok.coeff(-3) == 1 and ok.coeff(-2) == 2


def test_mock_theta_series_against_list_oracle():
    assert coeffs(mock_X(40), 40) == mock_x_oracle(40)
    assert coeffs(mock_chi(40), 40) == mock_chi_oracle(40)


@pytest.mark.parametrize("x,z", [(mono(-1, 2), mono(1, 3)), (mono(-1, 1), mono(1, 2)),
                                 (mono(1, 1), mono(1, 3))])
def test_appell_lerch_shift_invariance(x, z):
    # m(x, Q, z) = m(x, Q, Q z) with Q = q^5
    t = 40
    assert equal_up_to(appell_lerch(x, z, 5, t), appell_lerch(x, z.shift(5), 5, t), t)


@pytest.mark.parametrize("x,z", [(mono(-1, 2), mono(1, 3)), (mono(-1, 1), mono(1, 4))])
def test_appell_lerch_reflection(x, z):
    # m(x, Q, z) = x^{-1} m(x^{-1}, Q, z^{-1})
    t = 40
    left = appell_lerch(x, z, 5, t)
    right = appell_lerch(x.inverse(), z.inverse(), 5, t + 5).times(x.inverse())
    assert equal_up_to(left, right, t)


def test_appell_lerch_pole_is_a_domain_error():
    with pytest.raises(DomainError):
        appell_lerch(mono(1, 2), mono(1, 3), 5, 10)
