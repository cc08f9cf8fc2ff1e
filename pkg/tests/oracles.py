"""Brute-force reference computations shared by the tests.

Everything here works on plain Python lists and dicts so it shares no code
with the series machinery under test.
"""
from fractions import Fraction
from itertools import product


def poly_mul(a, b, n):
    out = [0] * (n + 1)
    for i, x in enumerate(a[: n + 1]):
        if x:
            for j, y in enumerate(b[: n + 1 - i]):
                out[i + j] += x * y
    return out


def one_minus_q_power(e, n, sign=1):
    """Coefficients of ``1 - sign * q^e`` through q^n."""
    out = [0] * (n + 1)
    out[0] = 1
    if e <= n:
        out[e] -= sign
    return out


def euler_product(n):
    """``(q;q)_inf`` by repeated multiplication."""
    out = [1] + [0] * n
    for e in range(1, n + 1):
        out = poly_mul(out, one_minus_q_power(e, n), n)
    return out


def pentagonal(n):
    """``(q;q)_inf`` from the pentagonal number theorem."""
    out = [0] * (n + 1)
    k = 0
    while True:
        hit = False
        for kk in {k, -k}:
            e = kk * (3 * kk - 1) // 2
            if e <= n:
                out[e] += (-1) ** (kk % 2)
                hit = True
        if not hit and k > 0:
            return out
        k += 1


def geometric_inverse(e, n, sign=1):
    """``1 / (1 - sign q^e)`` through q^n."""
    out = [0] * (n + 1)
    i = 0
    while i * e <= n:
        out[i * e] = sign ** i
        i += 1
    return out


def binomial_poly(n, m):
    """Gaussian binomial from the recurrence [n,m] = [n-1,m-1] + q^m [n-1,m]."""
    if m < 0 or m > n:
        return [0]
    table = {(0, 0): [1]}

    def get(a, b):
        if b < 0 or b > a:
            return [0]
        if (a, b) not in table:
            x = get(a - 1, b - 1)
            y = [0] * b + get(a - 1, b)
            size = max(len(x), len(y))
            table[(a, b)] = [(x[i] if i < len(x) else 0) + (y[i] if i < len(y) else 0)
                             for i in range(size)]
        return table[(a, b)]

    out = get(n, m)
    while len(out) > 1 and out[-1] == 0:
        out = out[:-1]
    return out


def inverse_poly(a, n):
    """``1/a`` through q^n for a list with unit constant term."""
    assert a[0] in (1, -1)
    out = [0] * (n + 1)
    for i in range(n + 1):
        acc = (1 if i == 0 else 0) - sum(a[j] * out[i - j] for j in range(1, min(i, len(a) - 1) + 1))
        out[i] = acc * a[0]
    return out


def neg_q_poch(m, n):
    """``(-q;q)_m`` through q^n."""
    out = [1] + [0] * n
    for e in range(1, m + 1):
        out = poly_mul(out, one_minus_q_power(e, n, -1), n)
    return out


def mock_x_oracle(n):
    out = [0] * (n + 1)
    k = 0
    while k * k <= n:
        term = [0] * k * k + inverse_poly(neg_q_poch(2 * k, n), n)
        for i in range(n + 1):
            out[i] += (-1) ** k * term[i]
        k += 1
    return out


def mock_chi_oracle(n):
    out = [0] * (n + 1)
    k = 0
    while (k + 1) ** 2 <= n:
        term = [0] * (k + 1) ** 2 + inverse_poly(neg_q_poch(2 * k + 1, n), n)
        for i in range(n + 1):
            out[i] += (-1) ** k * term[i]
        k += 1
    return out


def dense(series, n, start=0):
    return [series.coeff(i) for i in range(start, n + 1)]


def as_fraction_list(xs):
    return [Fraction(x) for x in xs]


def compositions_bounded(total, parts, cap):
    for c in product(range(cap + 1), repeat=parts):
        if sum(c) == total:
            yield c
