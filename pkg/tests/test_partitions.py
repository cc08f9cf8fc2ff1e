from collections import Counter

import pytest
from hypothesis import given
from hypothesis import strategies as st

from okrank.partitions import (
    Overpartition,
    Partition,
    ParseError,
    conjugate,
    count_overpartitions,
    count_partitions,
    crank,
    d_rank,
    durfee_size,
    durfee_sizes,
    dyson_rank,
    enumerate_overpartitions,
    enumerate_partitions,
    format_overpartition,
    generalized_durfee,
    k_rank,
    parse_overpartition,
    parse_partition,
    parts_below_durfee,
    rank_stat,
)
from okrank.series import DomainError

from oracles import euler_product, inverse_poly, neg_q_poch, poly_mul


partitions_st = st.lists(st.integers(1, 12), min_size=1, max_size=12).map(
    lambda xs: Partition.of(xs))


@st.composite
def overpartitions_st(draw):
    parts = draw(st.lists(st.integers(1, 12), min_size=0, max_size=10))
    distinct = sorted(set(parts))
    over = [v for v in distinct if draw(st.booleans())]
    plain = list(parts)
    for v in over:
        plain.remove(v)
    return Overpartition.of(plain, over)


def test_partition_counts_match_generating_function():
    n = 30
    gf = inverse_poly(euler_product(n), n)
    assert [len(enumerate_partitions(i)) for i in range(16)] == gf[:16]
    assert [count_partitions(i) for i in range(n + 1)] == gf


def test_overpartition_counts_match_generating_function():
    n = 20
    gf = poly_mul(neg_q_poch(n, n), inverse_poly(euler_product(n), n), n)
    assert [count_overpartitions(i) for i in range(n + 1)] == gf
    assert [len(enumerate_overpartitions(i)) for i in range(13)] == gf[:13]


def test_enumeration_is_duplicate_free_and_canonical():
    objs = enumerate_overpartitions(9)
    assert len(set(objs)) == len(objs)
    for o in objs:
        assert Overpartition(o.parts) == o


def test_small_overpartitions():
    assert {format_overpartition(o) for o in enumerate_overpartitions(2)} == {"2", "2o", "1,1", "1o,1"}


def test_parse_round_trip_and_errors():
    text = "13,10,9,7o,6,4o,4,4,3,1,1,1"
    assert format_overpartition(parse_overpartition(text)) == text
    for bad in ("1,2", "3o,3o", "4,4o", "x", "0", "-1", "3,,1"):
        with pytest.raises(ParseError):
            parse_overpartition(bad)
    assert parse_overpartition("") == Overpartition()
    assert parse_partition("3,1,1") == Partition((3, 1, 1))


def test_durfee_examples():
    p = Partition((4, 4, 3, 1, 1, 1))
    assert durfee_sizes(p, 3) == [3, 1, 1]
    assert durfee_size(p, 0) is None
    assert parts_below_durfee(p, 3) == (1, Partition((1,)))
    assert parts_below_durfee(p, 0)[0] == 6
    assert conjugate((5, 5, 4, 2, 1, 1, 1)) == Partition((7, 4, 3, 3, 2))


def test_generalized_durfee_of_the_worked_example():
    assert generalized_durfee(parse_overpartition("13,10,9,7o,6,4o,4,4,3,1,1,1")) == 6


def test_rank_and_crank_examples():
    assert dyson_rank((4, 1)) == 2
    assert crank((1, 1, 1)) == -3
    assert crank((3, 1)) == 0      # one 1, one part above it
    assert crank((4,)) == 4
    assert d_rank(parse_overpartition("2,1")) == 0
    assert k_rank((2, 2, 1, 1), 3) == -1
    assert rank_stat((3,), "dyson") == 2
    with pytest.raises(DomainError):
        dyson_rank(())
    with pytest.raises(ValueError):
        rank_stat((1,), "k_rank")


@pytest.mark.parametrize("n", [4, 9, 14, 19])
def test_rank_classes_mod_five_are_equinumerous(n):
    classes = Counter(dyson_rank(p) % 5 for p in enumerate_partitions(n))
    assert len(set(classes[r] for r in range(5))) == 1


@pytest.mark.parametrize("n", [4, 9, 14])
def test_crank_classes_mod_five_are_equinumerous(n):
    classes = Counter(crank(p) % 5 for p in enumerate_partitions(n))
    assert len(set(classes[r] for r in range(5))) == 1


def test_two_rank_is_dyson_rank():
    for n in range(1, 14):
        for p in enumerate_partitions(n):
            assert k_rank(p, 2) == dyson_rank(p)


@given(partitions_st)
def test_conjugation_is_an_involution_negating_rank(p):
    c = conjugate(p)
    assert conjugate(c) == p
    assert c.weight == p.weight
    assert dyson_rank(c) == -dyson_rank(p)


@given(partitions_st, st.integers(1, 4))
def test_successive_durfee_squares_fit(p, depth):
    sizes = durfee_sizes(p, depth)
    assert all(a >= b for a, b in zip(sizes, sizes[1:]))
    count, rest = parts_below_durfee(p, depth)
    assert count == len(rest) and sum(sizes) + count == len(p)


@given(overpartitions_st())
def test_text_format_round_trips(o):
    assert parse_overpartition(format_overpartition(o)) == o
