import json

import pytest
from hypothesis import given
from hypothesis import strategies as st

from okrank.bijection import (
    ValidationError,
    VectorPartition,
    conjugate_overpartition,
    has_durfee_depth,
    is_self_k_conjugate,
    k_conjugate,
    kbar_rank,
    over_to_vector,
    vector_kbar_rank,
    vector_to_over,
)
from okrank.partitions import (
    Overpartition,
    Partition,
    d_rank,
    enumerate_overpartitions,
    enumerate_partitions,
    k_rank,
    parse_overpartition,
)

EXAMPLE = "13,10,9,7o,6,4o,4,4,3,1,1,1"


@st.composite
def vectors(draw):
    n = draw(st.integers(0, 6))
    delta = draw(st.sets(st.integers(0, max(n - 1, 0)), max_size=n)) if n else set()
    alpha = draw(st.lists(st.integers(1, max(n, 1)), max_size=6)) if n else []
    beta = draw(st.lists(st.integers(1, max(n, 1)), max_size=8)) if n else []
    return VectorPartition(n, tuple(delta), Partition.of(alpha), Partition.of(beta)).validate()


def test_worked_example():
    v = over_to_vector(parse_overpartition(EXAMPLE))
    assert v.gamma == (6, 5, 4, 3, 2, 1)
    assert v.delta == (5, 3, 1, 0)
    assert v.alpha == Partition((5, 5, 4, 2, 1, 1, 1))
    assert v.beta == Partition((4, 4, 3, 1, 1, 1))
    assert vector_kbar_rank(v, 5) == 2
    assert vector_to_over(v) == parse_overpartition(EXAMPLE)


def test_small_case():
    v = over_to_vector(parse_overpartition("2,1"))
    assert v == VectorPartition(1, (0,), Partition((1,)), Partition((1,)))
    assert kbar_rank(parse_overpartition("2,1"), 3) == 1


def test_round_trip_and_statistics_small_n():
    for n in range(13):
        for lam in enumerate_overpartitions(n):
            v = over_to_vector(lam)
            v.validate()
            assert vector_to_over(v) == lam
            assert lam.largest == v.gamma_len + len(v.alpha)
            assert len(lam) == v.gamma_len + len(v.beta)
            assert lam.overline_count == v.gamma_len - len(v.delta)
            assert v.weight == lam.weight


@given(vectors())
def test_vector_side_round_trip(v):
    assert over_to_vector(vector_to_over(v)) == v


def test_kbar_two_is_d_rank():
    for n in range(1, 11):
        for lam in enumerate_overpartitions(n):
            assert kbar_rank(lam, 2) == d_rank(lam)


def test_overline_free_case_reduces_to_k_rank():
    for n in range(1, 13):
        for p in enumerate_partitions(n):
            lam = Overpartition.from_partition(p)
            v = over_to_vector(lam)
            assert v.delta == tuple(range(v.gamma_len - 1, -1, -1))
            for k in (3, 4):
                if has_durfee_depth(v, k):
                    assert kbar_rank(lam, k) == k_rank(p, k)


@pytest.mark.parametrize("k", [2, 3, 4])
def test_k_conjugation_involution_small_n(k):
    for n in range(10):
        for lam in enumerate_overpartitions(n):
            v = over_to_vector(lam)
            w = k_conjugate(v, k)
            assert k_conjugate(w, k) == v
            assert vector_kbar_rank(w, k) == -vector_kbar_rank(v, k)
            assert vector_to_over(w).weight == n


@given(vectors(), st.integers(2, 5))
def test_k_conjugation_properties(v, k):
    w = k_conjugate(v, k)
    assert k_conjugate(w, k) == v
    assert vector_kbar_rank(w, k) == -vector_kbar_rank(v, k)
    assert has_durfee_depth(w, k) == has_durfee_depth(v, k)


def test_self_conjugate_fixed_points_have_rank_zero():
    for lam in enumerate_overpartitions(8):
        if is_self_k_conjugate(lam, 3):
            assert kbar_rank(lam, 3) == 0
            assert conjugate_overpartition(lam, 3) == lam


def test_json_round_trip_and_validation():
    v = over_to_vector(parse_overpartition(EXAMPLE))
    assert VectorPartition.from_json(v.to_json()) == v
    assert json.loads(v.to_json())["delta"] == [5, 3, 1, 0]
    with pytest.raises(ValidationError):
        VectorPartition.from_dict({"gamma_len": 2, "delta": [2], "alpha": [], "beta": []})
    with pytest.raises(ValidationError):
        VectorPartition.from_dict({"gamma_len": 2, "delta": [], "alpha": [3], "beta": []})
    with pytest.raises(ValidationError):
        VectorPartition.from_dict({"gamma_len": 2})
    with pytest.raises(ValueError):
        kbar_rank(parse_overpartition("1"), 1)
