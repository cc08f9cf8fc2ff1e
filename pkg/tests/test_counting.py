from collections import Counter

import pytest

from okrank.bijection import kbar_rank, over_to_vector, has_durfee_depth
from okrank.counting import (
    RankTable,
    UsageError,
    a_sum_check,
    canonical_stat,
    rank_table,
    reduction_check_a0,
    self_conjugate_by_overlines,
    self_conjugate_count,
    self_conjugate_series,
)
from okrank.partitions import enumerate_overpartitions, enumerate_partitions, dyson_rank


def test_dyson_table_matches_direct_count():
    t = rank_table("N", "gf", 12)
    for n in range(1, 13):
        direct = Counter(dyson_rank(p) for p in enumerate_partitions(n))
        assert t.by_m(n) == dict(direct)


def test_kbar_table_matches_direct_count():
    k = 3
    t = rank_table("nbark", "gf", 9, k)
    direct = Counter()
    for n in range(1, 10):
        for lam in enumerate_overpartitions(n):
            v = over_to_vector(lam)
            if has_durfee_depth(v, k):
                direct[(n, kbar_rank(lam, k), lam.overline_count)] += 1
    assert t.restrict(1, 9) == dict(direct)


def test_crank_table_anomaly_at_one():
    gf = rank_table("M", "gf", 10)
    assert (gf.count(1, 0), gf.count(1, 1), gf.count(1, -1)) == (-1, 1, 1)
    assert gf.diff(rank_table("M", "enum", 10), lo=2) == []


@pytest.mark.parametrize("k", [2, 3, 4])
def test_three_routes_agree(k):
    gf = rank_table("Nbar_k", "gf", 12, k)
    assert gf.diff(rank_table("Nbar_k", "multisum", 12, k)) == []
    assert gf.diff(rank_table("Nbar_k", "enum", 12, k)) == []


@pytest.mark.parametrize("k", [2, 3, 4])
def test_tables_are_symmetric(k):
    assert rank_table("Nbar_k", "gf", 25, k).asymmetries() == []


def test_level_two_and_one_reductions():
    assert rank_table("N_k", "gf", 20, 2).diff(rank_table("N", "gf", 20)) == []
    assert rank_table("N_k", "gf", 20, 1).diff(rank_table("M", "gf", 20)) == []


def test_reductions():
    for k in (2, 3, 4):
        assert reduction_check_a0(k, 15)["status"] == "pass"
    assert a_sum_check(12)["status"] == "pass"


def test_self_conjugate_series_counts_fixed_points():
    lhs = self_conjugate_series(3, "lhs", 10)
    counts = self_conjugate_count(3, 10)
    by_over = self_conjugate_by_overlines(3, 10)
    for n in range(11):
        poly = lhs.coeff(n)
        assert sum(poly.terms.values()) == counts[n]
        for (m, j), c in poly.terms.items():
            assert m == 0
            assert by_over.get((n, j), 0) == c


def test_table_serialisation_round_trips():
    t = rank_table("nbark", "gf", 8, 3)
    assert RankTable.from_json(t.to_json()) == t
    lines = t.to_tsv().splitlines()
    assert lines[0] == "n\tm\tj\tcount"
    assert len(lines) == len(t.entries) + 1
    assert t.to_series().coeff(8).terms


def test_usage_errors():
    with pytest.raises(UsageError):
        canonical_stat("x")
    with pytest.raises(UsageError):
        rank_table("nbark", "gf", 5)
    with pytest.raises(UsageError):
        rank_table("nbark", "gf", 5, 1)
    with pytest.raises(UsageError):
        rank_table("N", "multisum", 5)
    with pytest.raises(UsageError):
        rank_table("N", "gf", 0)
    with pytest.raises(UsageError):
        rank_table("N", "bogus", 5)
