import os
import warnings

import pytest

from okrank.cache import (
    MAGIC,
    CacheWarning,
    TableCache,
    cache_key,
    decode_entry,
    encode_entry,
    resolve_cache_dir,
)
from okrank.counting import rank_table


@pytest.fixture
def table():
    return rank_table("nbark", "gf", 10, 3)


def test_encode_decode(table):
    key = cache_key("Nbar_k", "gf", 3, 10)
    blob = encode_entry(key, table)
    assert blob.startswith(MAGIC)
    assert decode_entry(blob) == (key, table)


@pytest.mark.parametrize("mangle", [
    lambda b: b"XXXXX" + b[5:],
    lambda b: b[:-1],
    lambda b: b + b"\0",
    lambda b: b[:20] + bytes([b[20] ^ 1]) + b[21:],
    lambda b: b"",
])
def test_corruption_is_detected(table, mangle):
    blob = encode_entry(cache_key("Nbar_k", "gf", 3, 10), table)
    with pytest.raises(ValueError):
        decode_entry(mangle(blob))


def test_hit_miss_and_recompute_after_corruption(tmp_path, table):
    cache = TableCache(tmp_path)
    key = cache_key("Nbar_k", "gf", 3, 10)
    calls = []

    def compute():
        calls.append(1)
        return table

    assert cache.get_or_compute(key, compute) == (table, False)
    assert cache.get_or_compute(key, compute) == (table, True)
    assert len(calls) == 1
    cache.path_for(key).write_bytes(b"OKRK1garbage")
    assert cache.get_or_compute(key, compute) == (table, False)
    assert cache.events[-1] == "corrupt" or "corrupt" in cache.events
    assert len(calls) == 2
    assert cache.get_or_compute(key, compute)[1] is True


def test_version_is_part_of_the_key(tmp_path, table):
    cache = TableCache(tmp_path)
    cache.store(cache_key("Nbar_k", "gf", 3, 10, version="0.0.1"), table)
    assert cache.load(cache_key("Nbar_k", "gf", 3, 10, version="0.0.2")) is None


def test_unwritable_directory_disables_cache(tmp_path):
    target = tmp_path / "file"
    target.write_text("not a directory")
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always")
        cache = TableCache(target / "sub")
    assert not cache.enabled
    assert any(issubclass(w.category, CacheWarning) for w in caught)


def test_cache_dir_resolution(monkeypatch, tmp_path):
    monkeypatch.setenv("OKRANK_CACHE", str(tmp_path))
    assert resolve_cache_dir(None) == tmp_path
    assert resolve_cache_dir("elsewhere").name == "elsewhere"
    monkeypatch.delenv("OKRANK_CACHE")
    assert resolve_cache_dir(None) is None
