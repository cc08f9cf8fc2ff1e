import io
import json
import subprocess
import sys

import pytest

from okrank.cli import run
from okrank.partitions import enumerate_overpartitions, format_overpartition

EXAMPLE = "13,10,9,7o,6,4o,4,4,3,1,1,1"


def call(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = run(list(argv), out, err)
    return code, out.getvalue(), err.getvalue()


def test_map_worked_example():
    code, out, _ = call("map", "--overpartition", EXAMPLE)
    data = json.loads(out)
    assert code == 0
    assert data["vector"] == {"gamma_len": 6, "delta": [5, 3, 1, 0],
                              "alpha": [5, 5, 4, 2, 1, 1, 1], "beta": [4, 4, 3, 1, 1, 1]}
    assert data["kbar_ranks"]["5"] == 2
    assert set(data["kbar_ranks"]) == {"2", "3", "4", "5"}


def test_map_inverse_round_trips_corpus():
    for n in range(11):
        for lam in enumerate_overpartitions(n):
            text = format_overpartition(lam)
            _, out, _ = call("map", "--overpartition", text)
            code, back, _ = call("map", "--inverse", out)
            assert code == 0 and back.strip() == text


def test_rank_and_conjugate():
    assert call("rank", "--k", "2", "--overpartition", "2,1")[1] == "0\n"
    assert call("rank", "--k", "3", "--overpartition", "2,1")[1] == "1\n"
    assert call("rank", "--k", "5", "--overpartition", EXAMPLE)[1] == "2\n"
    code, out, _ = call("conjugate", "--k", "3", "--overpartition", "5,4o,3,2,1")
    assert code == 0
    code, back, _ = call("conjugate", "--k", "3", "--overpartition", out.strip())
    assert back.strip() == "5,4o,3,2,1"


@pytest.mark.parametrize("argv", [
    ("map", "--overpartition", "1,2"),
    ("map", "--overpartition", "3o,3o"),
    ("map", "--inverse", "{not json"),
    ("map", "--inverse", '{"gamma_len": 1, "delta": [4], "alpha": [], "beta": []}'),
    ("rank", "--k", "1", "--overpartition", "2,1"),
    ("count", "--stat", "zz", "--max-n", "4"),
    ("count", "--stat", "nbark", "--max-n", "4"),
    ("count", "--stat", "n", "--max-n", "0"),
    ("verify", "--id", "nope"),
    ("verify", "--all", "--order", "3"),
    ("frobnicate",),
    (),
])
def test_usage_errors_exit_two(argv):
    code, _, err = call(*argv)
    assert code == 2
    assert err


def test_verify_exit_codes():
    assert call("verify", "--id", "eqmock", "--order", "60")[0] == 0
    code, out, _ = call("verify", "--id", "mdif1", "--order", "15", "--perturb", "7",
                        "--format", "json")
    assert code == 1
    assert json.loads(out)["mismatch"]["q_exp"] == 7


def test_list_identities():
    code, out, _ = call("list-identities")
    assert code == 0
    ids = [line.split("\t")[0] for line in out.splitlines()]
    assert "eqmock" in ids and "bracket-modular" in ids


def test_count_formats_and_cache(tmp_path):
    args = ("count", "--stat", "nbark", "--k", "3", "--max-n", "12")
    plain = call(*args)[1]
    code, first, err1 = call(*args, "--cache-dir", str(tmp_path), "--verbose")
    code2, second, err2 = call(*args, "--cache-dir", str(tmp_path), "--verbose")
    assert code == code2 == 0
    assert plain == first == second
    assert "miss" in err1 and "hit" in err2
    js = json.loads(call(*args, "--format", "json")[1])
    assert js["stat"] == "Nbar_k" and js["k"] == 3


def test_count_with_corrupt_cache_recomputes(tmp_path):
    args = ("count", "--stat", "n", "--max-n", "15", "--cache-dir", str(tmp_path))
    first = call(*args)[1]
    for f in tmp_path.iterdir():
        f.write_bytes(b"junk")
    code, again, _ = call(*args)
    assert code == 0 and again == first


def test_count_env_cache(tmp_path, monkeypatch):
    monkeypatch.setenv("OKRANK_CACHE", str(tmp_path))
    call("count", "--stat", "m", "--max-n", "9")
    assert any(tmp_path.iterdir())


def test_console_script_entry_point():
    proc = subprocess.run([sys.executable, "-m", "okrank.cli", "--version"], capture_output=True,
                          text=True)
    assert proc.returncode == 0
    assert proc.stdout.startswith("okrank ")
