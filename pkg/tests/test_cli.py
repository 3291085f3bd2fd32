"""Tests for the command-line front end."""

import json
import os

import pytest

from jwkit import cli
from jwkit.qpoly import LaurentPoly, RatFunc, quantum_factorial, quantum_int


def _run(capsys, *argv):
    code = cli.run(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def _rat(doc):
    return RatFunc.from_triples(doc)


# -- group ------------------------------------------------------------------------------


def test_group_json(capsys):
    code, out, _ = _run(capsys, "group", "--family", "A", "--rank", "3")
    assert code == 0
    doc = json.loads(out)
    assert doc == {
        "family": "A",
        "rank": 3,
        "m": None,
        "order": 24,
        "longest_length": 6,
        "fully_commutative": 14,
    }


def test_group_csv_and_latex(capsys):
    code, out, _ = _run(capsys, "group", "--family", "I2", "--m", "7", "--output", "csv")
    assert code == 0
    assert out.splitlines()[1] == "I2,2,7,14,7,13"
    code, out, _ = _run(capsys, "group", "--family", "B", "--rank", "2", "--output", "latex")
    assert code == 0
    assert "\\begin{tabular}" in out and "8" in out


# -- jw ----------------------------------------------------------------------------------


def test_jw_j3_closed(capsys):
    code, out, _ = _run(capsys, "jw", "--family", "A", "--rank", "3", "--method", "closed")
    assert code == 0
    doc = json.loads(out)
    assert doc["method"] == "closed" and doc["sign"] == "plus"
    two, three = quantum_int(2), quantum_int(3)
    expected = {
        "e": RatFunc.one(),
        "1": RatFunc(-two, three),
        "2": RatFunc(-two, three),
        "12": RatFunc(LaurentPoly.one(), three),
        "21": RatFunc(LaurentPoly.one(), three),
    }
    got = {r["word"]: _rat(r["coefficient"]) for r in doc["records"]}
    assert got == expected
    # FC enumeration order and 1-based diagram arrays
    assert [r["word"] for r in doc["records"]] == ["e", "1", "2", "12", "21"]
    assert doc["records"][0]["diagram"] == [4, 5, 6, 1, 2, 3]


def test_jw_methods_agree(capsys):
    docs = []
    for method in ("closed", "wenzl", "projection"):
        code, out, _ = _run(capsys, "jw", "--family", "A", "--rank", "4", "--method", method)
        assert code == 0
        docs.append(json.loads(out)["records"])
    assert docs[0] == docs[1] == docs[2]


def test_jw_rank_one(capsys):
    code, out, _ = _run(capsys, "jw", "--family", "A", "--rank", "1")
    assert code == 0
    doc = json.loads(out)
    assert doc["records"] == [
        {"word": "e", "diagram": [2, 1], "coefficient": {"num": [[0, 1, 1]], "den": [[0, 1, 1]], "display": "1"}}
    ]


def test_jw_minus(capsys):
    code, out, _ = _run(capsys, "jw", "--family", "A", "--rank", "2", "--sign", "minus")
    assert code == 0
    doc = json.loads(out)
    got = {r["word"]: _rat(r["coefficient"]) for r in doc["records"]}
    assert got == {
        "e": RatFunc.one(),
        "1": RatFunc(LaurentPoly.one(), quantum_int(2)),
    }


def test_jw_i24_coefficients(capsys):
    code, out, _ = _run(capsys, "jw", "--family", "I2", "--m", "4")
    assert code == 0
    doc = json.loads(out)
    got = {r["word"]: _rat(r["coefficient"]) for r in doc["records"]}
    num = LaurentPoly({3: 1, 1: 2, -1: 2, -3: 1})
    den = LaurentPoly({4: 1, 2: 2, 0: 2, -2: 2, -4: 1})
    assert got["1"] == RatFunc(-num, den)
    assert "diagram" not in doc["records"][0]
    assert len(doc["records"]) == 7


def test_jw_deterministic(capsys):
    runs = []
    for _ in range(2):
        code, out, _ = _run(capsys, "jw", "--family", "B", "--rank", "2", "--output", "csv")
        assert code == 0
        runs.append(out)
    assert runs[0] == runs[1]


def test_jw_invalid_combinations(capsys):
    for argv in [
        ("jw", "--family", "B", "--rank", "2", "--method", "wenzl"),
        ("jw", "--family", "B", "--rank", "2", "--sign", "minus"),
        ("jw", "--family", "A", "--rank", "3", "--sign", "minus", "--method", "wenzl"),
        ("jw", "--family", "A", "--rank", "0"),
    ]:
        code, _, err = _run(capsys, *argv)
        assert code == 2, argv
        assert "error:" in err


# -- other computation commands --------------------------------------------------------------


def test_grrk_csv(capsys):
    code, out, _ = _run(capsys, "grrk", "--family", "I2", "--m", "5", "--output", "csv")
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "index,length,polynomial"
    assert len(lines) == 11
    # the longest element's graded rank is the full interval polynomial
    assert lines[-1].startswith("9,5,")


def test_kl_a2(capsys):
    code, out, _ = _run(capsys, "kl", "--family", "A", "--rank", "2", "--output", "csv")
    assert code == 0
    lines = out.splitlines()[1:]
    assert len(lines) == 19  # sum of Bruhat interval sizes in S3
    w0_rows = [l for l in lines if l.startswith("5,")]
    assert len(w0_rows) == 6
    for row in w0_rows:
        y = int(row.split(",")[1])
        h = row.split(",")[-1]
        assert h == repr(LaurentPoly({3 - [0, 1, 1, 2, 2, 3][y]: 1}))


def test_esign_a2(capsys):
    code, out, _ = _run(capsys, "esign", "--family", "A", "--rank", "2")
    assert code == 0
    doc = json.loads(out)
    fact3 = quantum_factorial(3)
    assert LaurentPoly.from_triples(doc["normalizer"]["grrk_w0"]) == fact3
    coeffs = {r["index"]: _rat(r["coefficient"]) for r in doc["records"]}
    assert len(coeffs) == 6
    assert coeffs[0] == RatFunc(LaurentPoly({-3: 1}), fact3)


# -- verify ------------------------------------------------------------------------------------


@pytest.mark.parametrize(
    "suite,family,rank,m",
    [
        ("parity", "B", "3", None),
        ("bar-invariance", "A", "3", None),
        ("bruhat-order", "B", "2", None),
        ("triple-agreement", "A", "3", None),
        ("idempotency", "A", "3", None),
        ("idempotency", "I2", None, "5"),
        ("annihilation", "A", "3", None),
        ("annihilation", "B", "2", None),
        ("mu-identity", "A", "2", None),
        ("ideal-closure", "B", "2", None),
        ("gen-agreement", "B", "2", None),
    ],
)
def test_verify_suites_pass(capsys, suite, family, rank, m):
    argv = ["verify", "--suite", suite, "--family", family]
    if rank:
        argv += ["--rank", rank]
    if m:
        argv += ["--m", m]
    code, out, err = _run(capsys, *argv)
    assert code == 0
    doc = json.loads(out)
    assert doc["failures"] == [] and doc["checks"] > 0
    assert "0 failures" in err


def test_verify_multiple_suites(capsys):
    code, out, err = _run(
        capsys,
        "verify", "--family", "B", "--rank", "2",
        "--suite", "parity", "--suite", "bar-invariance", "--suite", "idempotency",
    )
    assert code == 0
    docs = json.loads(out)
    assert [d["suite"] for d in docs] == ["parity", "bar-invariance", "idempotency"]
    assert all(d["failures"] == [] and d["checks"] > 0 for d in docs)
    assert err.count("0 failures") == 3


def test_verify_multiple_suites_one_failure(capsys, monkeypatch):
    monkeypatch.setitem(cli._SUITE_RUNNERS, "parity", lambda g, t: (3, [{"check": "parity"}]))
    code, out, _ = _run(
        capsys,
        "verify", "--family", "A", "--rank", "2",
        "--suite", "bar-invariance", "--suite", "parity",
    )
    assert code == 1
    docs = json.loads(out)
    assert docs[0]["failures"] == [] and docs[1]["failures"] == [{"check": "parity"}]


def test_verify_reports_failures(capsys, monkeypatch):
    monkeypatch.setitem(
        cli._SUITE_RUNNERS, "parity", lambda g, t: (3, [{"check": "parity", "element": 1}])
    )
    code, out, _ = _run(capsys, "verify", "--suite", "parity", "--family", "A", "--rank", "2")
    assert code == 1
    doc = json.loads(out)
    assert doc["failures"] == [{"check": "parity", "element": 1}]


def test_verify_usage_errors(capsys):
    code, _, err = _run(capsys, "verify", "--family", "A", "--rank", "2")
    assert code == 2 and "--suite" in err
    code, _, err = _run(capsys, "verify", "--suite", "nope", "--family", "A", "--rank", "2")
    assert code == 2 and "unknown suite" in err
    code, _, err = _run(
        capsys, "verify", "--suite", "triple-agreement", "--family", "B", "--rank", "2"
    )
    assert code == 2 and "family A" in err


# -- errors and gating ------------------------------------------------------------------------


def test_usage_errors(capsys):
    for argv in [
        ("group", "--family", "D", "--rank", "4"),
        ("group", "--family", "I2"),  # missing --m
        ("group", "--family", "A", "--rank", "2", "--m", "4"),
        ("group", "--family", "A", "--rank", "2", "--threads", "0"),
        ("group", "--family", "A", "--rank", "2", "--bogus"),
        ("kl", "--family", "A", "--rank", "7"),  # S8 without --allow-large
    ]:
        code, _, err = _run(capsys, *argv)
        assert code == 2, argv
    code, _, err = _run(capsys, "group", "--family", "D", "--rank", "4")
    assert "type D" in err


def test_large_family_gating(capsys):
    code, _, err = _run(capsys, "grrk", "--family", "F4")
    assert code == 2 and "--allow-large" in err
    code, _, err = _run(capsys, "grrk", "--family", "F4", "--allow-large")
    assert code == 2 and "cache" in err
    # group needs no KL data, so --allow-large alone suffices; but without
    # the flag it is still refused
    code, _, err = _run(capsys, "group", "--family", "F4")
    assert code == 2


# -- caching -----------------------------------------------------------------------------------


def test_cache_cold_warm_identical(capsys, tmp_path):
    argv = ("grrk", "--family", "B", "--rank", "2", "--cache-dir", str(tmp_path))
    code, cold, _ = _run(capsys, *argv)
    assert code == 0
    assert (tmp_path / "kl-B-2.kltab").exists()
    code, warm, _ = _run(capsys, *argv)
    assert code == 0
    assert cold == warm


def test_cache_corruption_recovers(capsys, tmp_path):
    argv = ("grrk", "--family", "A", "--rank", "2", "--cache-dir", str(tmp_path))
    code, cold, _ = _run(capsys, *argv)
    assert code == 0
    path = tmp_path / "kl-A-2.kltab"
    path.write_text(path.read_text().rsplit("end", 1)[0])  # truncate the count record
    code, out, err = _run(capsys, *argv)
    assert code == 0
    assert out == cold
    assert "warning" in err and "cache" in err
    # the rewritten cache is valid again
    code, out, err = _run(capsys, *argv)
    assert code == 0 and out == cold and "warning" not in err


def test_cache_env_var(capsys, tmp_path, monkeypatch):
    monkeypatch.setenv("JWKIT_CACHE_DIR", str(tmp_path))
    code, _, _ = _run(capsys, "grrk", "--family", "I2", "--m", "4")
    assert code == 0
    assert (tmp_path / "kl-I2-m4.kltab").exists()


def test_cache_unwritable_warns(capsys, tmp_path):
    blocker = tmp_path / "blocker"
    blocker.write_text("not a directory")
    argv = (
        "grrk",
        "--family",
        "A",
        "--rank",
        "2",
        "--cache-dir",
        str(blocker / "sub"),
    )
    code, out, err = _run(capsys, *argv)
    assert code == 0
    assert "warning" in err and "could not write" in err
    assert json.loads(out)["records"]
