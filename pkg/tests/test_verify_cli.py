import json

import pytest
from hypothesis import given, settings, strategies as st

from rotorlab import verify_cli
from rotorlab.exact_arith import Q
from rotorlab.verify_cli import (
    CHECKS,
    VerificationConfig,
    cbc_mnc_state,
    main,
    pbc_mnc_state,
    run_verification,
    sample_points,
)


def test_sampling_is_deterministic():
    a = sample_points(3, 4, 5)
    b = sample_points(3, 4, 5)
    assert a == b
    assert a != sample_points(4, 4, 5)


@settings(max_examples=30)
@given(st.integers(min_value=0, max_value=10 ** 6), st.integers(min_value=1, max_value=6))
def test_samples_are_generic(seed, n):
    (p,) = sample_points(seed, n, 1, closed=True)
    sq = [z * z for z in p.z]
    for i, a in enumerate(sq):
        assert a and a != 1
        assert abs(a.a.numerator) <= 100 and a.a.denominator <= 49
        for b in sq[i + 1:]:
            assert a != b and a * b != 1
    assert all(z * z != p.t * p.t for z in p.z)


def test_constraint_hook():
    (p,) = sample_points(7, 4, 1, constraints={1: (0, -Q * Q)})
    assert p.z[1] == -Q * Q * p.z[0]


def test_unsatisfiable_constraints():
    with pytest.raises(ValueError):
        sample_points(0, 3, 1, constraints={1: (0, 1), 2: (0, 1)}, max_tries=20)


def test_nested_states():
    assert str(pbc_mnc_state(0, 2)) == "(())/(())"
    assert str(pbc_mnc_state(1, 1)) == "(())/()()"
    assert str(cbc_mnc_state("odd_s", 1)) == "()|/|()"
    with pytest.raises(ValueError):
        cbc_mnc_state("bogus", 1)


@pytest.mark.parametrize("kwargs", [
    {"bc": "nope"},
    {"bc": "pbc-even", "sizes": (3,)},
    {"bc": "pbc-even", "sizes": (10,)},
    {"bc": "cbc", "sizes": (7,)},
    {"samples": 0},
    {"checks": ("algebra", "bogus")},
])
def test_config_validation(kwargs):
    with pytest.raises(ValueError):
        VerificationConfig(**kwargs)


def test_report_schema_and_ordering(tmp_path):
    out = tmp_path / "r.json"
    cfg = VerificationConfig("cbc", (2, 3), 1, 9, ("algebra", "sums", "mnc"), str(out))
    report = run_verification(cfg)
    assert report.passed
    doc = json.loads(out.read_text())
    assert doc["schema"] == 1
    assert [r["check"] for r in doc["results"]] == ["algebra", "algebra", "sums", "sums",
                                                    "mnc", "mnc", "mnc", "mnc"]
    assert all("seconds" not in r for r in doc["results"])
    assert out.read_text() == report.dumps()


def test_parallel_run_is_byte_identical(tmp_path, monkeypatch):
    args = ["verify", "--bc", "pbc-even", "--sizes", "4", "--samples", "2", "--seed", "3",
            "--checks", "exchange,mnc"]
    monkeypatch.setenv("ROTORLAB_THREADS", "1")
    assert main(args + ["--out", str(tmp_path / "a.json")]) == 0
    monkeypatch.setenv("ROTORLAB_THREADS", "3")
    assert main(args + ["--out", str(tmp_path / "b.json")]) == 0
    assert (tmp_path / "a.json").read_bytes() == (tmp_path / "b.json").read_bytes()


def test_failing_check_sets_exit_code(monkeypatch, capsys):
    monkeypatch.setitem(verify_cli._CHECK_FUNCS, "sums",
                        (lambda bc, n, p: (False, {"why": "forced"}), False))
    assert main(["verify", "--bc", "cbc", "--sizes", "2", "--checks", "sums"]) == 1
    assert "FAIL" in capsys.readouterr().out


def test_errors_become_failures(monkeypatch):
    def boom(bc, n, p):
        raise ArithmeticError("kaboom")
    monkeypatch.setitem(verify_cli._CHECK_FUNCS, "sums", (boom, False))
    report = run_verification(VerificationConfig("cbc", (2,), 1, 0, ("sums",)))
    assert not report.passed
    assert "kaboom" in report.results[0]["values"]["error"]


def test_bad_arguments_exit_2(capsys):
    assert main(["verify", "--bc", "pbc-even", "--sizes", "5"]) == 2
    assert "error" in capsys.readouterr().err


def test_timings_flag(tmp_path):
    assert main(["verify", "--bc", "cbc", "--sizes", "2", "--checks", "sums", "--timings",
                 "--out", str(tmp_path / "t.json")]) == 0
    doc = json.loads((tmp_path / "t.json").read_text())
    assert "seconds" in doc["results"][0]


def test_tables_csv(capsys):
    assert main(["tables", "--max", "4", "--csv"]) == 0
    lines = capsys.readouterr().out.splitlines()
    assert lines[0] == "name,1,2,3,4"
    assert "asm1,1,2,7,42" in lines


def test_tables_json(capsys):
    assert main(["tables", "--max", "3", "--json"]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["tables"]["asm3"] == ["1", "2", "9"]


def test_groundstate_verb(capsys):
    assert main(["groundstate", "--bc", "pbc-even", "--size", "4"]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["normalization"] == "gcd-one" and doc["sum"] == "6"


def test_groundstate_verb_at_point(capsys):
    assert main(["groundstate", "--bc", "cbc", "--size", "2", "--z", "2,3", "--t", "5"]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["normalization"] == "sum"


def test_transfer_verb(capsys):
    assert main(["transfer", "--size", "2", "--z", "2,3", "--t", "1/2"]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["entries"] and doc["eigenvalue"]


def test_all_checks_listed():
    assert set(CHECKS) == set(verify_cli._CHECK_FUNCS)


def test_inapplicable_checks_are_skipped():
    report = run_verification(VerificationConfig("cbc", (1, 3), 1, 0, ("recursion", "algebra")))
    statuses = [(r["check"], r["size"], r["status"]) for r in report.results]
    assert statuses == [("recursion", 1, "skip"), ("recursion", 3, "skip"),
                        ("algebra", 1, "skip"), ("algebra", 3, "pass")]
    assert report.passed
