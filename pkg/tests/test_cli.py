import json

import pytest

from decalage.cli import main, run_scenario
from decalage.io import dumps

TIMES_TWO = {"degrees": [0, 1], "ranks": {"0": 1, "1": 1}, "differentials": {"0": [[2]]}}
OCTAHEDRON = "".join(f"{a} {b} {c}\n" for a in (0, 1) for b in (2, 3) for c in (4, 5))
RP2 = "1 2 3\n1 3 4\n1 4 5\n1 5 6\n1 6 2\n2 3 5\n3 4 6\n4 5 2\n5 6 3\n6 2 4\n"


def write(tmp_path, name, obj):
    p = tmp_path / name
    p.write_text(obj if isinstance(obj, str) else json.dumps(obj))
    return str(p)


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_unknown_subcommand(capsys):
    assert run(capsys, "frobnicate")[0] == 2


def test_validate(tmp_path, capsys):
    ok = write(tmp_path, "ok.json", TIMES_TWO)
    assert run(capsys, "validate", ok)[0] == 0
    broken = dict(TIMES_TWO, degrees=[0, 2], ranks={"0": 1, "1": 1, "2": 1}, differentials={"0": [[1]], "1": [[1]]})
    code, out, err = run(capsys, "validate", write(tmp_path, "bad.json", broken))
    assert code == 2 and "degree 0" in err
    assert run(capsys, "validate", write(tmp_path, "junk.json", "{not json"))[0] == 2


def test_cohomology_and_coefficients(tmp_path, capsys):
    code, out, _ = run(capsys, "cohomology", write(tmp_path, "x.json", TIMES_TWO))
    assert code == 0 and json.loads(out)["cohomology"]["1"] == {"freeRank": 0, "torsion": [2]}
    rp2 = write(tmp_path, "rp2.txt", RP2)
    doc = json.loads(run(capsys, "cohomology", rp2)[1])
    assert doc["cohomology"]["2"] == {"freeRank": 0, "torsion": [2]}
    doc = json.loads(run(capsys, "cohomology", rp2, "--coefficients", "rat")[1])
    assert doc["cohomology"]["2"] == {"freeRank": 0, "torsion": []}


def test_decale_trivial_filtration(tmp_path, capsys):
    f = write(tmp_path, "f.json", {"complex": TIMES_TWO, "F": {"steps": {"0": "all"}}})
    code, out, _ = run(capsys, "decale", f)
    assert code == 0
    assert json.loads(out)["filtration"]["steps"] == {"-1": "all"}


def test_ss_page_one_on_skeletal_sphere(tmp_path, capsys):
    x = write(tmp_path, "s2.txt", OCTAHEDRON)
    flag = write(tmp_path, "flag.json", {"-1": [f"{a} {b}" for a in range(6) for b in range(a + 1, 6) if {a, b} not in ({0, 1}, {2, 3}, {4, 5})] + [str(v) for v in range(6)], "-2": [str(v) for v in range(6)]})
    code, out, _ = run(capsys, "flag-f", x, "--flag", flag)
    assert code == 0
    filtered = write(tmp_path, "filtered.json", out)
    code, out, _ = run(capsys, "ss", filtered, "--page", "1", "--format", "tsv")
    lines = out.splitlines()
    assert lines[0] == "# E_1"
    assert lines[1].split("\t") == ["q\\p", "-2", "-1", "0"]
    row2 = next(l for l in lines if l.startswith("2\t"))
    assert row2.split("\t")[1:] == ["Z^6", "Z^12", "Z^8"]


def test_check_decale_pair_on_corpus(capsys):
    code, out, _ = run(capsys, "check", "lmlu", "--seed", "42", "--count", "25")
    assert code == 0 and json.loads(out)["pass"]


def test_check_sta_failure_exit_code(tmp_path, capsys):
    doc = {"complex": TIMES_TWO, "P": {"steps": {"0": "all", "1": {"1": "all"}}}, "F": {"steps": {"0": "all"}}}
    code, out, _ = run(capsys, "check", "sta", write(tmp_path, "b.json", doc))
    assert code == 1 and not json.loads(out)["pass"]
    code, out, _ = run(capsys, "check", "pdec", write(tmp_path, "b.json", doc))
    assert code == 1 and "refused" in json.loads(out)["report"]


def test_check_e1_triples(tmp_path, capsys):
    x = write(tmp_path, "c.txt", "0 1\n1 2\n0 2\n")
    flag = write(tmp_path, "flag.json", {"-1": ["0"]})
    assert run(capsys, "check", "e1-triples", x, "--flag", flag)[0] == 0
    not_closed = write(tmp_path, "bad.json", {"-1": ["0 1"]})
    assert run(capsys, "check", "e1-triples", x, "--flag", not_closed)[0] == 2


def test_diagonal_command(tmp_path, capsys):
    Z = {"degrees": [0, 0], "ranks": {"0": 1}}
    doc = {"complex": Z, "F": {"steps": {"0": "all", "1": {"0": [[2]]}}}, "G": {"steps": {"0": "all", "1": {"0": [[3]]}}}}
    code, out, _ = run(capsys, "diagonal", write(tmp_path, "d.json", doc))
    assert code == 0
    assert json.loads(out)["filtration"]["steps"]["2"] == {"0": [[6]]}


def test_leray_builtin(capsys):
    code, out, _ = run(capsys, "leray")
    assert code == 0
    shifted = json.loads(out)["shiftedGraded"]
    assert {p: g["freeRank"] for p, g in shifted["1"].items()} == {"-2": 1, "-1": 1}


def test_random_corpus_is_deterministic(capsys):
    a = run(capsys, "random-corpus", "--seed", "7", "--count", "5")[1]
    b = run(capsys, "random-corpus", "--seed", "7", "--count", "5")[1]
    c = run(capsys, "random-corpus", "--seed", "8", "--count", "5")[1]
    assert a == b and a != c and len(json.loads(a)["elements"]) == 5


def test_out_directory_and_env(tmp_path, capsys, monkeypatch):
    f = write(tmp_path, "x.json", TIMES_TWO)
    out = tmp_path / "reports"
    assert run(capsys, "cohomology", f, "--out", str(out))[0] == 0
    first = (out / "cohomology.json").read_text()
    monkeypatch.setenv("DECALAGE_OUT", str(tmp_path / "env"))
    assert run(capsys, "cohomology", f)[0] == 0
    assert (tmp_path / "env" / "cohomology.json").read_text() == first
    assert json.loads(first)["input"][0].startswith("sha256:")


def test_run_builtin_scenarios(capsys):
    code, out, _ = run(capsys, "run", "empty")
    assert code == 0 and json.loads(out)["checks"] == []
    code, out, _ = run(capsys, "run", "affine-curve", "leray", "--jobs", "2")
    assert code == 0
    reports = json.loads(out)["scenarios"]
    assert [r["name"] for r in reports] == ["affine-curve", "leray"]
    assert all(r["pass"] for r in reports)


def test_run_is_byte_identical():
    assert dumps(run_scenario("affine-curve")[1]) == dumps(run_scenario("affine-curve")[1])


def test_run_broken_scenarios(tmp_path, capsys):
    broken = {"name": "broken", "complex": {"degrees": [0, 2], "ranks": {"0": 1, "1": 1, "2": 1},
                                           "differentials": {"0": [[1]], "1": [[1]]}}, "checks": ["lmlu"]}
    code, out, err = run(capsys, "run", write(tmp_path, "s.json", broken))
    assert code == 2 and "degree 0" in err
    unknown = {"name": "u", "checks": ["no-such-check"]}
    assert run(capsys, "run", write(tmp_path, "u.json", unknown))[0] == 2
    assert run(capsys, "run", str(tmp_path / "missing.json"))[0] == 2


def test_run_reports_expectation_mismatch(tmp_path, capsys):
    doc = {"name": "wrong", "complex": TIMES_TWO, "F": {"steps": {"0": "all"}},
           "expected": {"cohomology": {"1": {"freeRank": 1, "torsion": []}}}}
    code, out, _ = run(capsys, "run", write(tmp_path, "w.json", doc))
    assert code == 1 and json.loads(out)["expected"]["mismatches"]
