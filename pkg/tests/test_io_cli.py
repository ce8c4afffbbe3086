import json
import subprocess
import sys

import pytest

from cohh import io as cio
from cohh.cli import main
from cohh.coalgebra import DIVIDED_POWER, cofree_tensor, cogenerators, named_coalgebra
from cohh.field import Field
from cohh.spectral import NOT_COMPUTED, catalog

from oracles import series_expand


def run(capsys, *argv):
    code = main(list(map(str, argv)))
    out = capsys.readouterr()
    return code, out.out, out.err


# file format ------------------------------------------------------------------------


def test_round_trip(tmp_path):
    for c in [named_coalgebra(DIVIDED_POWER, [("x", 2), ("z", 4)], Field(5), 8),
              cofree_tensor(cogenerators([("a", 1), ("b", 2)], 4), Field(0),
                            letter_differential={"a": {"b": -1}})]:
        path = tmp_path / "c.json"
        cio.save(c, path)
        back = cio.load(path).coalgebra
        assert cio.same_coefficients(c, back)
        assert cio.dumps(back) == path.read_text()


def test_fixture_matches_constructor(data_dir):
    text = (data_dir / "bu2.json").read_text()
    assert cio.dumps(catalog("BU(2)", Field(2), 8)) == text


def test_digest_is_of_bytes(data_dir):
    a = cio.load(data_dir / "gamma_x2_f2.json")
    b = cio.load(data_dir / "gamma_x2_f2.json")
    assert a.digest == b.digest and len(a.digest) == 64


def test_syntax_error_has_position():
    with pytest.raises(cio.ParseError) as e:
        cio.loads('{\n  "format": 1,\n  "field": F2\n}')
    assert e.value.line == 3 and e.value.col > 0


@pytest.mark.parametrize("mutate,path", [
    (lambda d: d.update(field="F4"), "field"),
    (lambda d: d.update(max_degree=-1), "max_degree"),
    (lambda d: d["comult"].append(["x", "1", "q", "1"]), "comult[15]"),
    (lambda d: d["comult"].__setitem__(1, ["x", "1", "x", 0.5]), "comult[1]"),
    (lambda d: d["comult"].__setitem__(1, ["x", "1", "x", "1/0"]), "comult[1]"),
    (lambda d: d.update(counit="q"), "counit"),
    (lambda d: d["basis"].__setitem__(1, ["x", 3]), "comult"),
    (lambda d: d["model"].__setitem__(0, ["x", 2, "Exterior"]), "model"),
])
def test_parse_errors_name_the_path(data_dir, mutate, path):
    doc = json.loads((data_dir / "gamma_x2_f2.json").read_text())
    mutate(doc)
    with pytest.raises(cio.ParseError) as e:
        cio.parse_coalgebra(doc)
    assert e.value.path == path


# cli ----------------------------------------------------------------------------------


def test_check_green(capsys, data_dir):
    code, out, _ = run(capsys, "check", data_dir / "gamma_x2_f2.json")
    assert code == 0 and "FAIL" not in out and "coassociative    PASS" in out


def test_check_malformed(capsys, data_dir):
    code, _, err = run(capsys, "check", data_dir / "malformed_div0.json")
    assert code == 2 and "comult[1]" in err and "zero denominator" in err


def test_check_noncoassociative(capsys, data_dir):
    code, out, _ = run(capsys, "check", data_dir / "noncoassociative_f3.json")
    assert code == 1
    line = next(l for l in out.splitlines() if l.startswith("coassociative"))
    assert line.split() == ["coassociative", "FAIL", "c"]


def test_missing_file(capsys):
    code, _, err = run(capsys, "check", "/nonexistent/c.json")
    assert code == 2 and "no such file" in err


def test_cohh_bigraded(capsys, data_dir):
    code, out, _ = run(capsys, "cohh", data_dir / "gamma_x2_f3.json", "--max-degree", 8,
                       "--bigraded", "--emit", "json")
    assert code == 0
    doc = json.loads(out)
    got = {(s, t): d for s, t, d in doc["rows"]}
    assert got == series_expand([(0, 2, False), (1, 2, True)], 8)
    assert doc["provenance"]["validity"].startswith("valid for internal degree <= 8")


def test_cohh_trivial(capsys, data_dir):
    code, out, _ = run(capsys, "cohh", data_dir / "trivial.json", "--emit", "csv")
    assert code == 0
    body = [l for l in out.splitlines() if not l.startswith("#")]
    assert body == ["s,t,dim", "0,0,1"]


def test_cohh_total(capsys, data_dir):
    code, out, _ = run(capsys, "cohh", data_dir / "lambda_y3_f3.json", "--total",
                       "--emit", "json")
    doc = json.loads(out)
    rows = {n: (d, ok) for n, d, ok in doc["rows"]}
    # Lambda(y) (x) k[w]: y in total degree 3, w in total degree 2
    series = [0] * 13
    for a in range(7):
        for e in range(2):
            if 2 * a + 3 * e <= 12:
                series[2 * a + 3 * e] += 1
    assert all(rows[n][0] == series[n] for n in range(13) if rows[n][1] == "yes")
    assert rows[8] == (1, "yes")


def test_cohh_reps(capsys, data_dir):
    code, out, _ = run(capsys, "cohh", data_dir / "gamma_x2_f3.json", "--max-degree", 6, "--reps")
    assert code == 0 and "2·1⊗x^[2] + x⊗x" in out


def test_cohh_rejects_bad_input(capsys, data_dir):
    code, _, err = run(capsys, "cohh", data_dir / "noncoassociative_f3.json")
    assert code == 1 and "coassociative" in err
    code, _, err = run(capsys, "cohh", data_dir / "trivial.json", "--max-degree", 40)
    assert code == 2


def test_output_is_byte_stable(capsys, data_dir, tmp_path):
    argv = ["cohh", data_dir / "gamma_x2_f2.json", "--reps"]
    _, first, _ = run(capsys, *argv)
    _, second, _ = run(capsys, *argv)
    assert first == second
    dest = tmp_path / "t.txt"
    run(capsys, *argv, "-o", dest)
    assert dest.read_text() == first


def test_figure(capsys, data_dir, tmp_path):
    png = tmp_path / "e2.png"
    code, out, _ = run(capsys, "suite", "e2", "--input", data_dir / "gamma_x2_f3.json",
                       "--max-degree", 8, "--coproduct", "--figure", png)
    assert code == 0 and png.read_bytes()[:8] == b"\x89PNG\r\n\x1a\n"
    assert "coproduct coassociative: yes" in out and "coproduct counital: yes" in out
    svg = tmp_path / "c.svg"
    run(capsys, "cohh", data_dir / "lambda_y3_f3.json", "--figure", svg)
    first = svg.read_bytes()
    run(capsys, "cohh", data_dir / "lambda_y3_f3.json", "--figure", svg)
    assert svg.read_bytes() == first


def test_suite_hkr(capsys, monkeypatch):
    code, out, _ = run(capsys, "suite", "hkr", "--gens", "x:2", "--field", "F3",
                       "--max-degree", 10)
    assert code == 0 and "MATCH" in out.splitlines()[0]
    monkeypatch.setenv("COHH_FIELD", "F5")
    monkeypatch.setenv("COHH_MAX_DEGREE", "6")
    code, out, _ = run(capsys, "suite", "hkr", "--gens", "x:2,y:3")
    assert code == 0 and "<= 6" in out


def test_suite_collapse(capsys, data_dir):
    code, out, _ = run(capsys, "suite", "collapse", "--input", data_dir / "bu2.json")
    assert code == 0 and out.startswith("# Collapses at E2 (collapse hypothesis satisfied")
    code, out, _ = run(capsys, "suite", "collapse", "--input", data_dir / "lambda_y3_f3.json")
    assert code == 0 and out.startswith("# Inapplicable")


def test_suite_matching(capsys, data_dir):
    code, out, _ = run(capsys, "suite", "matching", "--input", data_dir / "gamma_x2_f2.json",
                       "--n", 3)
    assert code == 0 and "surjective with witnesses" in out.splitlines()[0]


def test_suite_catalog(capsys):
    code, out, _ = run(capsys, "suite", "catalog", "--name", "BU(2)", "--max-total", 6,
                       "--emit", "csv")
    body = [l for l in out.splitlines() if not l.startswith("#")]
    assert code == 0 and body[1:] == ["0,1", "1,1", "2,1", "3,2", "4,3", "5,3", "6,3"]


def test_suite_cycles_and_doi(capsys):
    code, out, _ = run(capsys, "suite", "cycles", "--degree", 3, "--field", "F3")
    assert code == 0 and "y⊗y⊗y" in out
    code, out, _ = run(capsys, "suite", "doi", "--field", "F3")
    assert code == 0 and "exact" in out.splitlines()[0]


@pytest.mark.parametrize("argv", [["suite", "differential"], ["suite", "differential", "--r", "3"],
                                  ["suite", "convergence"]])
def test_not_computed(capsys, argv):
    code, out, err = run(capsys, *argv)
    assert code == 2 and NOT_COMPUTED in err and out == ""


def test_usage_errors(capsys):
    assert run(capsys, "suite", "hkr", "--gens", "x2", "--field", "F3")[0] == 2
    assert run(capsys, "suite", "hkr", "--gens", "x:2", "--field", "F4")[0] == 2
    assert run(capsys, "make", "--field", "F3")[0] == 2
    assert run(capsys, "nonsense")[0] == 2


def test_make(capsys, data_dir):
    code, out, _ = run(capsys, "make", "--kind", "DividedPower", "--gens", "x:2",
                       "--field", "F2", "--max-degree", 8)
    assert code == 0 and out == (data_dir / "gamma_x2_f2.json").read_text()
    assert run(capsys, "make", "--kind", "Exterior", "--gens", "y:2", "--field", "F3")[0] == 2


def test_module_entry_point(data_dir):
    proc = subprocess.run([sys.executable, "-m", "cohh", "check", str(data_dir / "trivial.json")],
                          capture_output=True, text=True)
    assert proc.returncode == 0 and "counital         PASS" in proc.stdout
