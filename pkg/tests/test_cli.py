import json

import jsonschema
import pytest

from powerrel import schemas
from powerrel.cli import run
from powerrel.polyring import Poly, parse
from powerrel.relations import EntrySet, Relation, find_relation, proportional
from powerrel.render import parse_json, render, render_latex, render_text
from powerrel.symmatrix import generic_matrix

a = Poly.var


def call(capsys, *argv):
    code = run(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_relation_latex_3x3(capsys):
    code, out, _ = call(capsys, "relation", "--n", "3", "--entries", "1,2", "1,3", "2,1", "--format", "latex")
    assert code == 0
    assert "(A^m)_{1,2}" in out and "(A^m)_{1,3}" in out and "(A^m)_{2,1}" in out
    assert "a_{2,3}" in out and "\\cdot" in out


def test_relation_json_is_valid_and_roundtrips(capsys):
    code, out, _ = call(capsys, "relation", "--n", "2", "--entries", "1,2", "2,1", "--format", "json")
    assert code == 0
    doc = json.loads(out)
    jsonschema.validate(doc, schemas.RELATION)
    rel = parse_json(out)
    assert proportional(rel.coeffs, (a(2, 1), -a(1, 2)))
    assert doc["verified_up_to"] == 8


def test_relation_text_2x2(capsys):
    code, out, _ = call(capsys, "relation", "--n", "2", "--entries", "1,2", "2,1")
    assert code == 0
    assert out.strip() == "a[2,1]*(A^m)[1,2] - a[1,2]*(A^m)[2,1] = 0"


def test_classify_27_under_perm(capsys):
    code, out, _ = call(capsys, "classify", "--n", "4", "--size", "4", "--off-diagonal", "--group", "perm")
    assert code == 0
    docs = json.loads(out)
    assert len(docs) == 27
    for d in docs:
        jsonschema.validate(d, schemas.ORBIT_CLASS)
    assert sum(d["orbit_size"] for d in docs) == 495  # C(12, 4)


def test_classify_with_transpose_merges_more(capsys):
    code, out, _ = call(
        capsys, "classify", "--n", "4", "--size", "4", "--off-diagonal", "--group", "perm+transpose"
    )
    assert code == 0 and len(json.loads(out)) == 18


def test_classify_text(capsys):
    code, out, _ = call(capsys, "classify", "--n", "3", "--size", "3", "--off-diagonal", "--format", "text")
    assert code == 0
    assert out.strip().splitlines()[-1] == "4 classes under perm"


def test_bijection_apply(capsys):
    assert call(capsys, "bijection-apply", "--op", "T", "--i", "1", "--word", "121")[:2] == (0, "212\n")
    assert call(capsys, "bijection-apply", "--op", "U", "--i", "1", "--word", "212")[:2] == (0, "121\n")
    code, _, err = call(capsys, "bijection-apply", "--op", "T", "--i", "1", "--word", "212")
    assert code == 2 and "error" in err


def test_bijection_check_json(capsys):
    code, out, _ = call(capsys, "bijection-check", "--n", "4", "--m", "5", "--i", "2")
    assert code == 0
    doc = json.loads(out)
    jsonschema.validate(doc, schemas.BIJECTION_REPORT)
    assert doc["pass"] is True and doc["domain_size"] == doc["codomain_size"]


def test_words(capsys):
    code, out, _ = call(capsys, "words", "--n", "3", "--m", "2", "--i", "1", "--j", "1")
    assert code == 0 and out.split() == ["111", "121"]
    assert call(capsys, "words", "--n", "5", "--m", "4", "--i", "1", "--j", "1", "--count")[1] == "9\n"


def test_charpoly_and_checks(capsys):
    code, out, _ = call(capsys, "charpoly", "--n", "2", "--format", "json")
    assert code == 0
    p = [parse(x) for x in json.loads(out)["p"]]
    assert p == [a(1, 1) * a(2, 2) - a(1, 2) * a(2, 1), -a(1, 1) - a(2, 2), Poly.const(1)]
    code, out, _ = call(capsys, "ch-check", "--n", "2", "--format", "json")
    assert code == 0 and all(json.loads(out).values())
    assert call(capsys, "tridiag-eq2", "--n", "4", "--max-m", "5")[:2] == (0, "pass\n")


def test_report_n3_json(capsys):
    code, out, _ = call(capsys, "report", "--n", "3", "--off-diagonal", "--max-m", "6", "--format", "json")
    assert code == 0
    docs = json.loads(out)
    assert len(docs) == 4
    for d in docs:
        jsonschema.validate(d, schemas.REPORT_ENTRY)
        assert d["relation"]["verified_up_to"] == 6 and d["error"] is None


def test_spec_file(tmp_path, capsys):
    f = tmp_path / "m.json"
    f.write_text(json.dumps({"matrix": [["1", "2", "0"], ["3", "1/2", "4"], ["0", "-1", "5"]]}))
    code, out, _ = call(capsys, "relation", "--spec", str(f), "--entries", "1,2", "1,3", "2,1", "--format", "json")
    assert code == 0
    rel = parse_json(out)
    assert all(q.is_constant() for q in rel.coeffs) and any(rel.coeffs)
    code, _, _ = call(capsys, "ch-check", "--spec", str(f))
    assert code == 0
    g = tmp_path / "bare.json"
    g.write_text("[[1, 2], [3, 4]]")
    assert call(capsys, "charpoly", "--spec", str(g))[1] == "p_0 = -2\np_1 = -5\np_2 = 1\n"


def test_spec_file_errors(tmp_path, capsys):
    assert call(capsys, "charpoly", "--spec", str(tmp_path / "missing.json"))[0] == 2
    bad = tmp_path / "bad.json"
    bad.write_text('{"matrix": [[1, 2], [3]]}')
    assert call(capsys, "charpoly", "--spec", str(bad))[0] == 2
    ok = tmp_path / "ok.json"
    ok.write_text("[[1, 2], [3, 4]]")
    assert call(capsys, "charpoly", "--spec", str(ok), "--n", "3")[0] == 2


def test_exit_codes(capsys):
    assert call(capsys, "relation", "--n", "3", "--bogus")[0] == 2
    assert call(capsys, "no-such-verb")[0] == 2
    assert call(capsys, "relation", "--entries", "1,2", "2,1")[0] == 2  # neither --n nor --spec
    code, _, err = call(capsys, "relation", "--n", "5", "--entries", "1,2", "1,3", "1,4", "1,5", "2,1")
    assert code == 2 and "cap of 4" in err
    # size 2 in a 3x3 matrix has no guarantee; refused without --best-effort
    assert call(capsys, "relation", "--n", "3", "--entries", "1,2", "2,1")[0] == 2
    code, _, err = call(capsys, "relation", "--n", "3", "--entries", "1,2", "2,1", "--best-effort")
    assert code == 1 and "no relation" in err
    assert call(capsys, "relation", "--n", "2", "--entries", "1,2", "3,1")[0] == 2
    assert call(capsys, "words", "--n", "3", "--m", "2", "--i", "1", "--j", "4")[0] == 2


def test_output_is_deterministic(capsys):
    argv = ["relation", "--n", "3", "--entries", "1,2", "1,3", "2,1", "--format", "json"]
    first = call(capsys, *argv)
    second = call(capsys, *argv)
    assert first == second
    argv = ["classify", "--n", "4", "--size", "4", "--off-diagonal"]
    assert call(capsys, *argv) == call(capsys, *argv)


def test_render_formats():
    rel = find_relation(generic_matrix(3), EntrySet(3, ((1, 2), (1, 3), (2, 1))))
    text = render_text(rel)
    assert text.endswith(" = 0") and text.count("(A^m)[") == 3
    assert render(rel, "latex") == render_latex(rel)
    back = parse_json(render(rel, "json"))
    assert back == rel
    with pytest.raises(ValueError):
        render(rel, "html")


def test_render_constant_coefficients():
    rel = Relation(EntrySet(2, ((1, 2), (2, 1))), (Poly.const(3), Poly.const(-1)))
    assert render_text(rel) == "3*(A^m)[1,2] - (A^m)[2,1] = 0"
