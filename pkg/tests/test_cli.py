import json
from fractions import Fraction

import pytest

from bisymp import cli
from bisymp.cli import ParseError, PresentationFile, parse, render_text, run


def write(tmp_path, name, data):
    p = tmp_path / name
    p.write_text(json.dumps(data))
    return str(p)


QP_Q = {"family": "quantum-affine", "generators": ["x1", "x2"],
        "q": [["1", "2"], ["1/2", "1"]], "cutoff": 4, "dim": 1}
QP_M = {"family": "dimension-2-M", "generators": ["x1", "x2"],
        "M": [["0", "-2"], ["1", "0"]], "cutoff": 4, "dim": 1}


def test_parse_quantum_affine_expands_relations(tmp_path):
    pf = parse(write(tmp_path, "qp.json", QP_Q))
    assert pf.presentation.relations == [{(1, 0): Fraction(1),
                                          (0, 1): Fraction(-2)}]


def test_parse_rejects_inconsistent_q(tmp_path):
    bad = {"family": "quantum-affine", "generators": ["x1", "x2"],
           "q": [["1", "2"], ["3", "1"]]}
    with pytest.raises(ParseError) as e:
        parse(write(tmp_path, "bad.json", bad))
    assert "q[1][2] * q[2][1]" in str(e.value)


def test_parse_rejects_singular_M(tmp_path):
    bad = {"family": "dimension-2-M", "generators": ["x1", "x2"],
           "M": [["1", "1"], ["1", "1"]]}
    with pytest.raises(ParseError):
        parse(write(tmp_path, "bad.json", bad))


def test_parse_rejects_malformed_rational(tmp_path):
    bad = {"family": "quantum-affine", "generators": ["x1", "x2"],
           "q": [["1", "2/0"], ["1/2", "1"]]}
    with pytest.raises(ParseError) as e:
        parse(write(tmp_path, "bad.json", bad))
    assert "malformed rational" in str(e.value)


def test_cross_family_same_relation(tmp_path):
    pq = parse(write(tmp_path, "q.json", QP_Q))
    pm = parse(write(tmp_path, "m.json", QP_M))
    assert pq.presentation.relations == pm.presentation.relations


def test_cross_family_identical_verdicts(tmp_path):
    """The two encodings of the quantum plane give identical certificates,
    Nakayama maps and omega verdicts."""
    rq = run("verify-all", parse(write(tmp_path, "q.json", QP_Q)))
    rm = run("verify-all", parse(write(tmp_path, "m.json", QP_M)))
    for key in ("dual", "nakayama", "omega", "duality", "drep"):
        assert rq[key] == rm[key]
    assert rq["verified"] and rm["verified"]


def test_reports_byte_stable(tmp_path):
    path = write(tmp_path, "qp.json", QP_Q)
    a = json.dumps(run("verify-all", parse(path)), indent=2)
    b = json.dumps(run("verify-all", parse(path)), indent=2)
    assert a == b


def test_exit_codes_and_formats(tmp_path, capsys):
    path = write(tmp_path, "qp.json", QP_Q)
    assert cli.main(["nakayama", path]) == 0
    out = capsys.readouterr().out
    rep = json.loads(out)
    assert rep["schema_version"] == 1
    assert rep["nakayama"]["sigma_on_generators"]["x1"] == "1/2*x1"
    assert rep["nakayama"]["sigma_on_generators"]["x2"] == "2*x2"
    assert cli.main(["nakayama", path, "--format", "text"]) == 0
    out = capsys.readouterr().out
    assert "sigma_on_generators" in out
    assert cli.main(["nakayama", str(tmp_path / "missing.json")]) == 2
    capsys.readouterr()


def test_out_file_and_text_render(tmp_path):
    path = write(tmp_path, "qp.json", QP_Q)
    out = str(tmp_path / "report.json")
    assert cli.main(["dual", path, "--out", out]) == 0
    rep = json.loads(open(out).read())
    assert rep["dual"]["algebra_dims"] == [1, 2, 3, 4, 5]
    assert rep["dual"]["dual_dims"] == [1, 2, 1]
    text = render_text(rep)
    assert "algebra_dims" in text


def test_perturbed_omega_names_partial_closure(tmp_path, capsys):
    path = write(tmp_path, "qp.json", QP_Q)
    code = cli.main(["omega", path, "--debug-perturb-omega"])
    captured = capsys.readouterr()
    assert code == 1
    assert "partial_closure" in captured.err


def test_non_frobenius_input_fails_with_documented_error(tmp_path, capsys):
    bad = {"family": "quadratic", "generators": ["x1", "x2"],
           "relations": [[["1", 1, 2]]], "cutoff": 4}
    path = write(tmp_path, "nf.json", bad)
    code = cli.main(["dual", path])
    captured = capsys.readouterr()
    assert code == 1
    assert "not Frobenius / not AS-regular" in captured.err


def test_duality_shift_override(tmp_path, capsys):
    path = write(tmp_path, "qp.json", QP_Q)
    assert cli.main(["duality", path, "--cutoff", "4"]) == 0
    capsys.readouterr()
    assert cli.main(["duality", path, "--cutoff", "4", "--shift", "1"]) == 1
    capsys.readouterr()


def test_bad_flags_are_input_errors(tmp_path, capsys):
    path = write(tmp_path, "qp.json", QP_Q)
    assert cli.main(["dual", path, "--cutoff", "1"]) == 2
    assert cli.main(["drep", path, "--dim", "0"]) == 2
    capsys.readouterr()


def test_presentation_echo_roundtrip(tmp_path):
    pf = parse(write(tmp_path, "qp.json", QP_Q))
    echo = pf.echo()
    pf2 = PresentationFile({"family": "quadratic",
                            "generators": echo["generators"],
                            "relations": echo["relations"],
                            "cutoff": echo["cutoff"],
                            "dim": echo["dim"]})
    assert pf2.presentation.relations == pf.presentation.relations
