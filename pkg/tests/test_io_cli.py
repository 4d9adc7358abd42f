import json
from fractions import Fraction
from pathlib import Path

import pytest

from gluemin import auto_equiv, auto_eval, glue, io, wfa_eval
from gluemin.cli import main
from gluemin.corpus import CORPUS_DIR, automata, render, tables
from gluemin.errors import MalformedInput

import generators as gen

CORPUS = Path(CORPUS_DIR)


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out = capsys.readouterr()
    return code, out.out, out.err


# --- serialization ----------------------------------------------------------------

def test_rationals():
    assert io.rat(Fraction(3, 1)) == "3" and io.rat(Fraction(-2, 4)) == "-1/2"
    assert io.parse_rat("6/4") == Fraction(3, 2) and io.parse_rat(5) == 5
    with pytest.raises(MalformedInput):
        io.parse_rat(0.5)
    with pytest.raises(MalformedInput):
        io.parse_rat("1/0")


def test_golden_files_are_current():
    """The checked-in corpus is byte-identical to a fresh rendering."""
    for name, text in render().items():
        assert (CORPUS / name).read_text() == text, name


def test_round_trip_corpus():
    for name, obj in automata().items():
        text = (CORPUS / f"{name}.json").read_text()
        back = io.loads(text)
        assert io.dumps(back) == text
        assert back == obj


def test_round_trip_random():
    rng = gen.rng_for(41)
    for _ in range(30):
        m, _ = gen.morphism(rng)
        assert io.loads(io.dumps(m)) == m
        g = gen.glued_space(rng)
        assert io.loads(io.dumps(g)) == g
        a = gen.hybrid_automaton(rng, exact_reach=False)
        assert io.loads(io.dumps(a)) == a
        w = gen.wfa(rng)
        assert io.loads(io.dumps(w)) == w


def test_tables_match_corpus_automata():
    autos = automata()
    for name, (_, entries) in tables().items():
        a = autos[name]
        ev = wfa_eval if hasattr(a, "dim") else auto_eval
        assert len(entries) >= 12
        for word, value in entries:
            assert ev(a, word) == value, (name, word)


def test_parse_errors_have_position():
    with pytest.raises(MalformedInput, match="line 2"):
        io.loads('{"type": "wfa",\n "dim": }')
    with pytest.raises(MalformedInput, match="unknown document type"):
        io.loads('{"type": "nope"}')
    with pytest.raises(MalformedInput, match="missing field"):
        io.loads('{"type": "wfa", "alphabet": ["a"]}')


# --- commands -------------------------------------------------------------------------

def test_cmd_eval(capsys):
    code, out, _ = run(capsys, "eval", CORPUS / "a_vec.json", "--word", "abba")
    assert code == 0 and out.strip() == "4"
    code, out, _ = run(capsys, "eval", CORPUS / "dfa4.json", "--word", "aaab")
    assert code == 0 and out.strip() == "1"


def test_cmd_eval_tables(capsys):
    for name in tables():
        code, out, _ = run(capsys, "eval", CORPUS / f"{name}.json", "--table", CORPUS / f"{name}.table.json")
        assert code == 0, out


def test_cmd_eval_table_mismatch(capsys, tmp_path):
    t = tmp_path / "t.json"
    t.write_text(io.dumps(io.table_json([(("a",), Fraction(3))], ("a", "b", "c"))))
    code, out, _ = run(capsys, "eval", CORPUS / "a_vec.json", "--table", t)
    assert code == 1 and "mismatch" in out


def test_cmd_minimize(capsys, tmp_path):
    out_file = tmp_path / "min.json"
    code, out, _ = run(capsys, "minimize", CORPUS / "a_duvs.json", "--out", out_file)
    rep = json.loads(out)
    assert code == 0
    assert rep["components"] == 2 and rep["dims"] == [1, 1] and rep["gluings"] == 1 and rep["exact"] is True
    a = io.load(out_file)
    assert auto_equiv(a, io.load(CORPUS / "a_duvs.json"))


def test_cmd_minimize_flags_widening(capsys):
    code, out, _ = run(capsys, "minimize", CORPUS / "rotation.json", "--budget", "8")
    rep = json.loads(out)
    assert code == 0 and rep["exact"] is False and rep["minimality_certified"] is False and "note" in rep
    assert rep["dims"] == [2]


def test_budget_env(capsys, monkeypatch):
    monkeypatch.setenv("GLUEMIN_BUDGET", "1")
    _, out, _ = run(capsys, "minimize", CORPUS / "a_vec.json")
    assert json.loads(out)["exact"] is False
    # the flag wins over the variable
    _, out, _ = run(capsys, "minimize", CORPUS / "a_vec.json", "--budget", "8")
    assert json.loads(out)["exact"] is True
    monkeypatch.setenv("GLUEMIN_BUDGET", "lots")
    code, _, err = run(capsys, "minimize", CORPUS / "a_vec.json")
    assert code == 2 and "GLUEMIN_BUDGET" in err


def test_cmd_equiv(capsys):
    code, out, _ = run(capsys, "equiv", CORPUS / "a_vec.json", CORPUS / "a_duvs.json")
    assert code == 0 and out.strip() == "true"
    code, out, _ = run(capsys, "equiv", CORPUS / "a_vec.json", CORPUS / "rotation.json")
    assert code == 1


def test_cmd_reach_obs_linearize(capsys, tmp_path):
    code, out, _ = run(capsys, "reach", CORPUS / "a_vec.json")
    assert code == 0 and io.loads(out).states.components == (1, 1)
    code, out, _ = run(capsys, "obs", CORPUS / "a_duvs.json")
    assert code == 0 and io.loads(out).states.gluing_count() == 1
    code, out, _ = run(capsys, "linearize", CORPUS / "a_duvs.json")
    assert code == 0 and io.loads(out).dim == 2
    code, out, err = run(capsys, "reach", CORPUS / "rotation.json")
    assert code == 0 and "exact=false" in err


def test_cmd_imports(capsys):
    code, out, _ = run(capsys, "import-duvs", CORPUS / "a_duvs.duvs.json")
    assert code == 0 and out == (CORPUS / "a_duvs.json").read_text()
    code, out, _ = run(capsys, "import-dfa", CORPUS / "dfa4.dfa.json")
    assert code == 0 and out == (CORPUS / "dfa4.json").read_text()
    code, _, err = run(capsys, "import-dfa", CORPUS / "a_duvs.duvs.json")
    assert code == 2


def test_cmd_stats(capsys):
    code, out, _ = run(capsys, "stats", CORPUS / "dfa4.json")
    assert json.loads(out) == {"components": 4, "dims": [0, 0, 0, 0], "total_dim": 0, "gluings": 0}


def test_cmd_validate(capsys, tmp_path):
    code, out, _ = run(capsys, "validate", CORPUS / "a_duvs.json")
    assert code == 0 and json.loads(out)["valid"]
    folded = {"type": "glued_space", "components": [1, 1], "gluings": [
        {"i": 0, "j": 1, "domain": [["1"]], "phi": [["1"]]},
        {"i": 0, "j": 1, "domain": [["1"]], "phi": [["2"]]},
    ]}
    f = tmp_path / "fold.json"
    f.write_text(json.dumps(folded))
    code, out, _ = run(capsys, "validate", f)
    assert code == 1 and "SelfFolding" in json.loads(out)["error"]


def test_validate_unnormalized_automaton(capsys, tmp_path):
    doc = json.loads((CORPUS / "a_duvs.json").read_text())
    doc["states"]["gluings"] = [{"i": 0, "j": 1, "domain": [["1"]], "phi": [["2"]]}]
    f = tmp_path / "a.json"
    f.write_text(json.dumps(doc))
    code, out, _ = run(capsys, "validate", f)
    assert code == 1 and "not normalized" in json.loads(out)["error"]


def test_malformed_inputs(capsys, tmp_path):
    f = tmp_path / "bad.json"
    f.write_text('{"type": "wfa", "alphabet": ["a"], "dim": 1,\n "initial": [0.5]}')
    code, _, err = run(capsys, "eval", f)
    assert code == 2
    f.write_text("{ not json")
    code, _, err = run(capsys, "stats", f)
    assert code == 2 and "line 1" in err
    code, _, _ = run(capsys, "stats", tmp_path / "missing.json")
    assert code == 2
    code, _, _ = run(capsys, "frobnicate", f)
    assert code == 2


def test_unknown_symbol_is_semantic(capsys):
    code, _, err = run(capsys, "eval", CORPUS / "a_vec.json", "--word", "abz")
    assert code == 1 and "UnknownSymbol" in err


def test_space_document(capsys, tmp_path):
    f = tmp_path / "g.json"
    io.save(glue([1, 1], [(0, 1, [], [[0]])]), f)
    code, out, _ = run(capsys, "stats", f)
    assert json.loads(out)["gluings"] == 1
