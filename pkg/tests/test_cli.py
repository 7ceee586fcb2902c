import io
import json

import jsonschema
import pytest


from conlab.cli import (
    REPORT_SCHEMA,
    InputError,
    emit_report,
    emit_structure,
    main,
    parse_structure,
    structure_document,
)
from conlab.generators import GeneratorSpec, gen_named

import corpus


def run(argv, stdin_text=None, monkeypatch=None, capsys=None):
    if stdin_text is not None:
        monkeypatch.setattr("sys.stdin", io.StringIO(stdin_text))
    code = main(argv)
    out, err = capsys.readouterr()
    return code, out, err


def doc_text(family, **kw):
    return emit_structure(*gen_named(GeneratorSpec(family, **kw)))


def test_one_element_document():
    W, K, kappa = parse_structure(json.dumps({
        "carrier": ["a"],
        "operator": [{"input": [], "output": []}, {"input": ["a"], "output": ["a"]}],
    }))
    assert W.table == (0, 1) and K is None and kappa is None


@pytest.mark.parametrize("doc, message", [
    ({"carrier": ["a"], "operator": [{"input": ["a"], "output": ["a"]}]}, "incomplete table"),
    ({"carrier": ["a"], "operator": [{"input": [], "output": []}, {"input": [], "output": []}]},
     "operator[1]: duplicate entry"),
    ({"carrier": ["a"], "operator": [{"input": ["z"], "output": []}]}, "operator[0].input: unknown label"),
    ({"carrier": [str(k) for k in range(17)], "operator": []}, "exceed the cap"),
    ({"carrier": ["a", "a"], "operator": []}, "carrier"),
    ({"carrier": ["a"], "operator": [{"input": [], "output": [], "x": 1}]}, "operator[0]"),
    ([], "expected an object"),
])
def test_parse_errors_carry_context(doc, message):
    with pytest.raises(InputError, match=message.replace("[", r"\[").replace("]", r"\]")):
        parse_structure(json.dumps(doc))


def test_json_syntax_error_has_position():
    with pytest.raises(InputError, match="line 2, column"):
        parse_structure('{"carrier": ["a"],\n ]')


def test_round_trip_corpus():
    docs = corpus.documents()
    assert len(docs) == 20
    for doc in docs:
        text = emit_report(doc)
        W, K, kappa = parse_structure(text)
        assert emit_structure(W, K, kappa) == text
        assert structure_document(W, K, kappa) == doc


def test_k_and_kappa_survive_round_trip():
    W, K, kappa = parse_structure(doc_text("partition-s", size=4, lam=2))
    assert kappa == 2 and K and all(bin(g).count("1") >= 2 for g in K)


def test_classify_r_example(monkeypatch, capsys):
    code, out, _ = run(["classify"], doc_text("r-example"), monkeypatch, capsys)
    rep = json.loads(out)
    assert code == 0
    assert rep["classification"]["q_type"] is False
    assert rep["classification"]["p_type"] is False
    assert rep["r_type"]["2"] is True


def test_minimality_constant_empty(monkeypatch, capsys):
    code, out, _ = run(["minimality", "--max-values", "4"], doc_text("constant-empty"), monkeypatch, capsys)
    assert code == 0
    assert json.loads(out)["minimality"]["min_values"] == 3


def test_construct_p3_on_constant_empty(monkeypatch, capsys):
    code, out, err = run(["construct", "--target", "p3"], doc_text("constant-empty"), monkeypatch, capsys)
    assert code == 2 and out == ""
    assert "not p-type" in err


def test_parse_error_exit_code(monkeypatch, capsys):
    code, out, err = run(["classify"], '{"carrier": ["a"], "operator": []}', monkeypatch, capsys)
    assert code == 1 and "incomplete table" in err


def test_missing_input_file(capsys, tmp_path):
    code = main(["classify", "--input", str(tmp_path / "none.json")])
    assert code == 1


def test_s3_needs_k(monkeypatch, capsys):
    code, _, err = run(["construct", "--target", "s3"], doc_text("identity"), monkeypatch, capsys)
    assert code == 1 and "K and kappa" in err


@pytest.mark.parametrize("target, family, kw", [
    ("canonical", "random", {"size": 3, "seed": 9}),
    ("tarski2", "random-tarski", {"size": 3}),
    ("mon4", "random-monotone", {"size": 3}),
    ("q3", "constant-empty", {}),
    ("p3", "identity", {}),
    ("s3", "swap", {}),
    ("smon", "random-monotone", {"size": 3}),
    ("sq", "random-q", {"size": 3}),
    ("sp", "random-p", {"size": 3}),
    ("ss", "pair-swap-fixed", {}),
    ("cm", "cm-witness", {}),
    ("wct", "wct-witness", {}),
])
def test_construct_targets_validate(target, family, kw, monkeypatch, capsys, tmp_path):
    text = doc_text(family, **kw)
    code, out, _ = run(["construct", "--target", target], text, monkeypatch, capsys)
    assert code == 0
    rep = json.loads(out)
    jsonschema.validate(rep, REPORT_SCHEMA)
    verdict = rep["adequacy"]
    assert verdict["adequate"] == (not verdict["discrepancies"])
    if verdict["adequate"]:
        assert rep["findings"] == []
    if "semantics" in rep:
        structure = tmp_path / "w.json"
        structure.write_text(text)
        sem = tmp_path / "sem.json"
        sem.write_text(json.dumps(rep["semantics"]))
        kind = ["--entailment", "type2"] if target in ("cm", "wct") else []
        code = main(["verify", "--input", str(structure), "--semantics", str(sem)] + kind)
        again = json.loads(capsys.readouterr().out)
        assert code == 0
        assert again["adequacy"]["adequate"] == verdict["adequate"]


def test_s3_gap_reported(monkeypatch, capsys):
    _, out, _ = run(["construct", "--target", "s3"], doc_text("pair-swap-fixed"), monkeypatch, capsys)
    rep = json.loads(out)
    assert not rep["adequacy"]["adequate"]
    assert rep["adequacy"]["restricted"] is True
    assert rep["findings"]


def test_lenient_cm(monkeypatch, capsys):
    text = doc_text("wct-witness")
    code, _, err = run(["construct", "--target", "cm"], text, monkeypatch, capsys)
    if code == 2:
        assert "not cm-type" in err
    code, out, _ = run(["construct", "--target", "cm", "--lenient"], text, monkeypatch, capsys)
    assert code == 0 and json.loads(out)["adequacy"]["adequate"]


def test_charq_and_generate(monkeypatch, capsys):
    code, out, _ = run(["charq"], doc_text("random-q", size=3), monkeypatch, capsys)
    rep = json.loads(out)
    jsonschema.validate(rep, REPORT_SCHEMA)
    assert rep["agree"] and all(rep["charq"].values())
    code, out, _ = run(["generate", "--family", "r-example", "--size", "3", "--kappa", "3"],
                       None, monkeypatch, capsys)
    assert code == 0
    W, _, kappa = parse_structure(out)
    assert W.n == 3 and kappa == 3
    code, _, err = run(["generate", "--family", "partition-s", "--size", "3"], None, monkeypatch, capsys)
    assert code == 1


def test_kappa_override(monkeypatch, capsys):
    code, out, _ = run(["classify", "--kappa", "1"], doc_text("swap"), monkeypatch, capsys)
    assert json.loads(out)["s_type"] is True


def family_doc(pairs=((0, 1), (0, 1))):
    valuation = [{"input": g, "value": int(set(g) <= {"a"})} for g in ([], ["a"], ["b"], ["a", "b"])]
    return json.dumps({
        "base": ["a", "b"],
        "levels": [{"values": 2, "models": [{"id": "m", "valuation": valuation}]}],
        "pairs": [list(pairs)],
        "kappa": 2,
    })


def test_hierarchy_commands(monkeypatch, capsys):
    code, out, _ = run(["hierarchy", "eval"], family_doc(), monkeypatch, capsys)
    rep = json.loads(out)
    assert code == 0 and rep["valid"]
    outputs = {tuple(e["input"]): e["output"] for e in rep["operator"]}
    assert outputs[("a",)] == ["a"] and outputs[("b",)] == ["a", "b"]
    code, out, _ = run(["hierarchy", "search"], family_doc(), monkeypatch, capsys)
    assert json.loads(out)["search"]["least"] == 2
    code, out, _ = run(["hierarchy", "eval"], family_doc(((0, 1), (0, 7))), monkeypatch, capsys)
    rep = json.loads(out)
    assert code == 0 and not rep["valid"] and rep["problems"]
    code, _, _ = run(["hierarchy", "eval"], '{"base": ["a"], "levels": [], "pairs": []}', monkeypatch, capsys)
    assert code == 1


def test_byte_identical_reruns(monkeypatch, capsys):
    for argv in (["classify"], ["minimality"], ["construct", "--target", "mon4"], ["charq"]):
        text = doc_text("random-monotone", size=3, seed=11)
        outs = [run(argv, text, monkeypatch, capsys)[1] for _ in range(2)]
        assert outs[0] == outs[1] and outs[0].endswith("\n")
        jsonschema.validate(json.loads(outs[0]), REPORT_SCHEMA)


def test_threads_accepted(monkeypatch, capsys):
    code, _, _ = run(["classify", "--threads", "4"], doc_text("identity"), monkeypatch, capsys)
    assert code == 0


def test_module_entry_point():
    import subprocess
    import sys

    proc = subprocess.run([sys.executable, "-m", "conlab.cli", "classify"],
                          input=doc_text("identity", size=2), capture_output=True, text=True)
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["classification"]["tarski"] is True
