import json
import subprocess
import sys
from pathlib import Path

import jsonschema
import pytest

from qkrull import schemas
from qkrull.cli import main
from qkrull.parsing import NonPrimeModulusError, RingSyntaxError, SemanticError, UnitIdealError
from qkrull.ringfile import format_ring_file, parse_decomposition, parse_ring_file

SAMPLES = Path(__file__).resolve().parent.parent / "samples"


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out, err = capsys.readouterr()
    return code, out, err


def run_json(capsys, *argv):
    code, out, err = run(capsys, *argv)
    assert code == 0, err
    return json.loads(out)


@pytest.fixture
def ring_file(tmp_path):
    def make(text, name="r.ring"):
        path = tmp_path / name
        path.write_text(text, encoding="utf-8")
        return path
    return make


class TestRingFiles:
    def test_two_variable_presentation(self):
        rf = parse_ring_file("ring GF(2)[x,y]\nideal x^2, x*y")
        assert (rf.modulus, rf.variables) == (2, ("x", "y"))
        assert rf.quotient_ring().presentation() == "GF(2)[x,y]/(x^2, x*y)"

    @pytest.mark.parametrize("text, cls, where", [
        ("ring GF(4)[x]\nideal x", NonPrimeModulusError, (1, 9)),
        ("ideal x^2", RingSyntaxError, (1, 1)),
        ("ring GF(2)[x]\nideal x, 1 + x", UnitIdealError, (2, 1)),
        ("ring GF(2)[x, x]\nideal x", SemanticError, (1, 15)),
        ("ring GF(2)[x]\nideal x\nideal 0", SemanticError, (3, 1)),
        ("ring GF(2)[x]\nideal a: x", SemanticError, (2, 11)),
        ("ring GF(2)[x]", RingSyntaxError, (1, 14)),
    ])
    def test_errors_are_distinct_and_located(self, text, cls, where):
        with pytest.raises(cls) as info:
            parse_ring_file(text)
        assert (info.value.line, info.value.col) == where

    def test_round_trip_on_samples_and_corpus(self, corpus):
        texts = [p.read_text() for p in sorted(SAMPLES.glob("*.ring"))]
        for _, R in corpus:
            gens = ", ".join(str(g) for g in R.ideal.gens) or "0"
            texts.append(f"ring GF({R.modulus})[{','.join(R.names)}]\nideal {gens}\n")
        for text in texts:
            rf = parse_ring_file(text)
            printed = format_ring_file(rf)
            assert parse_ring_file(printed) == rf
            assert format_ring_file(parse_ring_file(printed)) == printed

    def test_comments_and_named_ideals(self):
        rf = parse_ring_file("# c\nring GF(3)[x]  # trailing\nideal x^3\nideal a: x, x^2\n")
        assert list(rf.named) == ["a"] and len(rf.named["a"]) == 2

    def test_decomposition_blocks(self):
        ring = parse_ring_file("ring GF(5)[x,y]\nideal x*y").ring
        pairs = parse_decomposition("component: x\ncomponent: y^2\nprime: y\n", ring)
        assert [p is None for _, p in pairs] == [True, False]
        with pytest.raises(SemanticError):
            parse_decomposition("prime: x\n", ring)


class TestAnalyze:
    @pytest.mark.parametrize("n", [1, 2, 3, 4])
    def test_nilpotent_family(self, capsys, n):
        d = run_json(capsys, "analyze", SAMPLES / f"rem28_{n}.ring")
        assert (d["q_dim"], d["dim"], d["reduced"]) == (n, n, False)
        nil = run_json(capsys, "analyze", "--nil-quotient", SAMPLES / f"rem28_{n}.ring")
        assert (nil["q_dim"], nil["tau_q_vnr"]) == (0, True)

    def test_cross_and_field(self, capsys):
        d = run_json(capsys, "analyze", SAMPLES / "cross.ring")
        assert (d["q_dim"], d["dim"], d["tau_q_vnr"]) == (0, 1, True)
        d = run_json(capsys, "analyze", SAMPLES / "field.ring")
        assert (d["dim"], d["q_dim"], d["heights"]) == (0, 0, {"(0)": 0})

    def test_extension(self, capsys):
        d = run_json(capsys, "analyze", "--extend", SAMPLES / "rem28_1.ring")
        assert d["ring"] == "GF(2)[x,y1,t]/(x^2, x*y1)" and d["q_dim"] == 1

    def test_supplied_decomposition(self, capsys):
        d = run_json(capsys, "analyze", SAMPLES / "fat_point.ring")
        assert d["tainted"] and d["ass"] == ["(x, y)"]

    def test_output_matches_schema(self, capsys):
        schema = run_json(capsys, "analyze", "--json-schema")
        for path in sorted(SAMPLES.glob("*.ring")):
            jsonschema.validate(run_json(capsys, "analyze", path), schema)

    def test_stable_output(self, capsys):
        first = run(capsys, "analyze", SAMPLES / "rem28_3.ring")
        assert first == run(capsys, "analyze", SAMPLES / "rem28_3.ring")

    def test_pretty(self, capsys):
        code, out, _ = run(capsys, "analyze", "--pretty", SAMPLES / "cross.ring")
        assert code == 0 and "q_dim      0" in out


class TestQuery:
    @pytest.mark.parametrize("file, argv, expected", [
        ("cross", ["dense", "x+y"], {"dense": True}),
        ("rem28_1", ["ann", "x"], {"generators": ["x", "y1"]}),
        ("cross", ["height", "x"], {"height": 0}),
        ("rem28_2", ["height", "x, y1, y2"], {"height": 2}),
        ("cross", ["semiregular", "x, y + 1"], {"semiregular": True}),
        ("rem28_1", ["semiregular", "x, y1"], {"semiregular": False}),
        ("cross", ["qclosure", "x^2"], {"generators": ["x"]}),
        ("cross", ["qclosure", "@sq"], {"generators": ["x"]}),
        ("cross", ["dense", "@diag"], {"dense": True}),
        ("cross", ["qclosure-member", "x^2", "x"], {"member": True}),
        ("cross", ["qclosure-member", "x", "y"], {"member": False}),
        ("cross", ["dm-check", "x + y*t", "x*t"], {"k": 0, "deg_t_f": 1}),
        ("cross", ["content-lemma", "x + y*t", "x*t"],
         {"applicable": True, "holds": True, "reason": None}),
    ])
    def test_answers(self, capsys, file, argv, expected):
        got = run_json(capsys, "query", SAMPLES / f"{file}.ring", *argv)
        assert got == expected
        jsonschema.validate(got, schemas.QUERY[argv[0]])

    def test_extend(self, capsys):
        got = run_json(capsys, "query", SAMPLES / "rem28_1.ring", "extend")
        assert got["extension_variable"] == "t" and got["analysis"]["q_max"] == ["(x, y1)"]

    def test_not_applicable_content_lemma(self, capsys):
        got = run_json(capsys, "query", SAMPLES / "rem28_1.ring", "content-lemma", "x + y1*t", "x*t")
        assert got["applicable"] is False and got["holds"] is None

    def test_every_subcommand_has_a_schema(self, capsys):
        for sub in schemas.QUERY:
            jsonschema.Draft202012Validator.check_schema(
                run_json(capsys, "query", "unused", sub, "--json-schema"))


class TestDot:
    def test_cross(self, capsys):
        code, out, _ = run(capsys, "dot", SAMPLES / "cross.ring")
        assert code == 0
        nodes = [l for l in out.splitlines() if "[label=" in l]
        assert len(nodes) == 3
        assert sum("doublecircle" in l for l in nodes) == 2
        assert '"(x, y)" [label="(x, y)\\nsemiregular"];' in out
        assert '"(x)" -> "(x, y)";' in out

    def test_field_and_chain(self, capsys):
        out = run(capsys, "dot", SAMPLES / "field.ring")[1]
        assert [l for l in out.splitlines() if "[label=" in l] == [
            '  "(0)" [label="(0)\\nq-ideal", shape=doublecircle];']
        out = run(capsys, "dot", SAMPLES / "rem28_1.ring")[1]
        assert '"(x)" -> "(x, y1)";' in out
        assert '"(x, y1)" [label="(x, y1)\\nq-ideal", shape=doublecircle];' in out

    def test_deterministic(self, capsys):
        assert run(capsys, "dot", SAMPLES / "rem28_3.ring") == run(capsys, "dot", SAMPLES / "rem28_3.ring")


class TestExitCodes:
    def test_usage_errors(self, capsys):
        assert run(capsys)[0] == 64
        assert run(capsys, "frobnicate")[0] == 64
        assert run(capsys, "query", SAMPLES / "cross.ring", "bogus", "x")[0] == 64
        assert run(capsys, "query", SAMPLES / "cross.ring", "dense")[0] == 64
        assert run(capsys, "query", SAMPLES / "cross.ring", "dense", "@nope")[0] == 64
        assert run(capsys, "verify", "--suite", "P-NOPE")[0] == 64
        assert run(capsys, "analyze")[0] == 64

    def test_parse_errors(self, capsys, ring_file):
        code, _, err = run(capsys, "analyze", ring_file("ring GF(4)[x]\nideal x\n"))
        assert code == 64
        assert "r.ring:1:9:" in err and "^" in err
        jsonschema.validate(json.loads(err.splitlines()[-1]), schemas.ERROR)
        assert run(capsys, "query", SAMPLES / "cross.ring", "dense", "x + q")[0] == 64

    def test_missing_file(self, capsys, tmp_path):
        code, _, err = run(capsys, "analyze", tmp_path / "absent.ring")
        assert code == 64 and "absent.ring" in err

    def test_capability_error(self, capsys, ring_file):
        code, out, err = run(capsys, "analyze", ring_file("ring GF(5)[x,y]\nideal x^2 - y\n"))
        assert code == 2 and out == ""
        payload = json.loads(err)
        jsonschema.validate(payload, schemas.ERROR)
        assert payload["error"] == "capability" and payload["missing"] == "decomposition"
        assert run(capsys, "dot", SAMPLES / "fat_point.ring")[0] == 2

    def test_structural_error(self, capsys):
        assert run(capsys, "query", SAMPLES / "cross.ring", "height", "1")[0] == 64


class TestVerify:
    ARGS = ["verify", "--count", "3", "--draws", "10", "--families", "rem28(1),cross"]

    def test_report(self, capsys, tmp_path):
        code, out, err = run(capsys, *self.ARGS, "--output", tmp_path / "r.json")
        assert code == 0 and "fail 0" in err
        report = json.loads(out)
        jsonschema.validate(report, schemas.VERIFY)
        assert (tmp_path / "r.json").read_text() == out

    def test_expect_file(self, capsys, tmp_path):
        good = tmp_path / "good.json"
        run(capsys, *self.ARGS, "--output", good)
        assert run(capsys, *self.ARGS, "--expect", good)[0] == 0
        bad = tmp_path / "bad.json"
        bad.write_text(good.read_text().replace('"pass"', '"fail"', 1))
        code, _, err = run(capsys, *self.ARGS, "--expect", bad)
        assert code == 1 and "--- " in err and "+++ actual" in err

    def test_suite_filter(self, capsys):
        report = run_json(capsys, *self.ARGS, "--suite", "P-REM28")
        assert {v["property"] for v in report["verdicts"]} == {"P-REM28"}

    def test_empty_corpus(self, capsys):
        report = run_json(capsys, "verify", "--count", "0", "--families", "")
        assert report["verdicts"] == []

    def test_failure_exit_code(self, capsys, monkeypatch):
        from qkrull import verify
        monkeypatch.setitem(verify.PROPERTIES, "P-MIN", lambda R, e, s: (False, {}))
        assert run(capsys, *self.ARGS, "--suite", "P-MIN")[0] == 1


def test_console_script_entry_point():
    proc = subprocess.run([sys.executable, "-m", "qkrull.cli", "query", str(SAMPLES / "rem28_1.ring"),
                           "ann", "x"], capture_output=True, text=True)
    assert proc.returncode == 0
    assert json.loads(proc.stdout) == {"generators": ["x", "y1"]}
