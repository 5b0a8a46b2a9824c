import json
import shutil
import subprocess
from fractions import Fraction as F
from pathlib import Path

import pytest
from hypothesis import given
from hypothesis import strategies as st

from loomgen.cli import main
from loomgen.errors import UnsupportedFormat
from loomgen.poly import parse_system
from loomgen.render import LoopDocument, load_matrix, render
from loomgen.synthesis import LinearLoop, synthesize_polynomials

SYSTEMS = Path(__file__).resolve().parent.parent / "systems"


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out = capsys.readouterr()
    return code, out.out, out.err


def squash(text):
    return " ".join(text.split())


def write(tmp_path, name, text):
    p = tmp_path / name
    p.write_text(text)
    return p


class TestSynth:
    def test_example_one(self, capsys):
        code, out, err = run(capsys, "synth", SYSTEMS / "ex1.sys")
        assert code == 0
        assert squash(out) == "(x, y, z):=(1,1,1); while ⋆ { x:=2x; y:=4y; z:=8z; }"
        assert "INVARIANT_IDEAL_EQUALS_INPUT" in err and "nontrivial: true" in err

    def test_example_two(self, capsys):
        code, out, err = run(capsys, "synth", SYSTEMS / "ex2.sys")
        assert code == 0
        assert squash(out) == "(x, y):=(1,1); while ⋆ { x:=2x; y:=2y; }"
        assert "SUPERSET_GUARANTEED_ONLY" in err

    @pytest.mark.parametrize("system", ["ex1.sys", "ex4.sys"])
    def test_transform(self, capsys, system):
        code, out, _ = run(capsys, "synth", SYSTEMS / system, "--transform", SYSTEMS / "S_ex4.json")
        assert code == 0
        assert squash(out) == "(x, y, z):=(3/2,1/2,1/2); while ⋆ { x:=4x-2y; y:=2y; z:=-4x-2y+8z; }"

    def test_json_document(self, capsys, tmp_path):
        dest = tmp_path / "loop.json"
        code, out, _ = run(capsys, "synth", SYSTEMS / "ex1.sys", "--format", "json", "--out", dest)
        assert code == 0 and out == ""
        data = json.loads(dest.read_text())
        assert data["init"] == ["1", "1", "1"]
        assert data["update"][2] == ["0", "0", "8"]
        assert data["metadata"]["A"] == [[1, 2, 3]]
        assert data["metadata"]["lambdas"] == ["2", "4", "8"]
        assert data["metadata"]["rank"] == 2
        assert data["metadata"]["nontrivial"] is True

    def test_not_pure_difference(self, capsys, tmp_path):
        code, _, err = run(capsys, "synth", SYSTEMS / "ex4.sys")
        assert code == 2
        assert "#1" in err and "#2" in err and "--transform" in err

    def test_singular_transform(self, capsys, tmp_path):
        S = write(tmp_path, "S.json", '{"matrix": [["1","1","0"],["1","1","0"],["0","0","1"]]}')
        code, _, err = run(capsys, "synth", SYSTEMS / "ex4.sys", "--transform", S)
        assert code == 2 and "singular" in err

    def test_parse_error(self, capsys, tmp_path):
        code, _, err = run(capsys, "synth", write(tmp_path, "bad.sys", "vars x; x +;"))
        assert code == 2 and "line 1" in err

    def test_bad_iters(self, capsys):
        assert run(capsys, "synth", SYSTEMS / "ex1.sys", "--check-iters", "0")[0] == 2


class TestVerify:
    def test_round_trip_pass(self, capsys, tmp_path):
        dest = tmp_path / "loop.json"
        run(capsys, "synth", SYSTEMS / "ex1.sys", "--format", "json", "--out", dest)
        code, out, _ = run(capsys, "verify", dest, SYSTEMS / "ex1.sys")
        assert code == 0
        assert out.count("PASS_SYMBOLIC") == 2

    def test_fourlines(self, capsys, tmp_path):
        sys_ = write(tmp_path, "p.sys", "vars x y; x^3y - xy^3;")
        code, out, _ = run(capsys, "verify", SYSTEMS / "fourlines.json", sys_, "--iters", "50")
        assert code == 0 and "PASS_BOUNDED(50)" in out and "not a proof" in out

    def test_failure_witness(self, capsys, tmp_path):
        dest = tmp_path / "loop.json"
        run(capsys, "synth", SYSTEMS / "ex2.sys", "--format", "json", "--out", dest)
        code, out, _ = run(capsys, "verify", dest, write(tmp_path, "p.sys", "vars x y; x^2 - y;"))
        assert code == 1
        assert "FAIL" in out and "n = 1" in out and "(2, 2)" in out and "value 2" in out

    def test_conjugated_document(self, capsys, tmp_path):
        dest = tmp_path / "loop.json"
        run(capsys, "synth", SYSTEMS / "ex4.sys", "--transform", SYSTEMS / "S_ex4.json",
            "--format", "json", "--out", dest)
        code, out, _ = run(capsys, "verify", dest, SYSTEMS / "ex4.sys")
        assert code == 0 and out.count("PASS_BOUNDED(25)") == 2

    def test_variable_mismatch(self, capsys, tmp_path):
        code, _, err = run(capsys, "verify", SYSTEMS / "fourlines.json", SYSTEMS / "ex1.sys")
        assert code == 2 and "differ" in err


def test_report(capsys):
    code, out, _ = run(capsys, "report", SYSTEMS / "ex2.sys")
    assert code == 0
    assert "lattice L basis: [(2, -2)]" in out
    assert "Sat(L) basis: [(1, -1)]" in out
    assert "A: [(1, 1)]" in out
    assert "chain: I ⊆ J = I_L ⊆ I_Sat(L)" in out
    assert "SUPERSET_GUARANTEED_ONLY" in out


def test_usage_error_exit_code(capsys):
    with pytest.raises(SystemExit) as err:
        main(["frobnicate"])
    assert err.value.code == 2


def example_loop():
    names, polys = parse_system("vars x y z; x^2 - y; x^3 - z;")
    return synthesize_polynomials(polys, names)


class TestRender:
    def test_identity_pseudo(self):
        loop = LinearLoop(("x",), ((F(1),),), (F(5),))
        assert "x:=x;" in render(loop, "pseudo")

    def test_fraction_coefficients(self):
        loop = LinearLoop(("x", "y"), ((F(1, 2), F(0)), (F(-3, 4), F(1))), (F(1), F(1)))
        assert squash(render(loop, "pseudo")) == "(x, y):=(1,1); while ⋆ { x:=(1/2)x; y:=-(3/4)x+y; }"

    def test_unsupported(self):
        with pytest.raises(UnsupportedFormat):
            render(example_loop().loop, "latex")

    def test_json_round_trip(self):
        r = example_loop()
        doc = LoopDocument.from_report(r)
        back = LoopDocument.loads(doc.dumps())
        assert back == doc
        assert back.to_loop() == r.loop

    @given(st.lists(st.fractions(max_denominator=50), min_size=4, max_size=4),
           st.lists(st.fractions(max_denominator=50), min_size=2, max_size=2))
    def test_json_round_trip_any_rationals(self, upd, init):
        loop = LinearLoop(("a", "b"), (tuple(upd[:2]), tuple(upd[2:])), tuple(init))
        doc = LoopDocument.from_loop(loop, {"note": "x"})
        assert LoopDocument.loads(doc.dumps()) == doc

    def test_load_matrix(self):
        assert load_matrix('{"matrix": [["1/2", "0"], ["0", "3"]]}') == ((F(1, 2), 0), (0, 3))
        with pytest.raises(ValueError):
            load_matrix('{"matrix": [["1", "2"]]}')
        with pytest.raises(ValueError):
            load_matrix('{"matrix": [[0.5]]}')

    @pytest.mark.skipif(shutil.which("cc") is None, reason="no C compiler")
    def test_c_compiles(self, tmp_path):
        from loomgen.synthesis import conjugate
        for report in (example_loop(), conjugate(example_loop(), [[0, 2, 0], [1, -1, 0], [1, 0, -1]])):
            src = tmp_path / "loop.c"
            src.write_text(render(report.loop, "c"))
            subprocess.run(["cc", "-c", "-Wall", "-Werror", str(src), "-o", str(tmp_path / "loop.o")], check=True)
        code = render(conjugate(example_loop(), [[0, 2, 0], [1, -1, 0], [1, 0, -1]]).loop, "c")
        assert "long long x = 3, y = 1, z = 1;" in code
