import json
import subprocess
import sys
from fractions import Fraction

import numpy as np
import pytest

import golden
from graph_mpinv.cli import main
from graph_mpinv.generators import GenSpec
from graph_mpinv.graph import Kind, build_graph, classify, parse_graph
from graph_mpinv.linalg import from_csv, from_json

C4_TEXT = "4 4\n1 2\n2 3\n3 4\n1 4\n"


@pytest.fixture
def files(tmp_path, tree7, uni7):
    paths = {}
    for name, text in [("tree", tree7.to_text()), ("uni", uni7.to_text()), ("c4", C4_TEXT)]:
        paths[name] = tmp_path / f"{name}.txt"
        paths[name].write_text(text)
    return paths


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out, err = capsys.readouterr()
    return code, out, err


class TestClassify:
    def test_examples(self, capsys, files):
        assert run(capsys, "classify", files["tree"])[:2] == (0, "tree n=7 m=6\n")
        assert run(capsys, "classify", files["uni"])[:2] == (0, "odd-unicyclic n=7 cycle=3\n")
        code, out, _ = run(capsys, "classify", files["c4"])
        assert code == 2 and "even cycle" in out

    def test_parse_error_names_line(self, capsys, tmp_path):
        bad = tmp_path / "bad.txt"
        bad.write_text("3 2\n1 2\n1 1\n")
        code, _, err = run(capsys, "classify", bad)
        assert code == 1 and "line 3" in err

    def test_missing_file(self, capsys, tmp_path):
        assert run(capsys, "classify", tmp_path / "nope.txt")[0] == 1

    def test_relabel_note(self, capsys, tmp_path):
        f = tmp_path / "lab.txt"
        f.write_text("3 2\nx y\ny z\n")
        code, out, _ = run(capsys, "classify", f)
        assert code == 0 and out == "# relabel: x=1 y=2 z=3\ntree n=3 m=2\n"


class TestCompute:
    def test_tree_h_row(self, capsys, files):
        code, out, _ = run(capsys, "compute", files["tree"], "--which", "M")
        lines = out.splitlines()
        assert code == 0 and lines[0] == "rows=edges cols=vertices"
        assert lines[1] == "-2/7,2/7,2/7,-5/7,5/7,-2/7,2/7"
        assert from_csv(out) == golden.TREE_H

    def test_unicyclic_s_inverse(self, capsys, files):
        code, out, _ = run(capsys, "compute", files["uni"], "--which", "S")
        assert code == 0 and from_csv(out) == golden.UNI_S_INV

    @pytest.mark.parametrize("which", ["M", "Q", "S"])
    @pytest.mark.parametrize("name", ["tree", "uni"])
    @pytest.mark.parametrize("fmt", ["csv", "json"])
    def test_formula_and_oracle_bytes_agree(self, capsys, files, which, name, fmt):
        args = ("compute", files[name], "--which", which, "--format", fmt)
        formula = run(capsys, *args, "--mode", "formula")
        oracle = run(capsys, *args, "--mode", "oracle")
        assert formula == oracle and formula[0] == 0

    def test_generated_graphs_bytes_agree(self, capsys, tmp_path):
        specs = [GenSpec("tree", 9, 5, count=5), GenSpec("unicyclic", 9, 5, count=5, cycle_len=5)]
        for spec in specs:
            for k, g in enumerate(spec.graphs()):
                f = tmp_path / f"{spec.kind}{k}.txt"
                f.write_text(g.to_text())
                for which in "MQS":
                    a = run(capsys, "compute", f, "--which", which)
                    b = run(capsys, "compute", f, "--which", which, "--mode", "oracle")
                    assert a == b

    def test_out_of_class_formula(self, capsys, files):
        code, out, err = run(capsys, "compute", files["c4"])
        assert code == 2 and out == "" and "--mode oracle" in err

    def test_four_cycle_oracle_json(self, capsys, files):
        code, out, _ = run(capsys, "compute", files["c4"], "--which", "Q", "--mode", "oracle", "--format", "json")
        assert code == 0
        obj = json.loads(out)
        assert (obj["row_kind"], obj["col_kind"]) == ("vertex", "vertex")
        qplus = from_json(out)
        # independent floating-point check
        g, _ = parse_graph(C4_TEXT)
        m = np.zeros((4, 4))
        for k, (a, b) in enumerate(g.edges):
            m[a - 1, k] = m[b - 1, k] = 1
        ref = np.linalg.pinv(m @ m.T)
        assert np.allclose([[float(x) for x in row] for row in qplus], ref, atol=1e-12)
        # spectrum {4, 2, 2, 0}: diagonal is (1/4)(1/4) + (1/2)(1/2)
        assert qplus[0, 0] == Fraction(5, 16)

    def test_json_carries_labels(self, capsys, tmp_path):
        f = tmp_path / "lab.txt"
        f.write_text("2 1\nb a\n")
        code, out, _ = run(capsys, "compute", f, "--format", "json")
        assert code == 0 and json.loads(out)["labels"] == {"a": 1, "b": 2}

    def test_bad_choice_is_usage_error(self, capsys, files):
        with pytest.raises(SystemExit) as exc:
            main(["compute", str(files["tree"]), "--which", "X"])
        assert exc.value.code == 1
        capsys.readouterr()


class TestVerify:
    def test_worked_files(self, capsys, files):
        for name in ("tree", "uni"):
            code, out, _ = run(capsys, "verify", files[name])
            assert code == 0, out
            assert "FAIL" not in out

    def test_generated_trees(self, capsys):
        code, out, _ = run(capsys, "verify", "--gen", "tree", "n=10", "count=50", "seed=7")
        assert code == 0, out
        assert out.splitlines()[-1] == "summary: 50/50 instances passed all checks"

    def test_inject_fault(self, capsys, files):
        code, out, _ = run(capsys, "verify", files["tree"], "--inject-fault")
        assert code == 3
        assert "FAIL M+ formula = oracle: first difference at (e1, v1)" in out

    def test_general_graph(self, capsys, files):
        code, out, _ = run(capsys, "verify", files["c4"])
        assert code == 0 and "PASS" in out

    def test_needs_exactly_one_source(self, capsys, files):
        assert run(capsys, "verify")[0] == 1
        assert run(capsys, "verify", files["tree"], "--gen", "tree", "n=3")[0] == 1
        assert run(capsys, "verify", "--gen", "unicyclic", "n=6", "cycle=4")[0] == 1


class TestGenerate:
    def test_tree(self, capsys, tmp_path):
        out = tmp_path / "t.txt"
        assert run(capsys, "generate", "tree", "n=5", "seed=1", "-o", out)[0] == 0
        g, _ = parse_graph(out.read_text())
        assert classify(g).kind is Kind.TREE and g.n == 5

    def test_unicyclic(self, capsys, tmp_path):
        out = tmp_path / "u.txt"
        assert run(capsys, "generate", "unicyclic", "n=9", "cycle=5", "seed=2", "-o", out)[0] == 0
        g, _ = parse_graph(out.read_text())
        assert classify(g).detail == "n=9 cycle=5"

    def test_stdout_and_directory(self, capsys, tmp_path):
        code, out, _ = run(capsys, "generate", "tree", "n=4", "seed=3")
        assert code == 0 and parse_graph(out)[0].n == 4
        d = tmp_path / "many"
        assert run(capsys, "generate", "tree", "n=4", "count=3", "seed=3", "-o", d)[0] == 0
        assert len(list(d.iterdir())) == 3
        assert run(capsys, "generate", "tree", "n=4", "count=3", "seed=3")[0] == 1

    def test_even_cycle_is_usage_error(self, capsys):
        code, _, err = run(capsys, "generate", "unicyclic", "n=6", "cycle=4", "seed=1")
        assert code == 1 and "odd" in err


def test_module_entry_point(files):
    proc = subprocess.run(
        [sys.executable, "-m", "graph_mpinv", "classify", str(files["tree"])],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0 and proc.stdout == "tree n=7 m=6\n"
