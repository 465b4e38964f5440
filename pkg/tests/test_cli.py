import io
import json
import subprocess
import sys

import pytest

from nichols_weyl.cli import run
from nichols_weyl.config import FIXTURE

DATA = FIXTURE.parent


def call(*argv):
    out = io.StringIO()
    code = run(list(argv), out)
    return code, out.getvalue()


def write(tmp_path, name, text):
    p = tmp_path / name
    p.write_text(text)
    return str(p)


def test_validate_fixture():
    code, out = call("validate", "--config", str(FIXTURE))
    assert code == 0
    assert "validation: pass" in out


def test_cartan_fixture():
    code, out = call("cartan", "--config", str(FIXTURE))
    assert code == 0
    assert "[ 2, -1, -1]" in out and "[-1,  2, -1]" in out and "[-1, -1,  2]" in out


def test_cartan_rank_one(tmp_path):
    text = (DATA / "diagonal_q_minus_one.toml").read_text()
    code, out = call("cartan", "--config", write(tmp_path, "c.toml", text))
    assert code == 0 and "[ 2]" in out


def test_graph_report_is_deterministic(tmp_path):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    dot = tmp_path / "g.dot"
    assert call("graph", "--config", str(FIXTURE), "--report", str(a), "--dot", str(dot))[0] == 0
    assert call("graph", "--config", str(FIXTURE), "--report", str(b))[0] == 0
    assert a.read_bytes() == b.read_bytes()
    rep = json.loads(a.read_text())
    assert rep["command"] == "graph" and rep["exit_code"] == 0
    res = rep["result"]
    assert res["closed"] and res["standard"] and res["cg1_involution"] and res["cg2_rows"]
    for label in ["(M_1,M_4,M_5)", "(M_2,M_4,M_6)", "(M_2,M_1,M_3)", "(M_4,M_1,M_5)", "(M_4,M_2,M_6)"]:
        assert label in res["objects"]
    assert res["rank_two_words_at_base"]["(r1r2)^3"] == "(M_1,M_2,M_3)"
    assert dot.read_text().startswith("graph cartan {")


def test_roots_command():
    code, out = call("roots", "--config", str(FIXTURE))
    assert code == 0
    assert "m_ij over all objects: 3" in out


def test_titscone_command():
    code, out = call("titscone", "--config", str(FIXTURE))
    assert code == 0
    assert out.splitlines()[0] == "affine, v=(1,1,1), half-space verified, tiling check: 0 violations"


def test_abstract_modes():
    code, out = call("titscone", "--config", str(DATA / "abstract_a2.toml"))
    assert code == 0 and out.startswith("finite, 6 roots")
    code, out = call("titscone", "--config", str(DATA / "abstract_indefinite.toml"))
    assert code == 0 and out.startswith("indefinite")
    assert call("graph", "--config", str(DATA / "abstract_a2.toml"))[0] == 0


@pytest.mark.parametrize("name,dims", [("diagonal_q_one.toml", "1, 1, 1, 1, 1"), ("diagonal_q_minus_one.toml", "1, 1, 0, 0, 0")])
def test_hilbert_diagonal(name, dims):
    code, out = call("hilbert", "--config", str(DATA / name))
    assert code == 0
    assert out.splitlines()[0] == f"B(V): {dims}"


def test_hilbert_fixture_module():
    code, out = call("hilbert", "--config", str(FIXTURE), "--module", "M_1", "--max-deg", "4")
    assert code == 0
    assert "B(M_1): 1, 2, 1, 0, 0" in out and "pairing ranks agree: True" in out


def test_unknown_tuple_module_is_parse_error(tmp_path):
    text = FIXTURE.read_text().replace('modules = ["M_1", "M_2", "M_3"]', 'modules = ["M_1", "M_9", "M_3"]')
    assert call("validate", "--config", write(tmp_path, "bad.toml", text))[0] == 4


def test_parse_errors(tmp_path):
    assert call("validate", "--config", write(tmp_path, "x.toml", "[group\n"))[0] == 4
    assert call("validate", "--config", str(tmp_path / "missing.toml"))[0] == 4
    with pytest.raises(SystemExit) as exc:
        run(["nonsense", "--config", str(FIXTURE)])
    assert exc.value.code == 4
    float_scalar = FIXTURE.read_text().replace("[[-1, 0], [0, -1]],", "[[-1.0, 0], [0, -1]],", 1)
    assert call("validate", "--config", write(tmp_path, "f.toml", float_scalar))[0] == 4


def test_non_cocycle_table(tmp_path):
    text = """
[group]
invariant_factors = [3]

[cocycle]
table = [ { a = [1], b = [1], c = [1], value = "-1" } ]

[[modules]]
name = "V"
degree = [0]
actions = [ [[1]] ]

[tuple]
modules = ["V"]
"""
    code, out = call("validate", "--config", write(tmp_path, "t.toml", text))
    assert code == 2
    assert "3-cocycle identity:" in out and "violations" in out


def test_invalid_module_is_validation_failure(tmp_path):
    # M_2's generator matrices replaced by commuting ones: violates the projective rule
    text = FIXTURE.read_text().replace(
        'name = "M_2"\ndegree = [0, 1, 0]\nactions = [\n  [[0, 1], [1, 0]],',
        'name = "M_2"\ndegree = [0, 1, 0]\nactions = [\n  [[1, 0], [0, 1]],',
    )
    assert text != FIXTURE.read_text()
    assert call("validate", "--config", write(tmp_path, "v.toml", text))[0] == 2


def test_cap_exceeded(tmp_path):
    # q_11 = 1 and q_12 q_21 = -1: ad iterates never vanish
    text = """
[group]
invariant_factors = [2, 2]

[[modules]]
name = "x1"
degree = [1, 0]
actions = [ [[1]], [[1]] ]

[[modules]]
name = "x2"
degree = [0, 1]
actions = [ [[-1]], [[-1]] ]

[tuple]
modules = ["x1", "x2"]

[caps]
max_ad_cap = 4
"""
    code, out = call("cartan", "--config", write(tmp_path, "cap.toml", text))
    assert code == 3
    assert "cap exceeded at (1,2)" in out


def test_console_script_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "nichols_weyl", "cartan", "--config", str(FIXTURE)], capture_output=True, text=True
    )
    assert proc.returncode == 0, proc.stderr
    assert "Cartan matrix" in proc.stdout
