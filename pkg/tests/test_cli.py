import json
import subprocess
import sys

import pytest

from eigenconfig.cli import main
from eigenconfig.dynamics import frame_cubic
from eigenconfig.eigensys import random_tensor
from eigenconfig.polycore import HomogeneousForm

import numpy as np


def run(capsys, *argv):
    code = main(list(argv))
    return code, capsys.readouterr().out


@pytest.fixture
def files(tmp_path):
    x, y, z = (HomogeneousForm.variable(3, i) for i in range(3))
    paths = {}

    def put(name, obj):
        p = tmp_path / name
        p.write_text(json.dumps(obj))
        paths[name] = str(p)

    put("cremona.json", (x * y * z).to_json())
    put("frame.json", frame_cubic().to_json())
    put("conic6.json", [[t * t, t, 1] for t in range(-3, 3)] + [[5, -7, 2]])
    put("cremona_pts.json", [[1, 1, 1], [1, 1, -1], [1, -1, 1], [-1, 1, 1], [1, 0, 0], [0, 1, 0], [0, 0, 1]])
    put("lines.json", {"lines": [[2, 2, -1], [2, -1, 2], [-1, 2, 2]]})
    rng = np.random.default_rng(0)
    put("A.json", random_tensor(2, 4, rng).to_json())
    put("B.json", random_tensor(2, 4, rng).to_json())
    put("T.json", random_tensor(3, 3, rng).to_json())
    put("sym2.json", [[1, 0], [0, 1], [1, 1], [1, -1]])
    put("shear2.json", [[1, 1], [1, 0], [2, 1], [0, -1]])
    put("bad.json", {"nothing": 1})
    return paths


def test_counts(capsys):
    code, out = run(capsys, "counts", "--n", "3", "--d", "3", "--ell", "1")
    data = json.loads(out)
    assert code == 0 and data["eigenCount"] == 7 and data["discDegree"] == 24


def test_solve_cremona(capsys, files):
    code, out = run(capsys, "solve", "--tensor", files["cremona.json"])
    data = json.loads(out)
    assert code == 0 and data["count"] == 7 and not data["positiveDimensional"]


def test_solve_deterministic(capsys, files, tmp_path):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    assert main(["solve", "--tensor", files["T.json"], "--seed", "3", "-o", str(a)]) == 0
    assert main(["solve", "--tensor", files["T.json"], "--seed", "3", "-o", str(b)]) == 0
    assert a.read_bytes() == b.read_bytes()


def test_solve_output_roundtrips_into_check(capsys, files, tmp_path):
    out = tmp_path / "pts.json"
    assert main(["solve", "--tensor", files["T.json"], "-o", str(out)]) == 0
    code, text = run(capsys, "check-7pts", "--points", str(out))
    assert code == 0 and json.loads(text)["verdict"] == "eigenconfiguration"


def test_check_7pts(capsys, files):
    code, _ = run(capsys, "check-7pts", "--points", files["conic6.json"])
    assert code == 4
    code, out = run(capsys, "check-7pts", "--points", files["cremona_pts.json"], "--symmetric")
    assert code == 0 and json.loads(out)["symmetric"]


def test_fermat_and_hesse(capsys):
    code, out = run(capsys, "fermat", "--n", "3", "--d", "4")
    assert code == 0 and len(json.loads(out)["points"]) == 13
    code, out = run(capsys, "hesse", "--a", "1", "--b", "2", "--c", "3", "--h", "1/2")
    data = json.loads(out)
    assert code == 0 and len(data["points"]) == 7 and data["real"] >= 5
    assert run(capsys, "fermat", "--n", "3", "--d", "4", "--ell", "2")[0] == 2


def test_binary_sym(capsys, files):
    assert run(capsys, "check-binary-sym", "--points", files["sym2.json"])[0] == 0
    assert run(capsys, "check-binary-sym", "--points", files["shear2.json"])[0] == 4


def test_ec_commands(capsys, files, tmp_path):
    from eigenconfig.binaryec import ell_forms
    from eigenconfig.eigensys import Tensor
    A = Tensor.from_json(json.load(open(files["A.json"])))
    p = tmp_path / "forms.json"
    p.write_text(json.dumps([f.to_json() for f in ell_forms(A)]))
    code, out = run(capsys, "ec-check", "--d", "4", "--forms", str(p))
    assert code == 0 and json.loads(out)["member"]
    code, out = run(capsys, "ec-dim", "--d", "4")
    assert code == 0 and json.loads(out)["estimate"] == 12


def test_arrangement_and_dynamics(capsys, files):
    code, out = run(capsys, "arrangement", "--lines", files["lines.json"])
    assert code == 0 and json.loads(out)["count"] == 7
    code, out = run(capsys, "power-method", "--tensor", files["frame.json"], "--start", "0.3,0.5,0.1")
    assert code == 0 and json.loads(out)["kind"] == "cycle"
    code, out = run(capsys, "robust", "--tensor", files["frame.json"], "--samples", "20")
    assert code == 0 and json.loads(out)["robust"] == []


def test_perturb_csv(capsys, files):
    code, out = run(capsys, "perturb", "--phi0", files["cremona.json"], "--phi1", files["frame.json"],
                    "--eps-list", "1/10,1/100")
    assert code == 0 and out.splitlines()[0] == "epsilon,total,real"
    assert out.splitlines()[1:] == ["1/10,7,7", "1/100,7,7"]


def test_pencil_degree(capsys, files):
    code, out = run(capsys, "pencil-degree", "--a", files["A.json"], "--b", files["B.json"])
    assert code == 0 and json.loads(out)["degree"] == 6


def test_errors(capsys, files):
    assert run(capsys, "bogus")[0] == 2
    assert run(capsys, "solve", "--tensor", "/nonexistent.json")[0] == 2
    assert run(capsys, "solve", "--tensor", files["bad.json"])[0] == 2
    assert run(capsys, "counts", "--n", "3", "--d", "1")[0] == 2


def test_console_script_entry():
    out = subprocess.run([sys.executable, "-m", "eigenconfig", "counts", "--n", "4", "--d", "5"],
                         capture_output=True, text=True)
    assert out.returncode == 0 and json.loads(out.stdout)["eigenCount"] == 85
