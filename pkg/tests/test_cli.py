import io
import json
import subprocess
import sys

import pytest

from tlcat.cli import SessionConfig, UsageError, run, verify_all
from tlcat.diagrams import PlanarDiagram


def call(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = run(list(argv), stdout=out, stderr=err)
    return code, out.getvalue(), err.getvalue()


def test_gram_det_generic():
    code, out, _ = call("gram", "--n", "3", "--r", "1", "--generic", "--det")
    assert code == 0 and out.strip() == "δ^2 - 1"


def test_gram_det_specialized_and_radical():
    assert call("gram", "--n", "3", "--r", "1", "--delta", "1", "--det")[1].strip() == "0"
    assert call("gram", "--n", "3", "--r", "1", "--delta", "1", "--radical")[1].strip() == "1"
    assert call("gram", "--n", "3", "--r", "1", "--delta", "3", "--det")[1].strip() == "8"


def test_gram_json_basis_order():
    code, out, _ = call("gram", "--n", "4", "--r", "1", "--json")
    data = json.loads(out)
    assert code == 0 and data["basis"] == sorted(data["basis"])
    assert len(data["matrix"]) == 3


def test_enumerate_cup():
    code, out, _ = call("diagrams", "enumerate", "--bot", "0", "--top", "2", "--json")
    data = json.loads(out)
    assert code == 0 and data["count"] == 1
    for d in data["diagrams"]:
        assert PlanarDiagram.from_json(d).to_json() == d


def test_compose_command():
    a = json.dumps({"bot": 3, "top": 3, "arcs": [[["T", 1], ["T", 2]], [["T", 3], ["B", 1]], [["B", 2], ["B", 3]]]})
    b = json.dumps({"bot": 3, "top": 3, "arcs": [[["T", 2], ["T", 3]], [["T", 1], ["B", 1]], [["B", 2], ["B", 3]]]})
    code, out, _ = call("diagrams", "compose", "--lower", b, "--upper", a, "--json")
    data = json.loads(out)
    assert code == 0 and data["loops"] == 1
    assert PlanarDiagram.from_json(data["diagram"]) == PlanarDiagram.from_json(json.loads(a))


def test_series_table():
    code, out, _ = call("g0", "series", "--m", "4", "--n", "3", "--r", "2")
    assert code == 0
    rows = [line for line in out.splitlines() if "Δ_4(" in line and "⊗" in line]
    assert [r.split()[1] for r in rows] == ["(0,2,0)", "(0,1,1)", "(1,1,0)", "(1,0,1)", "(2,0,0)"]
    assert "total 14" in out


def test_product_json():
    code, out, _ = call("g0", "product", "--m", "4", "--p", "1", "--n", "3", "--q", "1", "--method", "all", "--json")
    assert code == 0
    assert json.loads(out)["product"] == {"terms": [{"grade": 7, "label": 2, "mult": 1}, {"grade": 7, "label": 3, "mult": 1}]}


def test_mackey_and_coproduct():
    code, out, _ = call("g0", "mackey", "--n", "4", "--p", "1", "--json")
    data = json.loads(out)
    assert code == 0 and data["left_pattern"] == [1, 2, 1] and data["right_pattern"] == [1, 3, 1]
    assert call("g0", "coproduct", "--n", "3", "--r", "1")[0] == 0


def test_hom_command():
    code, out, _ = call("hom", "--source", "tensor(cell:4:0,cell:3:1)", "--target", "res(cell:7:2,4,3)", "--json")
    assert code == 0 and json.loads(out)["dim"] == 1


def test_tower_commands():
    code, out, _ = call("tower", "ind", "--n", "3", "--p", "1", "--solver", "--json")
    data = json.loads(out)
    assert code == 0 and data["agree"]
    code, out, _ = call("tower", "axioms", "--max-n", "3", "--json")
    assert code == 0 and json.loads(out)["pass"]


@pytest.mark.parametrize(
    "argv",
    [
        ["bogus"],
        ["gram", "--n", "3"],
        ["gram", "--n", "3", "--r", "2"],
        ["gram", "--n", "3", "--r", "1", "--delta", "x"],
        ["hom", "--source", "cell:3:1", "--target", "cell:4:1"],
        ["hom", "--source", "cell:3", "--target", "cell:3:1"],
        ["tower", "res", "--n", "0", "--p", "0"],
        ["g0", "product", "--m", "9", "--p", "0", "--n", "9", "--q", "0"],
    ],
)
def test_usage_errors_exit_two(argv):
    assert call(*argv)[0] == 2


def test_max_n_env(monkeypatch):
    monkeypatch.setenv("TLCAT_MAX_N", "3")
    assert call("gram", "--n", "4", "--r", "1")[0] == 2
    monkeypatch.setenv("TLCAT_MAX_N", "15")
    assert call("gram", "--n", "2", "--r", "1")[0] == 2
    with pytest.raises(UsageError):
        SessionConfig(max_n=15)


def test_deterministic_json():
    argv = ["g0", "series", "--m", "4", "--n", "3", "--r", "2", "--render", "--json"]
    assert call(*argv)[1] == call(*argv)[1]


def test_verify_all():
    assert verify_all(0)["pass"]
    report = verify_all(4)
    assert report["pass"]
    bad = verify_all(4, mutation="printed-structure-constant")
    assert not bad["pass"]
    (failed,) = [s for s in bad["suites"] if not s["pass"]]
    assert failed["suite"] == "grothendieck" and failed["witness"]


def test_verify_exit_codes():
    assert call("verify", "--max-n", "3")[0] == 0
    assert call("verify", "--max-n", "3", "--mutation", "printed-structure-constant")[0] == 1


def test_golden_round_trip(tmp_path):
    assert call("golden", "--dir", str(tmp_path))[0] == 0
    assert call("golden", "--dir", str(tmp_path), "--check")[0] == 0
    (tmp_path / "gram_4_1.json").write_text("{}")
    assert call("golden", "--dir", str(tmp_path), "--check")[0] == 1


def test_console_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "tlcat.cli", "diagrams", "enumerate", "--bot", "2", "--top", "2"],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0 and proc.stdout.startswith("2 diagram(s)")
