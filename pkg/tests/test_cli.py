from __future__ import annotations

import json
import subprocess
import sys

import pytest

from prymvol import catalog, io
from prymvol.cli import main
from prymvol.cover import VoltageSpec

FIG1 = io.spec_to_json(VoltageSpec(catalog.fig1_base(), frozenset({"v2", "v3", "v4"}),
                                   frozenset({"f1", "f2"}), {"e1": -1, "e5": -1}))


@pytest.fixture
def files(tmp_path):
    def write(name, data):
        path = tmp_path / name
        path.write_text(data if isinstance(data, str) else json.dumps(data))
        return str(path)

    return {
        "fig1": write("fig1.json", FIG1),
        "disc_right": write("disc_right.json", io.cover_to_json(catalog.disc_right_cover())),
        "free_circle": write("free_circle.json", io.cover_to_json(catalog.free_circle_cover(-1))),
        "trivial": write("trivial.json", io.cover_to_json(catalog.free_circle_cover(1))),
        "theta": write("theta.json", io.cover_to_json(catalog.free_theta_cover())),
        "broken": write("broken.json", "{not json"),
        "lengths": write("lengths.json", {"e1": 2, "e3": "1/2"}),
        "write": write,
    }


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_info_five_vertex(files, capsys):
    code, out, _ = run(capsys, "info", files["fig1"])
    assert code == 0
    assert out.strip() == "g_base=3 g_total=6 h=3 m_d=2 n_d=3 d=2 A=2 B=1 C=1 class=dilated"


def test_info_free(files, capsys):
    code, out, _ = run(capsys, "info", files["free_circle"])
    assert code == 0 and out.strip().endswith("class=free") and "A=" not in out


def test_info_disconnected(files, capsys):
    code, _, err = run(capsys, "info", files["trivial"])
    assert code == 2 and "total graph disconnected" in err


def test_parse_error(files, capsys):
    code, out, err = run(capsys, "info", files["broken"])
    assert code == 2 and not out and "invalid JSON" in err


@pytest.mark.parametrize("method", ["combinatorial", "homology", "kernel"])
def test_volume_five_vertex(files, capsys, method):
    code, out, _ = run(capsys, "volume", files["fig1"], "--target", "prym", "--method", method)
    assert code == 0
    assert out.strip() == "8*e1*e3*e4 + 2*e1*e3*e5 + 32*e2*e3*e4 + 8*e2*e3*e5"


@pytest.mark.parametrize("method", ["combinatorial", "homology", "kernel"])
def test_volume_disc_right(files, capsys, method):
    code, out, _ = run(capsys, "volume", files["disc_right"], "--method", method)
    assert code == 0 and out.strip() == "2*e"


def test_volume_jac_base(files, capsys):
    code, out, _ = run(capsys, "volume", files["theta"], "--target", "jac-base")
    assert code == 0 and out.strip() == "e1*e2 + e1*e3 + e2*e3"
    code, out2, _ = run(capsys, "volume", files["theta"], "--target", "jac-base", "--method", "homology")
    assert out2 == out


def test_volume_jac_cover(files, capsys):
    code, out, _ = run(capsys, "volume", files["fig1"], "--target", "jac-cover")
    _, out2, _ = run(capsys, "volume", files["fig1"], "--target", "jac-cover", "--method", "homology")
    assert code == 0 and out == out2 and "f1" in out and out.count("+") == 7


def test_volume_eval(files, capsys):
    code, out, _ = run(capsys, "volume", files["fig1"], "--eval", files["lengths"])
    # e1=2, e3=1/2, others from the file (all 1): 8+2+16+4
    assert code == 0 and out.strip() == "30"


def test_kernel_on_free_is_inapplicable(files, capsys):
    code, _, err = run(capsys, "volume", files["theta"], "--method", "kernel")
    assert code == 3 and "dilated covers only" in err


def test_ogods(files, capsys):
    code, out, _ = run(capsys, "ogods", files["fig1"])
    assert code == 0
    assert out.splitlines() == ["{e1,e3,e4} rank=3", "{e1,e3,e5} rank=2", "{e2,e3,e4} rank=4", "{e2,e3,e5} rank=3"]
    code, out, _ = run(capsys, "ogods", files["fig1"], "--json")
    assert json.loads(out)[2] == {"edges": ["e2", "e3", "e4"], "rank": 4}


def test_verify_all_five_vertex(files, capsys):
    code, out, _ = run(capsys, "verify", files["fig1"], "--identity", "all")
    report = json.loads(out)
    assert code == 0 and report["ok"]
    assert report["identities"]["free-volume"]["status"] == "skipped"
    assert all(v["status"] in ("pass", "skipped") for v in report["identities"].values())


def test_verify_free_volume_theta(files, capsys):
    code, out, _ = run(capsys, "verify", files["theta"], "--identity", "free-volume")
    assert code == 0 and json.loads(out)["identities"]["free-volume"]["status"] == "pass"


def test_verify_moves_skipped_on_free(files, capsys):
    code, out, _ = run(capsys, "verify", files["theta"], "--identity", "moves")
    assert code == 0 and json.loads(out)["identities"]["moves"]["status"] == "skipped"


def test_verify_corrupted(files, capsys):
    data = json.loads(json.dumps(io.cover_to_json(catalog.fig1_cover())))
    data["cover"]["degree"]["f1"] = 1
    path = files["write"]("corrupt.json", data)
    code, out, err = run(capsys, "verify", path)
    assert code == 2 and not out and "edge_fiber" in err


def test_gen_deterministic_and_valid(capsys, tmp_path):
    code, a, _ = run(capsys, "gen", "--vertices", "5", "--edges", "7", "--mode", "free", "--seed", "1")
    _, b, _ = run(capsys, "gen", "--vertices", "5", "--edges", "7", "--mode", "free", "--seed", "1")
    assert code == 0 and a == b
    path = tmp_path / "gen.json"
    path.write_text(a)
    code, out, _ = run(capsys, "info", str(path))
    assert code == 0 and "class=free" in out


def test_gen_edge_free(capsys, tmp_path):
    _, a, _ = run(capsys, "gen", "--vertices", "4", "--edges", "5", "--mode", "edge-free", "--seed", "2")
    data = json.loads(a)["cover"]
    assert data["dilated_vertices"] and not data["dilated_edges"]


def test_gen_infeasible(capsys):
    code, out, err = run(capsys, "gen", "--vertices", "12", "--edges", "3")
    assert code == 4 and not out and err


def test_gen_then_verify_main(capsys, tmp_path):
    for seed in range(10):
        _, text, _ = run(capsys, "gen", "--vertices", "4", "--edges", "6", "--mode", "general", "--seed", str(seed))
        path = tmp_path / f"g{seed}.json"
        path.write_text(text)
        code, out, _ = run(capsys, "verify", str(path), "--identity", "main")
        assert code == 0 and json.loads(out)["ok"]


def test_module_entry_point(files):
    proc = subprocess.run([sys.executable, "-m", "prymvol", "info", files["disc_right"]],
                          capture_output=True, text=True)
    assert proc.returncode == 0
    assert proc.stdout.strip() == "g_base=0 g_total=1 h=1 m_d=0 n_d=2 d=2 A=0 B=1 C=0 class=edge-free"
