import json

import pytest

from coxgrowth import cli
from coxgrowth.errors import InconsistencyError


def run(capsys, *argv):
    code = cli.main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


@pytest.fixture
def files(tmp_path):
    paths = {}
    docs = {
        "a2": "rank 2\nm 1 2 = 3\n",
        "i5": "rank 2\nm 1 2 = 5\n",
        "i6": "rank 2\nm 1 2 = 6\n",
        "inf2": "rank 2\nm 1 2 = inf\n",
        "free3": "rank 3\nm 1 2 = inf\nm 2 3 = inf\nm 1 3 = inf\n",
        "a3": "rank 3\nm 1 2 = 3\nm 2 3 = 3\n",
        "tri": '{"rank": 3, "entries": [[1, 2, "2"], [2, 3, "3"], [1, 3, "7"]]}',
        "bad": "rank 2\nm 1 2 = 1\n",
        "prism": "rank 5\nm 1 2 = inf\nm 1 5 = 3\nm 3 4 = 4\nm 3 5 = 3\nm 4 5 = 3\n",
    }
    for name, text in docs.items():
        p = tmp_path / f"{name}.cox"
        p.write_text(text)
        paths[name] = str(p)
    return paths


@pytest.mark.parametrize("key, verdict", [("a2", "Elliptic"), ("inf2", "Affine"), ("free3", "NonAffine")])
def test_classify(capsys, files, key, verdict):
    code, out, _ = run(capsys, "classify", files[key])
    assert code == 0
    assert out.splitlines()[0] == verdict
    assert out.splitlines()[1].startswith("spectrum: ")


def test_growth_finite(capsys, files):
    code, out, _ = run(capsys, "growth", files["a3"])
    assert code == 0
    assert "[2;3;4]" in out and "order: 24" in out


def test_growth_rank2_infinite(capsys):
    code, out, _ = run(capsys, "growth", "--rank2", "inf", "--rate")
    assert code == 0
    assert "series: (1 + z)/(1 - z)" in out
    assert "growth rate: 1 (exact)" in out


def test_growth_rate_triangle(capsys, files):
    code, out, _ = run(capsys, "growth", files["tri"], "--rate")
    assert code == 0
    assert "growth rate: 1.176280818" in out
    bracket = next(l for l in out.splitlines() if l.startswith("bracket:"))
    assert "/" in bracket


def test_oracle_coeffs_match_growth(capsys, files):
    _, oracle_out, _ = run(capsys, "oracle", files["tri"], "--coeffs", "8")
    _, growth_out, _ = run(capsys, "growth", files["tri"], "--coeffs", "--m-max", "8")
    assert oracle_out.splitlines()[0] == "m,a,s"
    assert growth_out.endswith(oracle_out)


def test_oracle_ball_and_dot(capsys, files):
    code, out, _ = run(capsys, "oracle", files["a2"], "--ball", "3")
    assert code == 0 and "vertices: 6" in out
    code, out, _ = run(capsys, "--format", "dot", "oracle", files["a2"], "--ball", "1")
    assert out.startswith("digraph ball {")


def test_oracle_distance(capsys, files):
    code, out, _ = run(capsys, "oracle", files["i5"], "--distance", "8", "--compare", files["i6"])
    assert code == 0 and "differ at R = 5" in out
    code, out, _ = run(capsys, "--format", "json", "oracle", files["i5"], "--distance", "8", "--compare", files["i6"])
    doc = json.loads(out)
    assert doc["first_disagreement"] == 5 and doc["v"] == 9


def test_sweeps(capsys, files):
    code, out, _ = run(capsys, "sweep", "polygon", "--polygon", "2,3,inf", "--l-list", "7,10,20")
    assert code == 0
    rates = [float(l.split(",")[3]) for l in out.splitlines()[1:]]
    assert rates == sorted(rates) and len(rates) == 4
    code, out, _ = run(capsys, "sweep", "normal", "--polygon", "2,3,inf", "--l-list", "6,12,24")
    sups = [float(l.split(",")[-1]) for l in out.splitlines()[1:]]
    assert sups == sorted(sups, reverse=True)
    code, out, _ = run(capsys, "sweep", "edge", files["prism"], "--edge", "3,4", "--incident", "2,2,4,2,2", "--m-list", "4,6")
    assert code == 0 and out.splitlines()[-1].startswith("inf,")


def test_edge_sweep_with_non_contractible_spec(capsys, files):
    code, _, err = run(capsys, "sweep", "edge", files["prism"], "--edge", "3,4", "--incident", "2,3,4,2,2")
    assert code == 2 and "contractible" in err


def test_salem(capsys, files):
    code, out, _ = run(capsys, "salem", files["tri"])
    assert code == 0 and "classification: Salem" in out
    assert out.startswith("# numerical classification")
    code, out, _ = run(capsys, "salem", "--polygon", "2,3,inf")
    assert "classification: Pisot" in out
    code, out, _ = run(capsys, "salem", "--polygon", "2,3,inf", "--limit", "--l-list", "7,8,10")
    assert "# transition_index,3" in out
    code, out, _ = run(capsys, "--format", "json", "salem", files["tri"])
    assert json.loads(out)["classification"] == "Salem"


def test_catalog_dump(capsys):
    code, out, _ = run(capsys, "catalog", "dump")
    rows = json.loads(out)
    assert code == 0
    assert {"label", "diagram", "bracket", "degree", "order"} <= set(rows[0])
    assert any(r["label"] == "E8" and r["order"] == 696729600 for r in rows)


def test_exit_codes(capsys, files, tmp_path, monkeypatch):
    assert run(capsys, "classify", files["bad"])[0] == 2
    assert run(capsys, "classify", str(tmp_path / "missing.cox"))[0] == 2
    assert run(capsys, "classify")[0] == 2
    assert run(capsys, "frobnicate")[0] == 2
    assert run(capsys, "oracle", files["tri"], "--ball", "30")[0] == 3
    assert run(capsys, "salem", files["a2"])[0] == 2

    def broken(*args, **kwargs):
        raise InconsistencyError("routes disagree")

    monkeypatch.setattr(cli, "classify", broken)
    code, _, err = run(capsys, "classify", files["a2"])
    assert code == 4 and "routes disagree" in err


def test_config_overrides(capsys, files, tmp_path):
    cfg = tmp_path / "cfg.json"
    cfg.write_text(json.dumps({"l_list": [7, 8], "tol": 1e-9}))
    code, out, _ = run(capsys, "--config", str(cfg), "sweep", "rate", "--polygon", "2,3,inf")
    assert code == 0 and len(out.splitlines()) == 4
    cfg.write_text(json.dumps({"colour": "blue"}))
    code, _, err = run(capsys, "--config", str(cfg), "classify", files["a2"])
    assert code == 2 and "colour" in err


def test_output_file_and_determinism(capsys, files, tmp_path):
    target = tmp_path / "out.csv"
    run(capsys, "-o", str(target), "oracle", files["tri"], "--coeffs", "6")
    first = target.read_text()
    run(capsys, "-o", str(target), "oracle", files["tri"], "--coeffs", "6")
    assert target.read_text() == first
    _, a, _ = run(capsys, "salem", "--polygon", "2,3,inf", "--limit", "--l-list", "7,9")
    _, b, _ = run(capsys, "salem", "--polygon", "2,3,inf", "--limit", "--l-list", "7,9")
    assert a == b
