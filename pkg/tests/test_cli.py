import json
import subprocess
import sys

import pytest

from compdiff.cli import main
from compdiff.graph import GameInstance, WeightedGraph, load, save


@pytest.fixture
def files(tmp_path):
    def write(name, obj):
        p = tmp_path / name
        p.write_text(obj if isinstance(obj, str) else json.dumps(obj))
        return str(p)

    return write


def path_game(n, k, weights=None):
    return save(GameInstance(WeightedGraph.path(weights or [1] * n), k))


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, (json.loads(out) if out.strip() else None), err


def test_simulate(files, capsys):
    code, out, err = run(capsys, "simulate", files("g.json", path_game(7, 2)), files("p.json", [0, 4]))
    assert code == 0
    assert out == {
        "owner": [0, 0, "neutral", 1, 1, 1, 1],
        "time": [1, 2, 3, 2, 1, 2, 3],
        "utilities": [2, 4],
    }
    assert "utilities: 2 4" in err


def test_check_reports_counterexample(files, capsys):
    code, out, _ = run(capsys, "check", files("g.json", path_game(7, 2)), files("p.json", [0, 4]))
    assert code == 1
    assert out == {"equilibrium": False, "counterexample": {"player": 0, "vertex": 1, "gain": 1}}
    code, out, _ = run(capsys, "check", files("g.json", path_game(7, 2)), files("q.json", [3, 4]))
    assert code == 0 and out == {"equilibrium": True}


def test_best_response(files, capsys):
    code, out, _ = run(capsys, "best-response", files("g.json", path_game(7, 2)), files("p.json", [0, 3]), "--player", "0")
    assert code == 0 and out == {"player": 0, "vertex": 2, "utility": 3}


def test_brute_force_modes_and_budget(files, capsys):
    g = files("g.json", path_game(6, 3))
    code, out, _ = run(capsys, "brute-force", g)
    assert code == 1 and out == {"profile": None, "profiles_checked": 56}
    code, _, err = run(capsys, "brute-force", g, "--budget", "10")
    assert code == 3 and "exceeds budget" in err
    star = save(GameInstance(WeightedGraph.from_edges(5, [(0, i) for i in range(1, 5)]), 2))
    code, out, _ = run(capsys, "brute-force", files("s.json", star), "--all")
    assert code == 0
    assert out["equilibria"] == [[0, 1], [0, 2], [0, 3], [0, 4]]


def test_solve_paths(files, capsys):
    g = files("g.json", path_game(7, 2))
    code, out, _ = run(capsys, "solve-paths", g)
    assert code == 0 and out["profile"] == [3, 4] and out["solver"] == "unweighted" and out["t"] == 3
    code, out, _ = run(capsys, "solve-paths", g, "--weighted")
    assert code == 0 and out["profile"] == [2, 3] and out["t"] == 3
    code, out, _ = run(capsys, "solve-paths", files("h.json", path_game(6, 3)))
    assert code == 1 and out == {"profile": None}


def test_solve_paths_rejects_branching(files, capsys):
    star = save(GameInstance(WeightedGraph.from_edges(4, [(0, 1), (0, 2), (0, 3)]), 1))
    code, out, err = run(capsys, "solve-paths", files("s.json", star))
    assert code == 2 and out is None and "vertex 0" in err


def test_solve_structured(files, capsys):
    g = save(GameInstance(WeightedGraph.from_edges(4, [(0, 2), (1, 2), (1, 3)]), 2))
    code, out, _ = run(capsys, "solve-structured", files("g.json", g), "--class", "chain")
    assert code == 0
    assert out["class"] == "chain" and out["X"] == [0, 1]
    assert len(out["profile"]) == 2
    code, _, err = run(capsys, "solve-structured", files("p.json", path_game(4, 1)), "--class", "threshold")
    assert code == 2 and "not a threshold graph" in err


def test_reduce_and_verify(files, capsys, tmp_path):
    vals = files("v.json", [2, 2, 2, 2])
    roles = tmp_path / "roles.json"
    code = main(["reduce", vals, "--kind", "partition-sp", "--roles", str(roles)])
    out, err = capsys.readouterr()
    assert code == 0
    game = load(out)
    assert game.n == 26 and game.k == 8
    meta = json.loads(roles.read_text())
    assert meta["metadata"]["alpha"] == 4 and meta["roles"]["a_1"] == 0
    code, out, _ = run(capsys, "verify-certificate", vals, files("c.json", [0, 1]), "--kind", "partition-sp")
    assert code == 0 and out["equilibrium"] and out["utilities_match"]
    code, _, err = run(capsys, "verify-certificate", vals, files("d.json", [0]), "--kind", "partition-sp")
    assert code == 2 and "sums to 2" in err


def test_reduce_independent_set(files, capsys):
    g = files("g.json", save(GameInstance(WeightedGraph.from_edges(2, []), 2)))
    code = main(["reduce", g, "--kind", "is"])
    out, _ = capsys.readouterr()
    assert code == 0 and load(out).n == 35
    code, out, _ = run(capsys, "verify-certificate", g, files("c.json", [0, 1]), "--kind", "is")
    assert code == 0 and out["utilities"] == [3, 3, 21, 4, 4]


@pytest.mark.parametrize(
    "argv",
    [
        ["simulate"],
        ["nonsense"],
        ["solve-structured", "g.json", "--class", "interval"],
    ],
)
def test_usage_errors_exit_two(argv, capsys):
    assert main(argv) == 2


def test_input_errors_exit_two(files, capsys):
    code, _, err = run(capsys, "simulate", files("bad.json", "{"), files("p.json", [0]))
    assert code == 2 and "invalid JSON" in err
    code, _, err = run(capsys, "simulate", "/nonexistent/file.json", files("p.json", [0]))
    assert code == 2 and "cannot read" in err
    code, _, err = run(capsys, "simulate", files("g.json", path_game(3, 2)), files("q.json", [0]))
    assert code == 2
    code, _, err = run(capsys, "simulate", files("g.json", path_game(3, 1)), files("r.json", ["a"]))
    assert code == 2 and "array of integers" in err


def test_console_entry_point(files):
    res = subprocess.run(
        [sys.executable, "-m", "compdiff.cli", "simulate", files("g.json", path_game(3, 2)), files("p.json", [0, 2])],
        capture_output=True,
        text=True,
    )
    assert res.returncode == 0
    assert json.loads(res.stdout)["utilities"] == [1, 1]
