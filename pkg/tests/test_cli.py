import csv
import subprocess
import sys

import pytest

from mixedorient.cli import run
from mixedorient.graph import apply_plan, bfs, parse_plan, read_graph

TRIANGLE = "n 3\ne 0 1\ne 1 2\ne 2 0\n"
C4 = "n 4\ne 0 1\ne 1 2\ne 2 3\ne 3 0\n"
CORRECTED_FAILURE = "n 9\ne 0 2\ne 0 3\na 0 1\na 1 4\na 2 4\na 4 0\na 3 5\na 5 2\na 0 6\na 6 7\na 7 8\na 8 3\n"


@pytest.fixture
def files(tmp_path):
    def write(name, text):
        path = tmp_path / name
        path.write_text(text)
        return str(path)
    return write


def test_radius(files, capsys):
    assert run(["radius", files("t.g", TRIANGLE)]) == 0
    out = capsys.readouterr().out
    assert "radius 1, centers {0,1,2}" in out
    assert "eta 3" in out


def test_orientout_plan_and_verify(files, tmp_path, capsys):
    graph = files("t.g", TRIANGLE)
    plan_path = str(tmp_path / "plan.txt")
    assert run(["orientout", graph, "--root", "0", "--out", plan_path]) == 0
    plan = parse_plan(open(plan_path).read())
    h = apply_plan(read_graph(graph), plan)
    assert max(bfs(h, 0)) <= 2 and max(bfs(h, 0, backward=True)) <= 3
    capsys.readouterr()
    assert run(["verify", graph, plan_path]) == 0
    assert "strongly connected: yes" in capsys.readouterr().out


def test_orientout_stdout_and_dump_stages(files, tmp_path, capsys):
    stages = tmp_path / "stages"
    assert run(["orientout", files("t.g", TRIANGLE), "--root", "0", "--dump-stages", str(stages)]) == 0
    out = capsys.readouterr().out
    assert "o 0 1 0" in out
    for k in range(4):
        assert (stages / f"stage{k}.g").read_text().startswith(f"# stage {k}\n")
    assert read_graph(str(stages / "H.g")).n == 3


def test_orientin(files, capsys):
    assert run(["orientin", files("t.g", TRIANGLE), "--root", "0", "--r", "1"]) == 0
    assert "max d(v,0)=2 <= 2" in capsys.readouterr().out


def test_orient_with_report(files, tmp_path, capsys):
    plan_path, report = str(tmp_path / "plan.txt"), str(tmp_path / "r.csv")
    graph = files("c4.g", C4)
    assert run(["orient", graph, "--out", plan_path, "--report", report]) == 0
    assert "oriented radius 3" in capsys.readouterr().out
    rows = list(csv.DictReader(open(report)))
    assert rows[0]["oriented_radius"] == "3" and rows[0]["bound_f"] == "9"
    assert rows[0]["seconds"] == ""
    assert run(["verify", graph, plan_path]) == 0


def test_verify_failure_exit_code(files):
    plan = files("p.txt", "o 0 0 1\no 1 1 2\no 2 0 2\n")
    assert run(["verify", files("t.g", TRIANGLE), plan]) == 1


def test_brute(files, tmp_path, capsys):
    plan_path = str(tmp_path / "best.txt")
    assert run(["brute", files("c4.g", C4), "--out", plan_path]) == 0
    assert "oriented radius 3" in capsys.readouterr().out
    assert len(parse_plan(open(plan_path).read()).assignments) == 4


def test_brute_cap(files, capsys):
    assert run(["brute", files("c4.g", C4), "--cap", "3"]) == 2
    assert "--cap" in capsys.readouterr().err


def test_gen(tmp_path, capsys):
    out = tmp_path / "g.g"
    assert run(["gen", "--n", "5", "--extra", "2", "--seed", "1", "--out", str(out)]) == 0
    assert len(read_graph(str(out)).edges) == 7
    assert run(["gen", "--n", "5", "--extra", "2", "--seed", "1"]) == 0
    printed = capsys.readouterr().out
    assert out.read_text() in printed


def test_hunt(tmp_path, capsys):
    out = tmp_path / "hunts"
    assert run(["hunt", "--max-n", "4", "--out", str(out)]) == 0
    assert (out / "index.csv").read_text() == "n,edges,root,original_obs,corrected_obs,file\n"


def test_report_and_reproducers(tmp_path, capsys):
    out, repro = tmp_path / "r.csv", tmp_path / "repro"
    assert run(["report", "--seeds", "5", "--out", str(out), "--repro-dir", str(repro)]) == 0
    lines = out.read_text().splitlines()
    assert lines[0].split(",")[-1] == "seconds"
    assert len(lines) == 6
    assert "5 instances" in capsys.readouterr().out


def test_contract_violation_exit_code(files, tmp_path, capsys):
    dump = tmp_path / "dumps"
    code = run(["--dump-dir", str(dump), "orientout", files("bad.g", CORRECTED_FAILURE), "--root", "0"])
    assert code == 3
    assert "violation-orientout.txt" in capsys.readouterr().err
    text = (dump / "violation-orientout.txt").read_text()
    assert text.startswith("# contract violation")
    assert "n 9" in text


@pytest.mark.parametrize("argv", [
    [],
    ["nosuch"],
    ["radius"],
    ["radius", "/nonexistent/graph.g"],
    ["orientout", "x.g"],
    ["gen", "--n", "five", "--seed", "1"],
])
def test_usage_errors(argv, capsys):
    assert run(argv) == 2


def test_invalid_graph_is_usage_error(files, capsys):
    assert run(["radius", files("bad.g", "n 2\ne 0 0\n")]) == 2
    assert "line 2" in capsys.readouterr().err
    assert run(["orient", files("path.g", "n 3\ne 0 1\ne 1 2\n")]) == 2


def test_help_exits_zero(capsys):
    assert run(["--help"]) == 0


def test_module_entry_point(files):
    proc = subprocess.run([sys.executable, "-m", "mixedorient", "radius", files("t.g", TRIANGLE)],
                          capture_output=True, text=True)
    assert proc.returncode == 0
    assert proc.stdout.startswith("radius 1, centers {0,1,2}")
