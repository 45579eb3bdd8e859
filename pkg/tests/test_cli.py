import json
import os

from greedylab.cli import main
from greedylab.instances import load_instance


def run_cli(*argv):
    return main(list(argv))


def test_generate_and_load(tmp_path, capsys):
    out = str(tmp_path / "inst")
    assert run_cli("generate", "--family", "gab", "--a", "16", "--b", "4",
                   "--out", out) == 0
    inst = load_instance(out)
    assert inst.graph.n == 40
    assert inst.optimum.size == 20
    assert "wrote" in capsys.readouterr().out


def test_run_writes_deterministic_csv(tmp_path):
    out1 = str(tmp_path / "r1.csv")
    out2 = str(tmp_path / "r2.csv")
    for out in (out1, out2):
        code = run_cli("run", "--family", "gab", "--a", "16", "--b", "4",
                       "--algo", "mingreedy", "--algo", "edsm",
                       "--trials", "5", "--seed", "7", "--out", out)
        assert code == 0
    assert open(out1).read() == open(out2).read()
    assert os.path.exists(out1 + ".times.csv")
    rows = open(out1).read().strip().splitlines()
    assert len(rows) == 1 + 10
    header = rows[0].split(",")
    assert "ratio" in header and "unmatched" in header


def test_run_on_saved_instance(tmp_path):
    base = str(tmp_path / "saved")
    assert run_cli("generate", "--family", "path", "--n", "9", "--out", base) == 0
    out = str(tmp_path / "res.csv")
    assert run_cli("run", "--graph", base, "--algo", "karp-sipser",
                   "--trials", "3", "--seed", "1", "--out", out) == 0
    body = open(out).read()
    assert "karp-sipser" in body
    # optimum known and deg <= 2, so every ratio is exactly 1
    assert body.count("1/1") == 3


def test_run_emits_plot_data(tmp_path):
    out = str(tmp_path / "res.csv")
    assert run_cli("run", "--family", "cycle", "--n", "12", "--algo", "greedy",
                   "--trials", "4", "--seed", "3", "--out", out,
                   "--emit-plot-data") == 0
    assert os.path.exists(str(tmp_path / "res.greedy.xy"))


def test_certify_exhaustive_clean(tmp_path, capsys):
    report = str(tmp_path / "cert.json")
    code = run_cli("certify", "--family", "cycle", "--n", "8",
                   "--exhaustive", "--mode", "regular", "--out", report)
    assert code == 0
    summary = json.loads(capsys.readouterr().out.strip().splitlines()[-1])
    assert summary["violations"] == 0
    payload = json.load(open(report))
    assert payload["summary"]["executions"] == len(payload["reports"]) > 0


def test_certify_trials_mode():
    assert run_cli("certify", "--family", "gab", "--a", "4", "--b", "2",
                   "--mode", "indirect", "--trials", "5") == 0


def test_game_thm6_exit_codes(capsys):
    assert run_cli("game", "--adversary", "thm6", "--strategy", "min-degree-first",
                   "--delta", "5") == 0
    out = json.loads(capsys.readouterr().out)
    assert out["matching"] == 4 and out["optimum"] == 7 and out["consistent"]


def test_game_thm4_and_yao(capsys):
    assert run_cli("game", "--adversary", "thm4", "--strategy", "max-degree-first") == 0
    capsys.readouterr()
    assert run_cli("game", "--adversary", "yao", "--strategy", "yao-optimal",
                   "--trials", "2000", "--seed", "2") == 0
    stats = json.loads(capsys.readouterr().out)
    assert abs(stats["mean_ratio"] - 5 / 6) < 0.03


def test_bench_smoke(capsys):
    assert run_cli("bench", "--structure", "dynamic", "--n", "2e3,4e3",
                   "--repeats", "1") == 0
    assert "doubling factors" in capsys.readouterr().out


def test_sweep(tmp_path):
    config = {
        "trials": 2,
        "seed": 5,
        "families": [{"family": "gab", "a": [16, 36], "b": 2}],
        "algorithms": ["mingreedy", "mds"],
    }
    cfg_path = tmp_path / "sweep.json"
    cfg_path.write_text(json.dumps(config))
    out = str(tmp_path / "sweep.csv")
    assert run_cli("sweep", "--config", str(cfg_path), "--out", out) == 0
    rows = open(out).read().strip().splitlines()
    assert len(rows) == 1 + 2 * 2 * 2


def test_usage_errors_exit_2(capsys):
    assert run_cli("run", "--family", "gab", "--a", "10", "--b", "3",
                   "--algo", "mingreedy") == 2
    assert run_cli("nonsense") == 2
    capsys.readouterr()


def test_io_error_exit_3(tmp_path):
    missing = str(tmp_path / "no" / "such" / "dir" / "x.csv")
    code = run_cli("run", "--family", "path", "--n", "4", "--algo", "greedy",
                   "--out", missing)
    assert code == 3
