import json

import pandas as pd

from main import build_parser, cli


def test_trace_prints_the_table(capsys, tmp_path):
    out = tmp_path / "trace.csv"
    assert cli(["trace", "example1", "order1", "--out", str(out)]) == 0
    printed = capsys.readouterr().out.splitlines()
    assert printed[0] == "level,u,v,ad_H(u),S,removed"
    assert printed == out.read_text().splitlines()


def test_trace_accepts_an_explicit_ordering(capsys):
    assert cli(["trace", "example2", "e,d,c,b,a", "--mode", "stable"]) == 0
    rows = capsys.readouterr().out.splitlines()
    assert rows[1].startswith("0,e,d,")


def test_simulate_learn_score(capsys, tmp_path):
    sim = tmp_path / "sim"
    assert cli(["simulate", "--p", "6", "--N", "2", "--n", "500", "--seed", "4",
                "--out-dir", str(sim)]) == 0
    manifest = json.loads((sim / "manifest.json").read_text())
    assert manifest["spec"] == {"p": 6, "N": 2.0, "seed": 4} and manifest["sample_seed"] is None
    assert len(pd.read_csv(sim / "data.csv")) == 500
    capsys.readouterr()

    pattern = tmp_path / "learned" / "pattern.txt"
    assert cli(["learn", str(sim / "data.csv"), "--alpha", "0.01",
                "--variant", "stable-majority:30:60", "--out", str(pattern)]) == 0
    assert pattern.exists() and (pattern.parent / "pattern.pattern.json").exists()
    capsys.readouterr()

    assert cli(["score", str(pattern), str(sim / "graph.txt")]) == 0
    metrics = json.loads(capsys.readouterr().out)
    assert set(metrics) == {"tp", "fp", "tn", "fn", "tpr", "fpr", "tdr", "tdr_defined", "acc", "shd"}
    assert metrics["tp"] + metrics["fp"] + metrics["tn"] + metrics["fn"] == 15


def test_bench_writes_results(capsys, tmp_path):
    config = tmp_path / "grid.json"
    config.write_text(json.dumps({
        "p": [5], "n": [200], "N": [2], "alpha": [0.01], "repetitions": 2,
        "variants": ["original-plain", "stable-conservative"], "exact_oracle": True,
    }))
    out = tmp_path / "bench"
    assert cli(["bench", str(config), "--out-dir", str(out), "--threads", "2"]) == 0
    results = pd.read_csv(out / "results.csv")
    assert len(results) == 4 and (results["shd"] == 0).all()
    assert (out / "summary.csv").exists()
    assert "4 records, 0 failed" in capsys.readouterr().out


def test_failures_exit_with_one(capsys, tmp_path):
    assert cli(["learn", str(tmp_path / "missing.csv")]) == 1
    assert cli(["trace", "example9", "order1"]) == 1
    config = tmp_path / "grid.json"
    config.write_text(json.dumps({"variants": ["stable-sometimes"]}))
    assert cli(["bench", str(config)]) == 1
    assert "error:" in capsys.readouterr().err


def test_learn_defaults():
    args = build_parser().parse_args(["learn", "data.csv"])
    assert args.variant == "stable-plain" and args.threads >= 1
    assert 0.0 < args.alpha < 1.0
