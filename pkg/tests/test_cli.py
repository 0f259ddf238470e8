"""CLI contract: subcommands, config merging, determinism, exit codes."""
import csv
import json

import pytest

from bellmagic.cli import main


def run(args):
    return main(args)


def read_csv(path):
    with open(path) as f:
        return list(csv.DictReader(f))


def test_magic_writes_csv_and_summary(tmp_path):
    out = tmp_path / "rows.csv"
    code = run(["magic", "--family", "t-product", "--n", "3", "--nq", "200",
                "--reps", "2", "--seed", "5", "--threads", "1", "--out", str(out)])
    assert code == 0
    rows = read_csv(out)
    assert len(rows) == 2
    assert float(rows[0]["b_a_exact"]) == pytest.approx(3.0)
    summary = json.loads((tmp_path / "rows.csv.summary.json").read_text())
    assert summary["command"] == "magic" and summary["seed"] == 5


def test_determinism_across_threads(tmp_path):
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    base = ["magic", "--family", "clifford-t", "--n", "2", "--nt", "1",
            "--nq", "150", "--reps", "6", "--seed", "9"]
    assert run(base + ["--threads", "1", "--out", str(a)]) == 0
    assert run(base + ["--threads", "3", "--out", str(b)]) == 0
    assert a.read_bytes() == b.read_bytes()


def test_config_file_and_flag_override(tmp_path):
    cfg = tmp_path / "cfg.json"
    cfg.write_text(json.dumps({"version": 1, "family": "t-product", "n": 2,
                               "nq": 100, "reps": 1, "seed": 3}))
    out1, out2 = tmp_path / "o1.csv", tmp_path / "o2.csv"
    assert run(["magic", "--config", str(cfg), "--threads", "1", "--out", str(out1)]) == 0
    rows = read_csv(out1)
    assert rows[0]["family"] == "t-product" and rows[0]["n"] == "2"
    # explicit flag wins over the config value
    assert run(["magic", "--config", str(cfg), "--n", "1", "--threads", "1",
                "--out", str(out2)]) == 0
    assert read_csv(out2)[0]["n"] == "1"


def test_config_schema_validation(tmp_path):
    bad_version = tmp_path / "bad1.json"
    bad_version.write_text(json.dumps({"version": 99, "n": 2}))
    assert run(["magic", "--config", str(bad_version)]) == 2
    bad_key = tmp_path / "bad2.json"
    bad_key.write_text(json.dumps({"version": 1, "qubits": 2}))
    assert run(["magic", "--config", str(bad_key)]) == 2
    assert run(["magic", "--config", str(tmp_path / "missing.json")]) == 2


def test_usage_errors_exit_2(capsys):
    assert run(["magic", "--family", "bogus", "--n", "2"]) == 2
    with pytest.raises(SystemExit) as exc:
        run(["not-a-command"])
    assert exc.value.code == 2
    assert run(["discriminate", "--mode", "curve", "--kind", "wrong"]) == 2


def test_numerical_failure_exit_3():
    # maximal-magic fixtures stop at 4 qubits
    assert run(["magic", "--family", "max", "--n", "5", "--threads", "1"]) == 3


def test_discriminate_curve(tmp_path):
    out = tmp_path / "curve.csv"
    assert run(["discriminate", "--mode", "curve", "--kind", "single", "--n", "4",
                "--d", "2", "--nq-grid", "5,10", "--reps", "120", "--seed", "1",
                "--threads", "2", "--out", str(out)]) == 0
    rows = read_csv(out)
    assert [r["nq"] for r in rows] == ["5", "10"]
    for r in rows:
        assert abs(float(r["p_error"]) - float(r["p_error_theory"])) < 6 * max(
            float(r["binom_std"]), 0.02
        )


def test_discriminate_learn_and_runs_csv(tmp_path):
    out = tmp_path / "learn.csv"
    assert run(["discriminate", "--mode", "learn", "--n", "2", "--d", "2",
                "--p", "0.1", "--per-class", "6", "--splits", "3",
                "--nq-grid", "50,400", "--seed", "2", "--threads", "1",
                "--out", str(out)]) == 0
    rows = read_csv(out)
    assert len(rows) == 2 and all(float(r["test_error"]) <= 0.5 for r in rows)
    # labeled-run CSV in, threshold report out
    runs = tmp_path / "runs.csv"
    with open(runs, "w", newline="") as f:
        w = csv.DictWriter(f, ["b_hat", "label", "n_outcomes"])
        w.writeheader()
        for b, y in ((0.0, -1), (0.02, -1), (0.5, 1), (0.6, 1)):
            w.writerow({"b_hat": b, "label": y, "n_outcomes": 100})
    out2 = tmp_path / "report.csv"
    assert run(["discriminate", "--mode", "learn", "--runs-csv", str(runs),
                "--out", str(out2)]) == 0
    report = json.loads((tmp_path / "report.csv.summary.json").read_text())
    assert report["train_error"] == 0.0
    assert 0.02 < report["threshold"] < 0.5


def test_train_checkpoint(tmp_path):
    out = tmp_path / "train.csv"
    assert run(["train", "--n", "1", "--d", "1", "--epochs", "30", "--lr", "0.2",
                "--seed", "4", "--threads", "1", "--out", str(out)]) == 0
    rows = read_csv(out)
    assert len(rows) == 30
    ckpt = json.loads((tmp_path / "train.csv.summary.json").read_text())["checkpoint"]
    assert len(ckpt["theta"]) == 2 and ckpt["epoch"] == 30


def test_entangle(tmp_path):
    out = tmp_path / "ent.csv"
    assert run(["entangle", "--family", "ghz", "--n", "3", "--nq", "3000",
                "--reps", "1", "--seed", "6", "--threads", "1", "--out", str(out)]) == 0
    row = read_csv(out)[0]
    assert float(row["e_exact"]) == pytest.approx(1.0)
    assert abs(float(row["e_raw"]) - 1.0) < 0.1


def test_sweep_resampling(tmp_path):
    out = tmp_path / "sweep.csv"
    assert run(["sweep", "--experiment", "resampling", "--n", "3", "--na", "1",
                "--nq", "200", "--nr-grid", "disjoint,500,2000", "--reps", "40",
                "--seed", "8", "--threads", "2", "--out", str(out)]) == 0
    rows = read_csv(out)
    assert [r["mode"] for r in rows] == ["disjoint", "resample", "resample"]
    assert float(rows[-1]["mean_abs_error"]) <= float(rows[0]["mean_abs_error"]) * 1.1


def test_stdout_csv(capsys):
    assert run(["magic", "--family", "plus-product", "--n", "2", "--nq", "50",
                "--threads", "1"]) == 0
    lines = capsys.readouterr().out.strip().splitlines()
    assert lines[0].startswith("rep,family,n,")
    assert len(lines) == 2
