import csv
import io
import json

import pytest

from sphereavg.cli import ExperimentConfig, main, run_experiment
from sphereavg.corpus import build_corpus, random_signs
from sphereavg.grid import GridFunction
from sphereavg.io import write_grid_function
from sphereavg.sphere_counts import RepCountTable


def run(capsys, *argv):
    status = main(list(argv))
    out, err = capsys.readouterr()
    return status, list(csv.reader(io.StringIO(out))), err


@pytest.fixture
def fn_files(tmp_path):
    paths = {}
    for label, f in build_corpus(1).items():
        path = tmp_path / f"{label}.txt"
        write_grid_function(f, path)
        paths[label] = str(path)
    path = tmp_path / "signs.txt"
    write_grid_function(random_signs(1, 8), path)
    paths["signs"] = str(path)
    return paths


def test_counts(capsys):
    status, rows, _ = run(capsys, "counts", "--n", "4", "--max-lambda", "64")
    assert status == 0 and rows[0] == ["lambda", "count"]
    table = {int(a): int(b) for a, b in rows[1:]}
    assert table[4] == table[16] == table[64] == 24


def test_counts_cache_and_csv(tmp_path, capsys):
    cache, out = tmp_path / "r5.bin", tmp_path / "r5.csv"
    assert main(["counts", "--n", "5", "--max-lambda", "50", "--cache", str(cache), "--csv", str(out)]) == 0
    assert RepCountTable.load(cache).max_lambda == 50
    first = out.read_text()
    assert main(["counts", "--n", "5", "--max-lambda", "20", "--cache", str(cache), "--out", str(out)]) == 0
    assert out.read_text() == "\n".join(first.splitlines()[:22]) + "\n"


def test_delta_maximal(capsys):
    status, rows, _ = run(capsys, "delta-maximal", "--n", "4", "--y-range", "1:32")
    assert status == 0
    values = dict(rows[1:])
    for k in range(6):
        assert values[str(2**k)] == "1/24"


def test_empty_range_status(capsys):
    status, rows, err = run(capsys, "delta-maximal", "--n", "4", "--y-range", "3:1")
    assert status == 2 and rows == []
    assert json.loads(err)["status"] == 2


def test_bad_flag_status(capsys):
    status, _, err = run(capsys, "counts", "--n", "x", "--max-lambda", "3")
    assert status == 2 and json.loads(err)["error"] == "InvalidArgument"
    assert run(capsys)[0] == 2


def test_budget_status(capsys, monkeypatch, fn_files):
    monkeypatch.setenv("SPHEREAVG_BUDGET", "100")
    status, _, err = run(capsys, "scaling", "--n", "5", "--M", "4", "--p", "6", "--q", "1")
    assert status == 3 and json.loads(err)["error"] == "BudgetExceeded"


def test_average_and_maximal(capsys, fn_files):
    status, rows, _ = run(capsys, "average", "--n", "5", "--lambda", "5", "--fn", fn_files["delta"])
    assert status == 0 and rows == [["y", "value"], ["-1", "1/112"], ["0", "0"], ["1", "1/112"]]
    status, rows, _ = run(capsys, "maximal", "--n", "5", "--fn", fn_files["delta"], "--window", "1:2")
    assert rows[1:] == [["1", "1/112"], ["2", "1/752"]]
    status, rows, _ = run(capsys, "--mode", "float", "average", "--n", "5", "--lambda", "5",
                          "--fn", fn_files["delta"])
    assert float(rows[1][1]) == pytest.approx(1 / 112)


def test_scaling(capsys):
    status, rows, _ = run(capsys, "scaling", "--n", "5", "--M", "4", "--p", "6", "--q", "1")
    assert status == 0
    rec = dict(zip(rows[0], rows[1]))
    assert rec["max_plateau_dev"] == "0" and float(rec["lq_lower"]) >= 4


def test_restriction(capsys, fn_files):
    status, rows, _ = run(capsys, "restriction", "--n", "6", "--N", "4", "8",
                          "--fn", fn_files["delta"], fn_files["signs"])
    assert rows[0] == ["n", "N", "f_label", "method", "lhs", "rhs", "ratio"]
    assert rows[1][2] == "delta" and rows[1][-1] == "1/4"
    assert len(rows) == 5
    status, rows, _ = run(capsys, "restriction", "--n", "5", "--N", "8", "--fn", fn_files["signs"],
                          "--method", "quad", "--tol", "1e-8")
    assert status == 0 and rows[1][3] == "quadrature"


def test_reconstruct(capsys, fn_files):
    files = [fn_files[k] for k in ("rand_a", "rand_b", "rand_c", "rand_d", "rand_e")]
    status, rows, _ = run(capsys, "reconstruct", "--n", "5", "--lambda", "9", "--fn", *files, "--y=-2:2")
    assert status == 0 and len(rows) == 6
    assert all(r[1] == r[2] for r in rows[1:])


def test_uniform_ratio_hl_majorize_divergence(capsys, fn_files):
    status, rows, _ = run(capsys, "uniform-ratio", "--n", "5", "--max-lambda", "1")
    assert rows[1] == ["5", "1", "0.8", "1"]
    status, rows, _ = run(capsys, "hl", "--fn", fn_files["delta"], "--window=-3:3")
    assert rows[1:4] == [["-3", "1/3"], ["-2", "1/2"], ["-1", "1"]]
    assert rows[-1][0] == "norm_ratio"
    status, rows, _ = run(capsys, "majorize", "--n", "5", "--fn", fn_files["rand_a"], "--window=-2:2")
    assert status == 0 and all(float(r[-1]) <= 0 for r in rows[1:])
    status, rows, _ = run(capsys, "divergence-demo", "--K", "20", "--q", "1")
    assert rows[1][2] == "7/8" and rows[1][4] == "7/8"


def test_config_file(tmp_path, capsys):
    cfg = tmp_path / "cfg.json"
    cfg.write_text(json.dumps({"subcommand": "counts", "n": 4, "max_lambda": 4}))
    status, rows, _ = run(capsys, "--config", str(cfg))
    assert status == 0 and [r[1] for r in rows[1:]] == ["1", "8", "24", "32", "24"]
    config = ExperimentConfig.from_argv(["--config", str(cfg)])
    assert config == ExperimentConfig.from_argv(["counts", "--n", "4", "--max-lambda", "4"])


def test_bad_config(tmp_path, capsys):
    cfg = tmp_path / "cfg.json"
    cfg.write_text("{not json")
    assert run(capsys, "--config", str(cfg))[0] == 2


def test_deterministic_output(tmp_path, fn_files):
    outs = []
    for i in range(2):
        out = tmp_path / f"o{i}.csv"
        main(["restriction", "--n", "5", "--N", "4", "--fn", fn_files["signs"], "--method", "quad",
              "--out", str(out)])
        outs.append(out.read_bytes())
    assert outs[0] == outs[1]


def test_run_experiment_reports_errors(tmp_path):
    path = tmp_path / "far.txt"
    write_grid_function(GridFunction.delta(100), path)
    config = ExperimentConfig("restriction", {"n": 6, "N": [4], "fn": [str(path)],
                                              "method": "exact", "tol": 1e-6})
    result = run_experiment(config)
    assert result.status == 2 and result.error["error"] == "DegenerateInput"
