import csv
import json
import shutil
import subprocess

import numpy as np
import pytest

from stokeslab.cli import DEFAULT_TOLERANCES, main
from stokeslab.disc import DiscField, DiscGrid, SpaceTimeField, SpaceTimeGrid, load_field, save_field


def read_csv(path):
    with open(path, newline="") as fh:
        return list(csv.reader(fh))


def test_counterexample_outputs(tmp_path, capsys):
    # a short truncation sits well below the asymptotic mean, so the band is widened
    argv = ["counterexample", "--modes", "12", "--n-t", "8", "--tol", "mean_band=1", "--out", str(tmp_path)]
    assert main(argv) == 0
    table = read_csv(tmp_path / "norm_table.csv")
    assert table[0][0] == "N" and len(table) == 13
    div = read_csv(tmp_path / "divergence.csv")
    assert div[0] == ["N", "I_N", "S_N", "S_N_over_N"]
    assert float(div[1][1]) == pytest.approx(37 / 384, rel=1e-12)
    meta = json.loads((tmp_path / "norm_table.csv.meta.json").read_text())
    assert meta["config"]["command"] == "counterexample" and meta["config"]["modes"] == 12
    assert (tmp_path / "alpha_checks.csv").exists()
    assert "FAIL" not in capsys.readouterr().out


def test_outputs_are_deterministic(tmp_path):
    a, b = tmp_path / "a", tmp_path / "b"
    for out in (a, b):
        main(["counterexample", "--modes", "6", "--n-t", "8", "--out", str(out)])
    for name in ("norm_table.csv", "divergence.csv", "alpha_checks.csv"):
        assert (a / name).read_bytes() == (b / name).read_bytes()


def test_divsolve_builtin_example(tmp_path):
    assert main(["divsolve", "--n-r", "32", "--n-theta", "8", "--example", "3", "--out", str(tmp_path)]) == 0
    u = load_field(tmp_path / "u.json")
    assert isinstance(u, DiscField) and u.rank == "vector"
    report = json.loads((tmp_path / "report.json").read_text())
    assert report["values"]["residual_div"] < 1e-8


def test_divsolve_reads_input(tmp_path):
    grid = DiscGrid(24, 4)
    g = DiscField.from_function(grid, lambda r, th: r**2 * np.cos(2 * th))
    save_field(g, tmp_path / "g.json")
    assert main(["divsolve", "--input", str(tmp_path / "g.json"), "--out", str(tmp_path)]) == 0
    assert load_field(tmp_path / "u.json").grid == grid


def test_divsolve_rejects_nonzero_mean_as_failed_check(tmp_path):
    grid = DiscGrid(24, 4)
    save_field(DiscField.from_function(grid, lambda r, th: 1 + 0 * r * th), tmp_path / "g.json")
    with pytest.raises(ValueError):
        main(["divsolve", "--input", str(tmp_path / "g.json"), "--out", str(tmp_path)])


@pytest.mark.parametrize("generator", ["smooth", "zero"])
@pytest.mark.parametrize("scheme", ["cn", "euler"])
def test_stokes_generators(tmp_path, generator, scheme):
    argv = ["stokes", "--n-r", "96", "--n-theta", "6", "--n-t", "8", "--generator", generator,
            "--scheme", scheme, "--out", str(tmp_path)]
    assert main(argv) == 0
    v = load_field(tmp_path / "v.json")
    assert isinstance(v, SpaceTimeField) and v.time.n_t == 8
    rows = read_csv(tmp_path / "report.csv")
    assert rows[0] == ["name", "kind", "value"]


def test_stokes_reads_fields(tmp_path):
    grid, time = DiscGrid(96, 4), SpaceTimeGrid(0.0, 1.0, 6)
    f = SpaceTimeField.from_cartesian(grid, time, lambda x, y, t: (t * y + 0 * x, -t * x + 0 * y))
    g = SpaceTimeField.from_function(grid, time, lambda r, th, t: t * r**2 * np.cos(2 * th))
    save_field(f, tmp_path / "f.json")
    save_field(g, tmp_path / "g.json")
    argv = ["stokes", "--f", str(tmp_path / "f.json"), "--g", str(tmp_path / "g.json"), "--out", str(tmp_path)]
    assert main(argv) == 0
    assert load_field(tmp_path / "p.json").grid == grid


@pytest.mark.parametrize("argv", [
    ["counterexample", "--eps", "0.4"],
    ["counterexample", "--tol", "nonsense=1"],
    ["counterexample", "--tol", "profile"],
    ["counterexample", "--tol", "profile=abc"],
    ["divsolve", "--n-r", "1"],
    ["divsolve", "--n-theta", "4", "--example", "9"],
    ["stokes", "--s", "0.5"],
])
def test_usage_errors_exit_with_status_two(tmp_path, argv, capsys):
    assert main(argv + ["--out", str(tmp_path)]) == 2
    assert "stokeslab: error" in capsys.readouterr().err


def test_stokes_needs_both_fields(tmp_path, capsys):
    save_field(DiscField.zeros(DiscGrid(8, 2)), tmp_path / "g.json")
    assert main(["stokes", "--g", str(tmp_path / "g.json"), "--out", str(tmp_path)]) == 2
    assert main(["stokes", "--f", str(tmp_path / "g.json"), "--g", str(tmp_path / "g.json"),
                 "--out", str(tmp_path)]) == 2
    assert main(["stokes", "--f", str(tmp_path / "missing.json"), "--g", str(tmp_path / "g.json"),
                 "--out", str(tmp_path)]) == 2


def test_failed_check_exits_with_status_one(tmp_path, capsys):
    argv = ["divsolve", "--n-r", "8", "--n-theta", "4", "--tol", "residual_div=0", "--tol", "boundary=0",
            "--out", str(tmp_path)]
    code = main(argv)
    out = capsys.readouterr().out
    assert code == 1 and "FAIL" in out


def test_verify_runs_every_module(tmp_path, capsys):
    assert main(["verify", "--out", str(tmp_path)]) == 0
    rows = read_csv(tmp_path / "verify.csv")
    modules = {row[0] for row in rows[1:]}
    assert {"disc-core", "elliptic", "norms", "boundary-ops", "div-solver", "stokes",
            "counterexample", "localization"} <= modules
    assert all(row[4] == "True" for row in rows[1:])


def test_default_tolerances_are_nonnegative():
    assert all(v >= 0 for v in DEFAULT_TOLERANCES.values())
    assert DEFAULT_TOLERANCES["profile"] == 0  # no profile may fail its certificate


@pytest.mark.skipif(shutil.which("stokeslab") is None, reason="console script not installed")
def test_console_script(tmp_path):
    done = subprocess.run(["stokeslab", "--version"], capture_output=True, text=True)
    assert done.returncode == 0 and done.stdout.strip()
    done = subprocess.run(["stokeslab", "counterexample", "--eps", "0.5", "--out", str(tmp_path)],
                          capture_output=True, text=True)
    assert done.returncode == 2
