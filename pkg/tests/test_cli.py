import csv
import shutil
import subprocess
import sys
import time

import pytest

from inference_energy.cli import main
from inference_energy.registry import default_paths


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def _data_args(d):
    m, g, b = default_paths(d)
    return ["--models", str(m), "--gpus", str(g), "--benchmarks", str(b)]


@pytest.fixture
def data_copy(tmp_path):
    for p in default_paths():
        shutil.copy(p, tmp_path / p.name)
    return tmp_path


def _edit_models(d, edit):
    path = default_paths(d)[0]
    with open(path, newline="") as f:
        rows = list(csv.DictReader(f))
    rows = edit(rows)
    with open(path, "w", newline="") as f:
        w = csv.DictWriter(f, list(rows[0].keys()), lineterminator="\n")
        w.writeheader()
        w.writerows(rows)


def test_validate_ok(capsys):
    code, out, _ = run(capsys, "validate")
    assert code == 0 and out.startswith("ok: 113 models")


def test_validate_negative_gflops(capsys, data_copy):
    def edit(rows):
        rows[0]["gflops"] = "-1"
        return rows
    _edit_models(data_copy, edit)
    code, out, _ = run(capsys, "validate", *_data_args(data_copy))
    assert code == 1
    lines = out.strip().splitlines()
    assert len(lines) == 1 and "InvariantViolation" in lines[0]


def test_validate_missing_column(capsys, data_copy):
    _edit_models(data_copy, lambda rows: [{k: v for k, v in r.items() if k != "score"} for r in rows])
    code, out, _ = run(capsys, "validate", *_data_args(data_copy))
    assert code == 1 and "MissingColumn" in out and "score" in out


def test_invalid_bundle_fails_other_commands(capsys, data_copy):
    def edit(rows):
        rows[0]["gflops"] = "zero"
        return rows
    _edit_models(data_copy, edit)
    code, _, err = run(capsys, "fit", *_data_args(data_copy))
    assert code == 1 and "UnparseableValue" in err


def test_too_few_points_exit_code(capsys, data_copy):
    _edit_models(data_copy, lambda rows: [r for r in rows if r["domain"] == "NLP"][:1]
                 + [r for r in rows if r["domain"] == "CV"])
    code, _, err = run(capsys, "fit", "--domain", "nlp", *_data_args(data_copy))
    assert code == 2 and "need at least 2" in err


def _estimate(capsys, *args):
    code, out, _ = run(capsys, "estimate-flops", *args)
    assert code == 0
    return float(out.rsplit("(", 1)[1].rstrip(")\n"))


def test_estimate_compound(capsys):
    value = _estimate(capsys, "--base", "74", "--d", "1.7097", "--w", "2.15", "--r", "1.3334")
    assert abs(value - 1040) / 1040 < 0.01


def test_estimate_identity(capsys):
    assert _estimate(capsys, "--base", "5", "--d", "1", "--w", "1", "--r", "1") == 5


def test_estimate_resolution_vit(capsys):
    # the quadratic rule yields 5204, 1.25% under the 5270 target
    value = _estimate(capsys, "--base", "2859.9", "--res", "384:518")
    assert abs(value - 5270) / 5270 < 0.01


def test_estimate_convention_flag(capsys):
    assert _estimate(capsys, "--base", "0.71", "--convention", "madd_pair_as_one",
                     "--d", "1", "--w", "1", "--r", "1") == pytest.approx(1.42)


def test_estimate_check_warns_on_non_quadratic(capsys):
    code, out, err = run(capsys, "estimate-flops", "--base", "10", "--res", "224:448",
                         "--check", "224:10", "448:30")
    assert code == 0 and "warning" in err
    code, out, err = run(capsys, "estimate-flops", "--base", "2859.9", "--res", "384:518",
                         "--check", "224:965.3", "384:2859.9")
    assert "2.0150" in out and err == ""


def test_estimate_needs_inputs(capsys):
    code, _, err = run(capsys, "estimate-flops", "--base", "5", "--d", "1")
    assert code == 2 and "error" in err


def test_report_cli(capsys, tmp_path):
    code, out, _ = run(capsys, "report", "--out", str(tmp_path), "--domain", "cv")
    assert code == 0
    assert len(list(tmp_path.glob("*.jsonl"))) == 7


def test_report_on_empty_bundle(capsys, data_copy, tmp_path):
    for p in default_paths(data_copy):
        header = p.read_text().splitlines()[0]
        p.write_text(header + "\n")
    code, out, _ = run(capsys, "report", "--out", str(tmp_path / "r"), *_data_args(data_copy))
    assert code == 0
    assert not list((tmp_path / "r").glob("*.jsonl"))
    assert "0 models" in (tmp_path / "r" / "summary.txt").read_text()


def test_gpu_table_cli(capsys, tmp_path):
    code, out, _ = run(capsys, "gpu-table")
    assert code == 0
    lines = out.strip().splitlines()
    assert len(lines) == 1 + 36
    assert any(line.startswith("For NLP,A100,Mixed,73.29,") and line.endswith(",183.23") for line in lines)
    code, out, _ = run(capsys, "gpu-table", "--out", str(tmp_path))
    assert (tmp_path / "adapted_gpu_table.csv").exists()


@pytest.mark.parametrize("argv", [
    ["fit"], ["fit", "--metric", "joules", "--subset", "all"], ["pareto"], ["pareto", "--metric", "joules"],
    ["energy", "--domain", "nlp"], ["forecast"], ["forecast", "--joules", "7.946", "--rate", "30"],
])
def test_commands_succeed(capsys, argv):
    code, out, _ = run(capsys, *argv)
    assert code == 0 and out


def test_forecast_reports_baselines(capsys):
    _, out, _ = run(capsys, "forecast", "--domain", "cv")
    assert "somatic baseline: 96.85 J/s" in out and "external baseline: 9114.42 J/s" in out


def test_module_entry_point_under_ten_seconds(tmp_path):
    start = time.perf_counter()
    proc = subprocess.run([sys.executable, "-m", "inference_energy", "report", "--out", str(tmp_path)],
                          capture_output=True, text=True)
    assert proc.returncode == 0, proc.stderr
    assert time.perf_counter() - start < 10
