import json

import pytest

from inference_energy.report import FigureSeries, dumps_series, load_series, write_report
from inference_energy.registry import DatasetBundle

CV_FIGS = {"fig1_cv_params_vs_gflops", "fig2_cv_accuracy_vs_date", "fig3_cv_gflops_vs_date",
           "fig4_cv_accuracy_vs_gflops", "fig9_cv_joules_vs_date", "fig11_cv_accuracy_vs_joules",
           "fig13_cv_joules_vs_baselines"}
NLP_FIGS = {"fig5_nlp_glue_vs_gflops", "fig6_nlp_gflops_vs_date", "fig10_nlp_joules_vs_date",
            "fig12_nlp_glue_vs_joules", "fig14_nlp_joules_vs_baselines"}


@pytest.fixture(scope="module")
def report_dir(bundle, tmp_path_factory):
    out = tmp_path_factory.mktemp("report")
    write_report(bundle, out)
    return out


def test_figure_files(report_dir):
    stems = {p.stem for p in report_dir.glob("*.jsonl")}
    assert stems == CV_FIGS | NLP_FIGS
    assert (report_dir / "summary.txt").exists()


def test_single_domain(bundle, tmp_path):
    paths = write_report(bundle, tmp_path, ["CV"])
    assert {p.stem for p in paths if p.suffix == ".jsonl"} == CV_FIGS
    paths = write_report(bundle, tmp_path / "n", ["NLP"])
    assert len([p for p in paths if p.suffix == ".jsonl"]) == 5


def test_log_axes_hold_positive_values(report_dir):
    for path in report_dir.glob("*.jsonl"):
        header, points = load_series(path)
        assert header["kind"] == "figure" and header["n_points"] == len(points) > 0
        for p in points:
            if header["axes"]["x_log"]:
                assert p["x"] > 0
            if header["axes"]["y_log"]:
                assert p["y"] > 0


def test_trend_figures_carry_fits(report_dir):
    header, _ = load_series(report_dir / "fig3_cv_gflops_vs_date.jsonl")
    subsets = {f["subset"] for f in header["fits"]}
    assert subsets == {"frontier", "all"}
    front = next(f for f in header["fits"] if f["subset"] == "frontier")
    assert front["slope"] > 0 and front["doubling_time_years"] < 1.2


def test_summary_content(report_dir):
    text = (report_dir / "summary.txt").read_text()
    assert "reproducing convention: raw" in text
    assert "somatic 96.85 J/s" in text and "external 9114.42 J/s" in text
    assert "== CV: 94 models ==" in text and "== NLP: 19 models ==" in text


def test_empty_bundle_writes_only_summary(tmp_path):
    paths = write_report(DatasetBundle(), tmp_path)
    assert [p.name for p in paths] == ["summary.txt"]
    assert "0 models" in (tmp_path / "summary.txt").read_text()


def test_series_rejects_nonpositive_on_log_axis():
    f = FigureSeries("f", "x", "y", y_log=True)
    f.add(1.0, 0.0, "bad")
    with pytest.raises(ValueError):
        dumps_series(f)


def test_series_are_rounded_and_sorted():
    f = FigureSeries("f", "x", "y")
    f.add(1 / 3, 2.0, "a")
    lines = dumps_series(f).splitlines()
    point = json.loads(lines[1])
    assert point["x"] == 0.333333
    assert lines[1] == json.dumps(point, sort_keys=True)


def test_report_is_byte_deterministic(bundle, tmp_path):
    a, b = tmp_path / "a", tmp_path / "b"
    pa, pb = write_report(bundle, a), write_report(bundle, b)
    assert [p.name for p in pa] == [p.name for p in pb]
    for x, y in zip(pa, pb):
        assert x.read_bytes() == y.read_bytes()
