import csv
from pathlib import Path

import pytest

from hyperdir_plots.cli import main
from hyperdir_plots.render import FigureSpec, SchemaError, build_figure, render

# fixture CSVs produced by the primary package's evaluation pipeline
EXPECTED = Path(__file__).resolve().parents[2] / "tests" / "fixtures" / "expected"

SMC_CSV = EXPECTED / "toy_gold_noncompound_smc.csv"
BUCKETS_CSV = EXPECTED / "toy_gold_noncompound_buckets.csv"
COMPLEMENT_CSV = EXPECTED / "toy_gold_noncompound_complementarity.csv"


def test_fixture_csvs_present():
    assert SMC_CSV.is_file(), "generate fixtures first (scripts/gen_fixtures.py)"


def test_render_heatmap(tmp_path):
    out = tmp_path / "smc.png"
    render(FigureSpec(str(SMC_CSV), "heatmap", str(out), "SMC"))
    assert out.stat().st_size > 0


def test_render_bucket_lines(tmp_path):
    out = tmp_path / "buckets.png"
    render(FigureSpec(str(BUCKETS_CSV), "bucket_lines", str(out), "Buckets"))
    assert out.stat().st_size > 0


def test_render_complement_bars(tmp_path):
    out = tmp_path / "comp.png"
    render(FigureSpec(str(COMPLEMENT_CSV), "complement_bars", str(out), "Complement"))
    assert out.stat().st_size > 0


def test_heatmap_annotations_equal_csv_at_two_decimals():
    with open(SMC_CSV, newline="", encoding="utf-8") as f:
        rows = list(csv.reader(f))
    expected = [f"{float(cell):.2f}" for row in rows[1:] for cell in row[1:]]
    fig = build_figure(FigureSpec(str(SMC_CSV), "heatmap", "unused.png"))
    ax = fig.axes[0]
    annotations = [t.get_text() for t in ax.texts]
    assert annotations == expected


def test_bucket_lines_shape():
    fig = build_figure(FigureSpec(str(BUCKETS_CSV), "bucket_lines", "unused.png"))
    ax = fig.axes[0]
    assert len(ax.lines) == 6
    assert all(len(line.get_xdata()) == 10 for line in ax.lines)


def test_complement_bars_one_bar_per_defined_ratio():
    with open(COMPLEMENT_CSV, newline="", encoding="utf-8") as f:
        rows = list(csv.reader(f))
    defined = sum(1 for r in rows[1:] if r[2])
    fig = build_figure(FigureSpec(str(COMPLEMENT_CSV), "complement_bars", "unused.png"))
    ax = fig.axes[0]
    assert len(ax.patches) == defined
    heights = sorted(p.get_height() for p in ax.patches)
    assert heights == sorted(float(r[2]) for r in rows[1:] if r[2])


def test_schema_mismatch_raises_named_column_error(tmp_path):
    wrong = tmp_path / "wrong.csv"
    wrong.write_text("foo,bar\r\n1,2\r\n", encoding="utf-8")
    with pytest.raises(SchemaError, match="bucket"):
        build_figure(FigureSpec(str(wrong), "bucket_lines", "unused.png"))


def test_kind_csv_cross_mismatch():
    with pytest.raises(SchemaError):
        build_figure(FigureSpec(str(BUCKETS_CSV), "heatmap", "unused.png"))


def test_header_only_csv_is_error(tmp_path):
    empty = tmp_path / "empty.csv"
    empty.write_text("method,WordLength\r\n", encoding="utf-8")
    with pytest.raises(SchemaError, match="header-only"):
        build_figure(FigureSpec(str(empty), "heatmap", "unused.png"))
    assert not (tmp_path / "out.png").exists()


def test_unknown_kind_rejected():
    with pytest.raises(SchemaError):
        FigureSpec(str(SMC_CSV), "scatter", "unused.png")


def test_cli_renders_all_three_kinds(tmp_path):
    for kind, path in (("heatmap", SMC_CSV), ("bucket_lines", BUCKETS_CSV),
                       ("complement_bars", COMPLEMENT_CSV)):
        out = tmp_path / f"{kind}.png"
        rc = main(["--in", str(path), "--kind", kind, "--out", str(out),
                   "--title", kind])
        assert rc == 0
        assert out.stat().st_size > 0


def test_cli_schema_mismatch_nonzero_exit(tmp_path, capsys):
    rc = main(["--in", str(BUCKETS_CSV), "--kind", "heatmap",
               "--out", str(tmp_path / "x.png")])
    assert rc == 1
    assert "method" in capsys.readouterr().err
    assert not (tmp_path / "x.png").exists()


def test_cli_missing_file_exit_2(tmp_path, capsys):
    rc = main(["--in", str(tmp_path / "none.csv"), "--kind", "heatmap",
               "--out", str(tmp_path / "x.png")])
    assert rc == 2
    assert "no such file" in capsys.readouterr().err


def test_rendering_deterministic(tmp_path):
    a = tmp_path / "a.png"
    b = tmp_path / "b.png"
    render(FigureSpec(str(SMC_CSV), "heatmap", str(a), "SMC"))
    render(FigureSpec(str(SMC_CSV), "heatmap", str(b), "SMC"))
    assert a.read_bytes() == b.read_bytes()
