"""CLI surface: subcommands, exit codes, determinism, formats, gap handling."""

import json

import numpy as np
import pytest

from wirescat.cli import main


def read_data_lines(path):
    with open(path) as fh:
        lines = [ln.rstrip("\n") for ln in fh]
    header = [ln for ln in lines if ln.startswith("#")]
    body = [ln for ln in lines if not ln.startswith("#")]
    return header, body[0].split(","), [ln.split(",") for ln in body[1:]]


def test_sweep_k_basic(tmp_path):
    out = tmp_path / "sweep.csv"
    rc = main(["sweep-k", "--y0", "0.3", "--a", "0.1", "--kd-min", "4.0",
               "--kd-max", "9.0", "--points", "40", "--out", str(out)])
    assert rc == 0
    header, cols, rows = read_data_lines(out)
    assert any("generator" in h for h in header)
    assert cols[0] == "kd" and "sigma" in cols and "gap" in cols
    assert len(rows) == 40
    i_sig, i_cond, i_n, i_gap = (cols.index(c) for c in ("sigma", "conductance", "n_open", "gap"))
    for row in rows:
        assert row[i_gap] == "0"
        sigma, cond, n = float(row[i_sig]), float(row[i_cond]), float(row[i_n])
        assert abs(cond - (n - sigma)) <= 1e-12
        assert 0.0 <= sigma <= 1.0


def test_sweep_k_deterministic_bytes(tmp_path):
    a = tmp_path / "a.csv"
    b = tmp_path / "b.csv"
    args = ["sweep-k", "--y0", "0.32", "--a", "0.1", "--kd-min", "2.0",
            "--kd-max", "20.0", "--points", "200"]
    assert main(args + ["--out", str(a)]) == 0
    assert main(args + ["--out", str(b)]) == 0
    assert a.read_bytes() == b.read_bytes()


def test_sweep_k_gap_rows(tmp_path):
    out = tmp_path / "gap.csv"
    # grid engineered to hit kd = 2 pi exactly
    rc = main(["sweep-k", "--y0", "0.05", "--a", "0.1",
               "--kd-min", str(np.pi), "--kd-max", str(3 * np.pi),
               "--points", "3", "--out", str(out)])
    assert rc == 0
    header, cols, rows = read_data_lines(out)
    gaps = [row for row in rows if row[cols.index("gap")] == "1"]
    assert len(gaps) == 3  # pi, 2pi, 3pi all guarded
    mid = gaps[1]
    assert mid[cols.index("sigma")] == "nan"
    assert float(mid[cols.index("gr_asym_below_re")]) < 0.0
    assert float(mid[cols.index("gr_asym_above_im")]) < 0.0
    assert float(mid[cols.index("sigma_limit_above")]) == 1.0
    assert float(mid[cols.index("sigma_asym_below")]) >= 0.0


def test_sweep_k_json_mirror(tmp_path):
    csv_p = tmp_path / "s.csv"
    json_p = tmp_path / "s.json"
    args = ["sweep-k", "--y0", "0.3", "--a", "0.1", "--kd-min", "4.0",
            "--kd-max", "9.0", "--points", "10"]
    assert main(args + ["--out", str(csv_p)]) == 0
    assert main(args + ["--out", str(json_p), "--format", "json"]) == 0
    doc = json.loads(json_p.read_text())
    _, cols, rows = read_data_lines(csv_p)
    assert doc["columns"] == cols
    assert len(doc["rows"]) == len(rows)
    assert doc["rows"][0][0] == pytest.approx(float(rows[0][0]))


def test_sweep_geom(tmp_path):
    out = tmp_path / "geom.csv"
    rc = main(["sweep-geom", "--kd", str(12.5 * np.pi), "--a-points", "11",
               "--y0-points", "5", "--out", str(out)])
    assert rc == 0
    _, cols, rows = read_data_lines(out)
    assert cols == ["a", "y0", "sigma", "sigma_free", "gap"]
    assert len(rows) == 55
    i_a, i_sig = cols.index("a"), cols.index("sigma")
    zero_a = [row for row in rows if float(row[i_a]) == 0.0]
    assert zero_a and all(float(r[i_sig]) == 0.0 for r in zero_a)


def test_field_map_and_svg(tmp_path):
    out = tmp_path / "field.csv"
    svg = tmp_path / "field.svg"
    rc = main(["field-map", "--kind", "px", "--kd", "40.0", "--y0", "0.6",
               "--a", "0.1", "--nx", "21", "--ny", "9",
               "--x-min", "-0.5", "--x-max", "0.5",
               "--out", str(out), "--svg", str(svg)])
    assert rc == 0
    _, cols, rows = read_data_lines(out)
    assert cols == ["x", "y", "value_re", "value_im"]
    assert len(rows) == 21 * 9
    # nodal line along x = x0
    on_axis = [float(r[2]) for r in rows if float(r[0]) == 0.0]
    assert on_axis and max(abs(v) for v in on_axis) <= 1e-10
    assert svg.read_text().startswith("<svg")


def test_field_map_outside_strip_exit_2(tmp_path):
    rc = main(["field-map", "--kind", "s", "--y0", "0.6", "--y-min", "-0.2",
               "--out", str(tmp_path / "x.csv")])
    assert rc == 2


def test_greens_bench(tmp_path):
    out = tmp_path / "bench.csv"
    rc = main(["greens-bench", "--kd", str(2.5 * np.pi), "--x", "0.37",
               "--y", "0.61", "--terms", "10,100,1000",
               "--representations", "spectral,kummer", "--out", str(out)])
    assert rc == 0
    _, cols, rows = read_data_lines(out)
    assert cols == ["representation", "terms", "error"]
    assert len(rows) == 6


def test_greens_bench_coincident_image_exit_2(tmp_path):
    rc = main(["greens-bench", "--x", "0", "--y", "0.3", "--x0", "0", "--y0", "0.3",
               "--representations", "image", "--terms", "10",
               "--out", str(tmp_path / "b.csv")])
    assert rc == 2


def test_validate_fast_and_perturbation(tmp_path, capsys):
    rc = main(["validate", "--fast", "--groups", "free_optical,hard_disk"])
    assert rc == 0
    capsys.readouterr()
    rc = main(["validate", "--fast", "--groups", "free_optical",
               "--perturb-s", "1e-6"])
    assert rc == 1
    outtext = capsys.readouterr().out
    assert "FAIL" in outtext


def test_validate_report_file(tmp_path, capsys):
    rep = tmp_path / "report.json"
    rc = main(["validate", "--fast", "--groups", "specfun", "--out", str(rep)])
    capsys.readouterr()
    assert rc == 0
    doc = json.loads(rep.read_text())
    assert doc["columns"] == ["check", "residual", "threshold", "passed"]
    assert all(row[3] == 1 for row in doc["rows"])


def test_config_file_with_flag_override(tmp_path):
    cfg = tmp_path / "run.cfg"
    cfg.write_text("y0 = 0.3\na = 0.1\nkd-min = 4.0\nkd-max = 9.0\npoints = 7\n")
    out1 = tmp_path / "c1.csv"
    rc = main(["sweep-k", "--config", str(cfg), "--out", str(out1)])
    assert rc == 0
    _, _, rows = read_data_lines(out1)
    assert len(rows) == 7
    out2 = tmp_path / "c2.csv"
    rc = main(["sweep-k", "--config", str(cfg), "--points", "5", "--out", str(out2)])
    assert rc == 0
    _, _, rows = read_data_lines(out2)
    assert len(rows) == 5  # explicit flag wins


def test_sweep_k_resonance_figure_structure(tmp_path):
    """Centered impurity: sigma continuous across kd = 2pi, jumps at kd = 3pi;
    the empty-wire column reproduces the N(kd) staircase."""
    out = tmp_path / "fig.csv"
    rc = main(["sweep-k", "--y0", "0.5", "--a", "0.1",
               "--kd-min", str(0.5 * np.pi), "--kd-max", str(3.5 * np.pi),
               "--points", "600", "--out", str(out)])
    assert rc == 0
    _, cols, rows = read_data_lines(out)
    kd = np.array([float(r[cols.index("kd")]) for r in rows])
    sig = np.array([float(r[cols.index("sigma")]) for r in rows])
    n_col = np.array([float(r[cols.index("conductance_empty")]) for r in rows])
    ok = ~np.isnan(sig)
    jumps = np.abs(np.diff(sig[ok]))
    mid = 0.5 * (kd[ok][1:] + kd[ok][:-1])
    near2 = np.abs(mid - 2 * np.pi) < 0.1
    near3 = np.abs(mid - 3 * np.pi) < 0.1
    assert np.max(jumps[near2]) < 0.1          # even mode nodal: no resonance
    assert np.max(jumps[near3]) > 0.5          # odd mode opening: jump
    assert np.array_equal(np.unique(n_col[~np.isnan(n_col)]), [0.0, 1.0, 2.0, 3.0])


def test_sweep_k_workers_deterministic(tmp_path):
    base = ["sweep-k", "--y0", "0.3", "--a", "0.1", "--kd-min", "4.0",
            "--kd-max", "9.0", "--points", "60"]
    a = tmp_path / "w1.csv"
    b = tmp_path / "w4.csv"
    assert main(base + ["--out", str(a)]) == 0
    assert main(base + ["--workers", "4", "--out", str(b)]) == 0
    assert a.read_bytes() == b.read_bytes()


def test_usage_errors_exit_2(tmp_path):
    assert main(["sweep-k", "--a", "0.1", "--out", str(tmp_path / "x.csv")]) == 2  # no y0
    assert main(["sweep-k", "--y0", "0.3", "--points", "1",
                 "--out", str(tmp_path / "x.csv")]) == 2                           # points < 2
    assert main(["sweep-k", "--y0", "1.4", "--out", str(tmp_path / "x.csv")]) == 2  # bad y0
