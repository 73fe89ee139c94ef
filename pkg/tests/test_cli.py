import io
import json

import numpy as np
import pytest

from nls8 import cli
from nls8.model import Coefficients, make_dataset
from nls8.soliton import q_nsoliton


def run(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = cli.main(list(argv), stdout=out, stderr=err)
    return code, out.getvalue(), err.getvalue()


def test_preset_constants():
    f1 = cli.PRESETS["figure1"]
    assert f1["coefficients"] == {f"A{n}": 1.0 for n in range(2, 9)}
    assert f1["spectral"] == [{"re": 0.3, "im": 0.2, "alpha": [1.0, 0.0], "beta": [1.0, 0.0]}]
    f4 = cli.PRESETS["figure4"]
    assert [(s["re"], s["im"]) for s in f4["spectral"]] == [(0.3, 0.1), (0.0, 0.2)]
    assert all(s["alpha"] == [1.0, 0.0] for s in f4["spectral"])
    assert cli.PRESETS["case-ii"]["coefficients"]["A2"] == 0.5


def test_params_figure1():
    code, out, _ = run("params", "--preset", "figure1")
    assert code == 0
    values = dict(line.rsplit(None, 1) for line in out.strip().splitlines())
    assert float(values["amplitude H"]) == pytest.approx(0.4)


def test_params_case_i_and_zero():
    code, out, _ = run("params", "--preset", "case-i")
    assert "velocity V    -1.2" in out
    assert code == 0


def test_params_zero_coefficients(tmp_path):
    cfg = tmp_path / "c.json"
    cfg.write_text(json.dumps({"spectral": [{"re": 0.3, "im": 0.2}]}))
    code, out, _ = run("params", "--config", str(cfg))
    assert code == 0 and "velocity V    0\n" in out


def test_params_rejects_two_solitons():
    assert run("params", "--preset", "figure4")[0] == 2


def test_verify_exit_codes(tmp_path):
    code, out, _ = run("verify", "--preset", "figure1", "--out", str(tmp_path))
    assert code == 0 and "overall: PASS" in out
    doc = json.loads((tmp_path / "report.json").read_text())
    assert doc["overall"] is True
    assert run("verify", "--preset", "figure1", "--tol", "pde=1e-30")[0] == 1
    assert run("verify", "--config", str(tmp_path / "missing.json"))[0] == 2
    assert run("verify", "--preset", "figure1", "--tol", "pde")[0] == 2
    assert run("bogus")[0] == 2


def test_config_errors_carry_context(tmp_path):
    cfg = tmp_path / "bad.json"
    cfg.write_text('{\n  "spectral": [\n    {"re": 0.3 "im": 0.2}\n  ]\n}\n')
    code, _, err = run("verify", "--config", str(cfg))
    assert code == 2 and "bad.json:3:" in err
    cfg.write_text(json.dumps({"spectral": [{"re": 0.3, "im": 0.2, "alpha": "x"}]}))
    code, _, err = run("verify", "--config", str(cfg))
    assert code == 2 and "spectral[0].alpha" in err
    cfg.write_text(json.dumps({"spectral": [{"re": 0.3, "im": -0.2}]}))
    assert run("verify", "--config", str(cfg))[0] == 2


def test_sample_figure1(tmp_path):
    code, _, _ = run("sample", "--preset", "figure1", "--grid", "-10,10,201,0,1,3",
                     "--out", str(tmp_path))
    assert code == 0
    lines = (tmp_path / "q.csv").read_text().splitlines()
    assert lines[0] == "x,t,q_re,q_im,q_abs"
    assert len(lines) == 1 + 201 * 3
    # row-major in t then x
    assert lines[1].startswith("-10,0,") and lines[2].startswith("-9.9") and lines[202].startswith("-10,0.5,")
    x, t, q = cli.read_field_csv(str(tmp_path / "q.csv"))
    assert np.max(np.abs(q)) == pytest.approx(0.4, abs=1e-12)
    ref = q_nsoliton(make_dataset((0.3 + 0.2j, 1, 1)), Coefficients.all_ones(), x[:, None], t[None, :])
    assert np.array_equal(q, ref)          # 17 significant digits round-trip exactly
    slices = sorted(p.name for p in tmp_path.glob("slice_*.csv"))
    assert slices == ["slice_t0.csv", "slice_t1.csv"]
    meta = json.loads((tmp_path / "meta.json").read_text())
    assert meta["grid_source"] == "user"


def test_sample_amplitude_is_time_invariant(tmp_path):
    run("sample", "--preset", "figure1", "--grid", "-40,40,8001,0,1,2", "--out", str(tmp_path))
    x, t, q = cli.read_field_csv(str(tmp_path / "q.csv"))
    assert np.max(np.abs(q[:, 0])) == pytest.approx(np.max(np.abs(q[:, 1])), abs=1e-6)


def test_sample_default_grid_metadata(tmp_path):
    code, _, _ = run("sample", "--preset", "figure4", "--out", str(tmp_path))
    assert code == 0
    meta = json.loads((tmp_path / "meta.json").read_text())
    assert meta["grid"]["x0"] == -40 and meta["grid"]["t1"] == 5
    assert meta["grid_source"] == "default extents"


def test_sample_degenerate_points_logged(tmp_path, monkeypatch):
    import nls8.soliton as sol
    monkeypatch.setattr(sol, "CONDITION_LIMIT", 0.5)
    code, out, _ = run("sample", "--preset", "figure1", "--grid", "-1,1,3,0,0,1",
                       "--out", str(tmp_path))
    assert code == 1
    log = (tmp_path / "q.errors.log").read_text().splitlines()
    assert log[0] == "x,t,message" and len(log) == 4
    _, _, q = cli.read_field_csv(str(tmp_path / "q.csv"))
    assert np.all(np.isnan(q.real))


def test_atomic_write_leaves_no_temp(tmp_path):
    cli.atomic_write(str(tmp_path / "a.txt"), "x")
    assert [p.name for p in tmp_path.iterdir()] == ["a.txt"]


def test_laxcheck_scatter_reduce(tmp_path):
    code, out, _ = run("laxcheck", "--preset", "figure1", "--out", str(tmp_path))
    assert code == 0 and "printed" in out
    doc = json.loads((tmp_path / "laxcheck.json").read_text())
    assert doc["variants"]["reconciled"]["pass"] and not doc["variants"]["printed"]["pass"]
    assert run("scatter", "--preset", "figure1")[0] == 0
    assert run("reduce", "--preset", "case-ii")[0] == 0
    assert run("reduce", "--case", "iv")[0] == 0
    assert run("reduce", "--preset", "figure1")[0] == 2


def test_grid_parsing():
    g = cli.parse_grid("-1,1,5,0,0,1")
    assert (g.nx, g.nt) == (5, 1)
    with pytest.raises(cli.ConfigError):
        cli.parse_grid("1,2,3")
    with pytest.raises(cli.ConfigError):
        cli.parse_grid({"x0": 0})
