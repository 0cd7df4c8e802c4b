"""CLI behavior: subcommands, config handling, exit codes, caching."""

import json

import pytest

from hardylab import cli


def run(argv, capsys):
    code = cli.main(argv)
    out = capsys.readouterr()
    return code, out.out, out.err


def test_theta_single_point_csv(capsys):
    code, out, _ = run(["theta", "--t", "100"], capsys)
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0] == "t,theta,theta_prime"
    t, th, thp = (float(x) for x in lines[1].split(","))
    assert t == 100.0
    assert th == pytest.approx(87.972165231787219625, abs=1e-9)


def test_theta_range_json(capsys):
    code, out, _ = run(
        ["theta", "--range", "50:51", "--grid-step", "0.5", "--format", "json"],
        capsys,
    )
    assert code == 0
    d = json.loads(out)
    assert d["schema"] == "hardylab.theta.v1"
    assert [r["t"] for r in d["rows"]] == [50.0, 50.5, 51.0]


def test_z_modes_agree_near_oracle(capsys):
    vals = {}
    for mode in ("sigmoid", "rs", "oracle"):
        code, out, _ = run(
            ["z", "--t", "100", "--alpha", "0.5", "--mode", mode], capsys
        )
        assert code == 0
        vals[mode] = float(out.strip().splitlines()[1].split(",")[1])
    assert vals["oracle"] == pytest.approx(2.692697056664463475, abs=1e-9)
    assert vals["rs"] == pytest.approx(vals["oracle"], abs=0.02)
    assert vals["sigmoid"] == pytest.approx(vals["oracle"], abs=0.02)


def test_z_bad_mode_is_usage_error(capsys):
    code, _, err = run(["z", "--t", "100", "--mode", "nope"], capsys)
    assert code == 2
    assert "mode" in err


def test_domain_error_exit_code(capsys):
    code, _, err = run(["theta", "--t", "-3"], capsys)
    assert code == 3
    assert "error:" in err


def test_config_file_round_trip(tmp_path, capsys):
    cfg = tmp_path / "run.cfg"
    cfg.write_text("format=json\nstep=0.5\n")
    code, out, _ = run(
        ["theta", "--range", "50:51", "--grid-step", "0.5", "--config", str(cfg)],
        capsys,
    )
    assert code == 0
    assert json.loads(out)["schema"] == "hardylab.theta.v1"


def test_config_unknown_key_rejected(tmp_path, capsys):
    cfg = tmp_path / "run.cfg"
    cfg.write_text("no_such_key=1\n")
    code, _, err = run(["theta", "--t", "10", "--config", str(cfg)], capsys)
    assert code == 2
    assert "unknown key" in err


def test_gram_csv(capsys):
    code, out, _ = run(["gram", "--kind", "1", "--from", "1", "--count", "2"], capsys)
    assert code == 0
    rows = [line.split(",") for line in out.strip().splitlines()[1:]]
    assert [r[1] for r in rows] == ["1", "2"]
    assert float(rows[0][2]) == pytest.approx(17.8455995404, abs=1e-6)


def test_zeros_cache_round_trip(tmp_path, capsys):
    argv = [
        "zeros", "--function", "cos", "--range", "30:40",
        "--format", "json", "--cache-dir", str(tmp_path),
    ]
    code, out1, _ = run(argv, capsys)
    assert code == 0
    cached = list(tmp_path.glob("*.json"))
    assert len(cached) == 1
    code, out2, _ = run(argv, capsys)
    assert code == 0
    assert json.loads(out1)["zeros"] == json.loads(out2)["zeros"]


def test_zeros_corrupt_cache_exit_code(tmp_path, capsys):
    argv = [
        "zeros", "--function", "cos", "--range", "30:40",
        "--format", "json", "--cache-dir", str(tmp_path),
    ]
    code, _, _ = run(argv, capsys)
    assert code == 0
    entry = next(tmp_path.glob("*.json"))
    entry.write_text("{broken")
    code, _, err = run(argv, capsys)
    assert code == 4
    assert "cache" in err


def test_pairs_from_files(tmp_path, capsys):
    def zl(label, zeros):
        return {
            "schema": "hardylab.zerolist.v1", "label": label,
            "interval": [zeros[0] - 1, zeros[-1] + 1], "zeros": zeros,
            "tol": 1e-10, "step": 0.01, "tangencies": [],
        }

    fa = tmp_path / "za.json"
    f0 = tmp_path / "z0.json"
    fa.write_text(json.dumps(zl("za", [10.1, 19.9, 30.1])))
    f0.write_text(json.dumps(zl("z0", [10.0, 20.0, 30.0])))
    code, out, _ = run(
        ["pairs", "--alpha-zeros", str(fa), "--zero-zeros", str(f0)], capsys
    )
    assert code == 0
    classes = [line.split(",")[5] for line in out.strip().splitlines()[1:]]
    assert classes == ["lehmer", "gordon"]


def test_deltas_csv(capsys):
    code, out, _ = run(
        ["deltas", "--m", "4", "--r", "1", "--mode", "exact"], capsys
    )
    assert code == 0
    rows = out.strip().splitlines()[1:]
    deltas = [float(r.split(",")[1]) for r in rows]
    assert deltas == pytest.approx([1.0, 0.75, 0.5, 0.25])


def test_reconstruct_residual_small(capsys):
    code, out, _ = run(
        ["reconstruct", "--alpha", "0.5", "--t", "80", "--format", "json"], capsys
    )
    assert code == 0
    d = json.loads(out)
    assert d["residual"] <= 1e-10


def test_sequence_rows(capsys):
    code, out, _ = run(
        ["sequence", "--alpha", "0.5", "--t", "80", "--kmax", "3"], capsys
    )
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0] == "j,q,p,z"
    assert len(lines) == 5  # header + j = 0..3


def test_out_file_and_sidecar(tmp_path, capsys):
    out_file = tmp_path / "theta.csv"
    code, _, _ = run(["theta", "--t", "50", "--out", str(out_file)], capsys)
    assert code == 0
    assert out_file.exists()
    meta = json.loads((tmp_path / "theta.csv.meta.json").read_text())
    assert meta["command"] == "theta"


def test_reproduce_coefficient_figures(tmp_path, capsys):
    for fig, trend in ((14, "grows"), (15, "decays")):
        code, _, _ = run(
            ["reproduce", "--figure", str(fig), "--out-dir", str(tmp_path)], capsys
        )
        assert code == 0
        rows = (tmp_path / f"figure{fig}.csv").read_text().strip().splitlines()[1:]
        first = float(rows[0].split(",")[1])
        last = float(rows[-1].split(",")[1])
        if trend == "grows":
            assert last > first
        else:
            assert last < first


def test_reproduce_unknown_figure(capsys):
    code, _, err = run(["reproduce", "--figure", "99"], capsys)
    assert code == 2
    assert "figure" in err


def test_version_flag(capsys):
    with pytest.raises(SystemExit) as exc:
        cli.main(["--version"])
    assert exc.value.code == 0
