import csv
import json
import math
import subprocess
import sys

import numpy as np
import pytest

from oamphase.cli import main
from oamphase.io import read_pgm
from oamphase.modes import BeamFrame, hg_position
from oamphase.phasespace import overlap_closed


def run(*args, cwd=None):
    return subprocess.run([sys.executable, "-m", "oamphase", *args], capture_output=True, cwd=cwd, text=True)


def test_help_lists_commands():
    out = run("--help")
    assert out.returncode == 0
    for name in ("render", "rotate", "wigner", "overlap", "angmom", "verify"):
        assert name in out.stdout


def test_render_pole_is_ring_with_null(tmp_path):
    out = run("render", "--l", "2", "--grid", "65", "--out", str(tmp_path))
    assert out.returncode == 0, out.stderr
    img, _ = read_pgm(tmp_path / "intensity.pgm")
    assert img[32, 32] == 0
    assert img[32, 32 + 8] == pytest.approx(img[32 - 8, 32], abs=1)
    cfg = json.loads((tmp_path / "config.json").read_text())
    assert cfg["l"] == 2 and cfg["grid_resolution"] == 65


def test_render_equator_is_hg20(tmp_path):
    out = run("render", "--l", "2", "--theta", "90", "--deg", "--grid", "64", "--out", str(tmp_path))
    assert out.returncode == 0, out.stderr
    img, _ = read_pgm(tmp_path / "intensity.pgm")
    extent = json.loads((tmp_path / "intensity.json").read_text())["extent"]
    axis = np.linspace(-extent, extent, 64)
    X, Y = np.meshgrid(axis, axis[::-1])
    ref = np.abs(hg_position(2, 0, BeamFrame(), X, Y)) ** 2
    ref = np.rint(ref / ref.max() * 65535)
    assert np.abs(img - ref).max() <= 1


def test_render_at_two_rayleigh_ranges_is_widened(tmp_path):
    z0 = BeamFrame().z0
    a, b = tmp_path / "a", tmp_path / "b"
    assert run("render", "--l", "1", "--grid", "64", "--extent", "3", "--out", str(a)).returncode == 0
    assert (
        run("render", "--l", "1", "--grid", "64", "--extent", str(3 * math.sqrt(5)), "--z", str(2 * z0), "--out", str(b)).returncode
        == 0
    )
    ia, _ = read_pgm(a / "intensity.pgm")
    ib, _ = read_pgm(b / "intensity.pgm")
    assert np.abs(ia - ib).max() <= 1


def test_render_from_config(tmp_path):
    cfg = tmp_path / "run.json"
    cfg.write_text(json.dumps({"l": 1, "p": 1, "theta": 0.5, "grid_resolution": 32, "output_dir": str(tmp_path / "o")}))
    out = run("render", "--config", str(cfg))
    assert out.returncode == 0, out.stderr
    assert (tmp_path / "o" / "phase.pgm").exists()


def test_rotate_prints_order_one_coefficients():
    out = run("rotate", "--l", "1", "--theta", "1.234", "--phi", "0.567")
    doc = json.loads(out.stdout)
    c = [complex(r["re"], r["im"]) for r in doc["coeffs"]]
    assert c[0] == pytest.approx(math.cos(0.617), abs=1e-12)
    assert c[1] == pytest.approx(np.exp(0.567j) * math.sin(0.617), abs=1e-12)


def test_wigner_point_and_check():
    out = run("wigner", "--l", "0", "--check")
    doc = json.loads(out.stdout)
    assert doc["closed"] == pytest.approx(100**2 / math.pi**2)
    assert abs(doc["difference"]) < 1e-6 * doc["closed"]


def test_wigner_slice_rows(tmp_path):
    out = run("wigner", "--l", "1", "--slice", "x-px", "--size", "64", "--csv", str(tmp_path / "w.csv"), "--pgm", str(tmp_path / "w.pgm"))
    assert out.returncode == 0, out.stderr
    rows = (tmp_path / "w.csv").read_text().splitlines()
    assert rows[0] == "x,y,px,py,W"
    assert len(rows) - 1 == 4096
    img, _ = read_pgm(tmp_path / "w.pgm")
    assert img.shape == (64, 64)


def test_wigner_bad_plane():
    assert run("wigner", "--slice", "x-z").returncode == 2


def test_overlap_identical_and_cross_order():
    doc = json.loads(run("overlap", "--l", "2", "--theta1", "1", "--theta2", "1", "--check").stdout)
    assert doc["overlap"] == pytest.approx(1.0)
    assert abs(doc["difference"]) < 1e-4
    doc = json.loads(run("overlap", "--l", "2", "--l2", "1", "--theta2", "0.3").stdout)
    assert doc["overlap"] == 0.0


def test_overlap_sweep_zero_on_tau_two_thirds(tmp_path):
    path = tmp_path / "s.csv"
    out = run("overlap", "--l", "1", "--p", "1", "--sweep", "--n-theta", "181", "--n-phi", "4", "--out", str(path))
    assert out.returncode == 0, out.stderr
    with path.open() as fh:
        rows = [{k: float(v) for k, v in r.items()} for r in csv.DictReader(fh)]
    assert len(rows) == 181 * 4
    for r in rows:
        assert r["overlap"] == pytest.approx(overlap_closed(1, 1, r["tau"]), abs=1e-12)
    # along phi2 = 0, away from the antipode (tau = 0), the minimum sits where tau crosses 2/3
    line = [r for r in rows if r["phi2"] == 0.0 and r["tau"] > 0.1]
    best = min(line, key=lambda r: r["overlap"])
    assert best["overlap"] < 1e-3
    assert best["tau"] == pytest.approx(2 / 3, abs=0.02)


def test_overlap_sweep_to_stdout():
    out = run("overlap", "--sweep", "--n-theta", "2", "--n-phi", "3")
    lines = out.stdout.splitlines()
    assert lines[0] == "theta2,phi2,tau,overlap" and len(lines) == 7


def test_angmom_state_and_amplitudes(tmp_path):
    doc = json.loads(run("angmom", "--l", "3", "--theta", "60", "--deg", "--check").stdout)
    assert doc["Lz_hbar"] == pytest.approx(1.5, abs=1e-12)
    assert doc["L_phase_space"] == pytest.approx(doc["L"], abs=1e-4)
    assert doc["dLx_dLy"] + 1e-10 >= doc["uncertainty_bound"]
    amps = tmp_path / "a.json"
    amps.write_text(json.dumps({"kind": "classical", "dk0": 1.0, "entries": [{"sigma": 1, "l": 2, "p": 0, "k0": 4.0, "re": 1.0, "im": 0.0}]}))
    doc = json.loads(run("angmom", "--amplitudes", str(amps)).stdout)
    assert doc == {"kind": "classical", "orbital_z": 2.0, "spin_z": 1.0, "energy": 4.0, "oam_per_energy": 0.5}


@pytest.mark.parametrize("suite", ["symplectic", "angmom"])
def test_verify_passes(suite):
    out = run("verify", "--suite", suite, "--seed", "3")
    assert out.returncode == 0, out.stdout
    doc = json.loads(out.stdout)
    assert set(doc) == {"suite", "checks", "max_residual", "pass"}
    assert doc["pass"] is True


def test_verify_wigner_seed_7():
    doc = json.loads(run("verify", "--suite", "wigner", "--seed", "7").stdout)
    rel = next(c for c in doc["checks"] if c["name"] == "wigner.closed_vs_oracle_rel")
    assert rel["residual"] < 1e-6


def test_verify_failure_exit_code():
    out = run("verify", "--suite", "symplectic", "--tol", "1e-300")
    assert out.returncode == 1
    assert json.loads(out.stdout)["pass"] is False


@pytest.mark.parametrize(
    "args",
    [
        ("rotate", "--theta", "4"),
        ("rotate", "--p", "-1"),
        ("render", "--k0", "-1"),
        ("render", "--grid", "8", "--out", "x"),
        ("verify", "--tol", "0"),
        ("angmom", "--amplitudes", "/nonexistent/a.json"),
        ("render", "--config", "/nonexistent/c.json"),
    ],
)
def test_config_errors_exit_2(tmp_path, args):
    assert run(*args, cwd=tmp_path).returncode == 2


def test_argparse_errors_exit_2():
    assert run("rotate", "--l", "x").returncode == 2
    assert run("launch").returncode == 2


def test_io_error_exit_3(tmp_path):
    blocker = tmp_path / "f"
    blocker.write_text("")
    out = run("render", "--grid", "32", "--out", str(blocker / "sub"))
    assert out.returncode == 3
    assert "I/O error" in out.stderr


def test_in_process_main(capsys):
    assert main(["rotate", "--l", "0"]) == 0
    assert json.loads(capsys.readouterr().out)["coeffs"][0]["re"] == 1.0


def test_render_and_verify_are_byte_identical(tmp_path):
    a, b = tmp_path / "a", tmp_path / "b"
    a.mkdir()
    b.mkdir()
    flags = ("render", "--l", "1", "--p", "1", "--theta", "0.7", "--phi", "2", "--grid", "48", "--out", "out")
    ra, rb = run(*flags, cwd=a), run(*flags, cwd=b)
    assert ra.returncode == rb.returncode == 0
    assert ra.stdout == rb.stdout
    for name in ("intensity.pgm", "intensity.json", "phase.pgm", "phase.json", "config.json"):
        assert (a / "out" / name).read_bytes() == (b / "out" / name).read_bytes()
    va = run("verify", "--suite", "overlap", "--seed", "11")
    vb = run("verify", "--suite", "overlap", "--seed", "11")
    assert va.stdout == vb.stdout
