"""Command-line interface.

Exit codes: 0 ok, 1 verification failure, 2 configuration error, 3 I/O error.
"""
from __future__ import annotations

import argparse
import math
import sys
from pathlib import Path

import numpy as np

from . import phasespace as ps
from . import verify as _verify
from .angmom import AmplitudeSet, orbital_z, paraxial_energy, spin_z
from .errors import ConfigurationError
from .io import RunConfig, canonical_json, write_csv, write_field_pgm, write_scalar_pgm
from .modes import BeamFrame, GridSpec, ModeIndex, default_grid
from .poincare import build_generators, rotate, synthesize_field

EXIT_OK, EXIT_VERIFY, EXIT_CONFIG, EXIT_IO = 0, 1, 2, 3

SLICE_PLANES = {"x-px": (0, 2), "y-py": (1, 3), "x-y": (0, 1), "px-py": (2, 3), "x-py": (0, 3), "y-px": (1, 2)}


def _angle(args, value):
    return math.radians(value) if args.deg else value


def _frame(args):
    try:
        return BeamFrame(args.w0, args.k0)
    except ValueError as exc:
        raise ConfigurationError(str(exc)) from exc


def _state(args, l, p, theta, phi):
    try:
        return rotate(ModeIndex(l, p), _angle(args, theta), _angle(args, phi))
    except ValueError as exc:
        raise ConfigurationError(str(exc)) from exc


def _emit(obj):
    sys.stdout.write(canonical_json(obj))


def cmd_render(args):
    if args.config:
        try:
            cfg = RunConfig.from_json(Path(args.config).read_text())
        except OSError as exc:
            raise ConfigurationError(f"cannot read config {args.config}: {exc}") from exc
    else:
        cfg = RunConfig(
            w0=args.w0,
            k0=args.k0,
            l=args.l,
            p=args.p,
            theta=_angle(args, args.theta),
            phi=_angle(args, args.phi),
            z=args.z,
            grid_extent=args.extent or 0.0,
            grid_resolution=args.grid,
            output_dir=args.out,
        )
    frame = BeamFrame(cfg.w0, cfg.k0)
    state = rotate(ModeIndex(cfg.l, cfg.p), cfg.theta, cfg.phi)
    grid = GridSpec(cfg.grid_extent, cfg.grid_resolution) if cfg.grid_extent > 0 else default_grid(
        frame, state.order, cfg.grid_resolution
    )
    out = Path(cfg.output_dir)
    field_ = synthesize_field(state, frame, grid, cfg.z)
    write_field_pgm(field_, "intensity", out / "intensity.pgm")
    write_field_pgm(field_, "phase", out / "phase.pgm")
    cfg.write(out / "config.json")
    _emit({"intensity": str(out / "intensity.pgm"), "phase": str(out / "phase.pgm"), "order": state.order})
    return EXIT_OK


def cmd_rotate(args):
    state = _state(args, args.l, args.p, args.theta, args.phi)
    sys.stdout.write(state.to_json())
    return EXIT_OK


def cmd_wigner(args):
    frame = _frame(args)
    state = _state(args, args.l, args.p, args.theta, args.phi)
    if args.slice is None:
        zeta = ps.PhaseSpacePoint(args.x, args.y, args.px, args.py)
        out = {"zeta": list(zeta), "closed": float(ps.wigner_closed(state, zeta, frame))}
        if args.check:
            val, err = ps.wigner_oracle(state, zeta, frame)
            out.update(oracle=val, oracle_error=err, difference=out["closed"] - val)
        _emit(out)
        return EXIT_OK
    if args.slice not in SLICE_PLANES:
        raise ConfigurationError(f"--slice must be one of {sorted(SLICE_PLANES)}")
    i, j = SLICE_PLANES[args.slice]
    n = args.size
    scales = [frame.w0 / math.sqrt(2.0)] * 2 + [frame.w0 / (math.sqrt(2.0) * frame.z0)] * 2
    base = [args.x, args.y, args.px, args.py]
    a = np.linspace(-args.extent, args.extent, n) * scales[i]
    b = np.linspace(-args.extent, args.extent, n) * scales[j]
    A, B = np.meshgrid(a, b, indexing="xy")
    comps = [np.full(A.shape, v, dtype=float) for v in base]
    comps[i], comps[j] = A, B
    W = ps.wigner_closed(state, comps, frame)
    names = ["x", "y", "px", "py"]
    if args.csv:
        cols = {name: comps[k].ravel() for k, name in enumerate(names)}
        cols["W"] = W.ravel()
        write_csv(cols, args.csv)
    if args.pgm:
        meta = {
            "plane": args.slice,
            "fixed": {names[k]: base[k] for k in range(4) if k not in (i, j)},
            "horizontal": [names[i], float(a[0]), float(a[-1])],
            "vertical": [names[j], float(b[0]), float(b[-1])],
            "size": n,
        }
        write_scalar_pgm(W, args.pgm, meta)
    _emit({"plane": args.slice, "points": n * n, "min": float(W.min()), "max": float(W.max())})
    return EXIT_OK


def cmd_overlap(args):
    frame = _frame(args)
    l2 = args.l if args.l2 is None else args.l2
    p2 = args.p if args.p2 is None else args.p2
    a = _state(args, args.l, args.p, args.theta1, args.phi1)
    if args.sweep:
        thetas = np.linspace(0.0, math.pi, args.n_theta)
        phis = np.linspace(0.0, 2 * math.pi, args.n_phi, endpoint=False)
        rows = {"theta2": [], "phi2": [], "tau": [], "overlap": []}
        for t in thetas:
            for f in phis:
                b = rotate(ModeIndex(l2, p2), float(t), float(f))
                rows["theta2"].append(t)
                rows["phi2"].append(f)
                rows["tau"].append(ps.tau(a.theta, a.phi, float(t), float(f)))
                rows["overlap"].append(ps.overlap(a, b))
        if args.out:
            write_csv(rows, args.out)
            _emit({"rows": len(rows["tau"]), "csv": args.out})
        else:
            write_csv(rows, "/dev/stdout")
        return EXIT_OK
    b = _state(args, l2, p2, args.theta2, args.phi2)
    out = {"overlap": ps.overlap(a, b)}
    if a.mode == b.mode:
        out["tau"] = ps.tau(a.theta, a.phi, b.theta, b.phi)
    if args.check:
        val = ps.overlap_phase_space(a, b, frame)
        out.update(phase_space=val, difference=out["overlap"] - val)
    _emit(out)
    return EXIT_OK


def cmd_angmom(args):
    if args.amplitudes:
        try:
            amps = AmplitudeSet.from_json(Path(args.amplitudes).read_text())
        except OSError as exc:
            raise ConfigurationError(f"cannot read {args.amplitudes}: {exc}") from exc
        out = {"kind": amps.kind, "orbital_z": orbital_z(amps), "spin_z": spin_z(amps)}
        if amps.kind == "classical":
            energy = paraxial_energy(amps, args.c)
            out.update(energy=energy, oam_per_energy=out["orbital_z"] / energy if energy else None)
        _emit(out)
        return EXIT_OK
    state = _state(args, args.l, args.p, args.theta, args.phi)
    gens = build_generators(state.order)
    mean = gens.expectation(state.coeffs)
    var = np.maximum(gens.variance(state.coeffs), 0.0)
    out = {
        "L": [float(v) for v in mean],
        "Lz_hbar": float(2 * mean[2]),
        "l_cos_theta": state.l * math.cos(state.theta),
        "spin_z": args.sigma,
        "dLx_dLy": float(math.sqrt(var[0] * var[1])),
        "uncertainty_bound": float(0.5 * abs(mean[2])),
    }
    if args.check:
        out["L_phase_space"] = [float(v) for v in ps.expectation_L_phase_space(state, _frame(args))]
    _emit(out)
    return EXIT_OK


def cmd_verify(args):
    frame = _frame(args)
    if args.tol is not None and not args.tol > 0:
        raise ConfigurationError("--tol must be positive")
    checks = _verify.run_suite(args.suite, frame, seed=args.seed, tol=args.tol)
    rep = _verify.report(args.suite, checks)
    _emit(rep)
    return EXIT_OK if rep["pass"] else EXIT_VERIFY


def build_parser():
    parser = argparse.ArgumentParser(prog="oamphase", description=__doc__.splitlines()[0])
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--w0", type=float, default=1.0, help="beam waist (length units)")
    common.add_argument("--k0", type=float, default=100.0, help="carrier wavenumber (1/length)")
    common.add_argument("--deg", action="store_true", help="angles are given in degrees")
    mode = argparse.ArgumentParser(add_help=False)
    mode.add_argument("--l", type=int, default=2)
    mode.add_argument("--p", type=int, default=0)
    sphere = argparse.ArgumentParser(add_help=False)
    sphere.add_argument("--theta", type=float, default=0.0)
    sphere.add_argument("--phi", type=float, default=0.0)

    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("render", parents=[common, mode, sphere], help="write intensity/phase PGMs of a sphere state")
    p.add_argument("--z", type=float, default=0.0)
    p.add_argument("--grid", type=int, default=256, help="pixels per side")
    p.add_argument("--extent", type=float, default=None, help="half-width of the window (default 4 w0 sqrt(N+1))")
    p.add_argument("--out", default="out")
    p.add_argument("--config", help="RunConfig JSON file (overrides the other flags)")
    p.set_defaults(func=cmd_render)

    p = sub.add_parser("rotate", parents=[common, mode, sphere], help="print LG coefficients of a sphere state")
    p.set_defaults(func=cmd_rotate)

    p = sub.add_parser("wigner", parents=[common, mode, sphere], help="evaluate the Wigner function")
    for name in ("x", "y", "px", "py"):
        p.add_argument(f"--{name}", type=float, default=0.0)
    p.add_argument("--check", action="store_true", help="also evaluate the brute-force integral")
    p.add_argument("--slice", help="plane for a 2D section, e.g. x-px")
    p.add_argument("--size", type=int, default=64)
    p.add_argument("--extent", type=float, default=3.0, help="slice half-width in normalized units")
    p.add_argument("--csv")
    p.add_argument("--pgm")
    p.set_defaults(func=cmd_wigner)

    p = sub.add_parser("overlap", parents=[common, mode], help="overlap of two sphere states")
    for name in ("theta1", "phi1", "theta2", "phi2"):
        p.add_argument(f"--{name}", type=float, default=0.0)
    p.add_argument("--l2", type=int)
    p.add_argument("--p2", type=int)
    p.add_argument("--check", action="store_true", help="also integrate W_a W_b over phase space")
    p.add_argument("--sweep", action="store_true", help="emit CSV over a (theta2, phi2) grid")
    p.add_argument("--n-theta", type=int, default=19)
    p.add_argument("--n-phi", type=int, default=36)
    p.add_argument("--out")
    p.set_defaults(func=cmd_overlap)

    p = sub.add_parser("angmom", parents=[common, mode, sphere], help="angular momentum of a state or amplitude set")
    p.add_argument("--sigma", type=int, default=1, choices=(1, -1))
    p.add_argument("--amplitudes", help="AmplitudeSet JSON file")
    p.add_argument("--c", type=float, default=1.0, help="speed of light in output units")
    p.add_argument("--check", action="store_true")
    p.set_defaults(func=cmd_angmom)

    p = sub.add_parser("verify", parents=[common], help="run invariant suites and print a JSON report")
    p.add_argument("--suite", default="all", choices=["all", *_verify.SUITES])
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--tol", type=float, default=None, help="override every check tolerance")
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (ConfigurationError, ValueError) as exc:
        print(f"oamphase: configuration error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except OSError as exc:
        print(f"oamphase: I/O error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
