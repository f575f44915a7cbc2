"""Deterministic file output: run configs, PGM images, CSV tables.

Images are 16-bit binary PGM (P5, big-endian samples), each with a JSON
sidecar holding the scaling needed to recover physical values.
"""
from __future__ import annotations

import csv
import json
import math
from dataclasses import asdict, dataclass, field
from pathlib import Path

import numpy as np

from .errors import ConfigurationError, OutputError

__all__ = [
    "RunConfig",
    "write_pgm",
    "read_pgm",
    "write_field_pgm",
    "write_csv",
    "canonical_json",
]

MAXVAL = 65535


def canonical_json(obj):
    return json.dumps(obj, sort_keys=True, indent=2) + "\n"


def _write_bytes(path, data):
    path = Path(path)
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_bytes(data)
    except OSError as exc:
        raise OutputError(f"cannot write {path}: {exc.strerror or exc}") from exc


def _write_text(path, text):
    _write_bytes(path, text.encode("utf-8"))


def write_pgm(levels, path, sidecar=None):
    """Write integer ``levels`` in ``[0, 65535]`` as a P5 image; rows are written top row first."""
    levels = np.asarray(levels)
    if levels.ndim != 2:
        raise ValueError(f"PGM data must be 2D, got shape {levels.shape}")
    if levels.min(initial=0) < 0 or levels.max(initial=0) > MAXVAL:
        raise ValueError("PGM levels out of range [0, 65535]")
    h, w = levels.shape
    header = f"P5\n{w} {h}\n{MAXVAL}\n".encode("ascii")
    _write_bytes(path, header + levels.astype(">u2").tobytes())
    if sidecar is not None:
        _write_text(Path(path).with_suffix(".json"), canonical_json(sidecar))


def read_pgm(path):
    """Read a P5 image written by :func:`write_pgm`; returns ``(levels, maxval)``."""
    data = Path(path).read_bytes()
    parts = data.split(maxsplit=4)
    if parts[0] != b"P5":
        raise ValueError(f"{path}: not a binary PGM")
    w, h, maxval = int(parts[1]), int(parts[2]), int(parts[3])
    dtype = ">u2" if maxval > 255 else "u1"
    body = parts[4] if len(parts) > 4 else b""
    return np.frombuffer(body, dtype=dtype).reshape(h, w).astype(np.int64), maxval


def _image_rows(values):
    # grid rows run from -extent to +extent in y; images are stored top row first
    return np.asarray(values)[::-1, :]


def write_field_pgm(field_, channel, path):
    """Render the intensity or phase of a :class:`~oamphase.modes.ComplexField2D`.

    Intensity is scaled so that its maximum maps to 65535; phase maps
    ``(-pi, pi]`` linearly onto ``[0, 65535]``.
    """
    samples = np.asarray(field_.samples)
    if not np.all(np.isfinite(samples)):
        raise ValueError("field contains non-finite samples")
    meta = {
        "channel": channel,
        "width": field_.grid.resolution,
        "height": field_.grid.resolution,
        "extent": field_.grid.extent,
        "orientation": "row 0 is y = +extent; column 0 is x = -extent",
    }
    if channel == "intensity":
        inten = np.abs(samples) ** 2
        peak = float(inten.max())
        scale = MAXVAL / peak if peak > 0 else 0.0
        levels = np.rint(inten * scale)
        meta.update(normalization=peak, mapping="level = round(65535 * I / I_max)")
    elif channel == "phase":
        ang = np.angle(samples)
        ang = np.where(ang <= -math.pi, math.pi, ang)
        levels = np.rint((ang + math.pi) / (2 * math.pi) * MAXVAL)
        meta.update(normalization=2 * math.pi, mapping="level = round(65535 * (phase + pi) / (2 pi))")
    else:
        raise ValueError(f"channel must be 'intensity' or 'phase', got {channel!r}")
    write_pgm(_image_rows(levels.astype(np.int64)), path, meta)


def write_scalar_pgm(values, path, meta):
    """Linear grey-scale rendering of a real 2D array; min maps to 0 and max to 65535."""
    values = np.asarray(values, dtype=float)
    vmin, vmax = float(values.min()), float(values.max())
    span = vmax - vmin
    levels = np.zeros(values.shape) if span == 0 else np.rint((values - vmin) / span * MAXVAL)
    meta = dict(meta, vmin=vmin, vmax=vmax, mapping="level = round(65535 * (v - vmin) / (vmax - vmin))")
    write_pgm(_image_rows(levels.astype(np.int64)), path, meta)


def write_csv(columns, path):
    """Write named columns with a header row and 17 significant digits per value."""
    names = list(columns)
    cols = [list(columns[n]) for n in names]
    lengths = {len(c) for c in cols}
    if len(lengths) > 1:
        raise ValueError(f"columns have unequal lengths {sorted(lengths)}")
    path = Path(path)
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        with path.open("w", newline="", encoding="utf-8") as fh:
            writer = csv.writer(fh)
            writer.writerow(names)
            for row in zip(*cols):
                writer.writerow([format(float(v), ".17g") for v in row])
    except OSError as exc:
        raise OutputError(f"cannot write {path}: {exc.strerror or exc}") from exc


@dataclass(frozen=True)
class RunConfig:
    """Everything needed to reproduce one run of the command-line tool."""

    w0: float = 1.0
    k0: float = 100.0
    l: int = 2
    p: int = 0
    theta: float = 0.0
    phi: float = 0.0
    z: float = 0.0
    grid_extent: float = 0.0
    grid_resolution: int = 256
    output_dir: str = "out"
    tolerances: dict = field(default_factory=lambda: {"symplectic": 1e-12, "wigner": 1e-6, "overlap": 1e-4})
    seed: int = 0

    def __post_init__(self):
        problems = []
        if not (self.w0 > 0 and self.k0 > 0):
            problems.append("w0 and k0 must be positive")
        if self.p < 0:
            problems.append("p must be >= 0")
        if not 0.0 <= self.theta <= math.pi:
            problems.append("theta must lie in [0, pi]")
        if self.grid_resolution < 32:
            problems.append("grid_resolution must be >= 32")
        if self.grid_extent < 0:
            problems.append("grid_extent must be >= 0 (0 selects the default)")
        if any(not v > 0 for v in self.tolerances.values()):
            problems.append("tolerances must be positive")
        if problems:
            raise ConfigurationError("; ".join(problems))

    def to_json(self):
        return canonical_json(asdict(self))

    @classmethod
    def from_json(cls, text):
        try:
            doc = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ConfigurationError(f"invalid JSON config: {exc}") from exc
        unknown = set(doc) - set(cls.__dataclass_fields__)
        if unknown:
            raise ConfigurationError(f"unknown config keys: {sorted(unknown)}")
        try:
            return cls(**doc)
        except TypeError as exc:
            raise ConfigurationError(str(exc)) from exc

    def write(self, path):
        _write_text(path, self.to_json())
