"""Angular momentum and energy bookkeeping on mode amplitudes.

Units: hbar = 1 and c = 1 unless a light speed is passed explicitly. The
continuum over ``k0`` is represented by bins; every amplitude carries the
width of its bin, so integrals over ``dk0`` become weighted sums.
"""
from __future__ import annotations

import json
import math
from dataclasses import dataclass, field

import numpy as np

__all__ = [
    "AmplitudeSet",
    "orbital_z",
    "spin_z",
    "paraxial_energy",
    "oam_per_photon",
    "trapezoid_weights",
    "one_photon_from_sphere",
]

KINDS = ("classical", "one_photon")


def trapezoid_weights(k0_values):
    """Trapezoidal bin widths for a sorted grid of ``k0`` values."""
    k = np.asarray(k0_values, dtype=float)
    if k.size == 1:
        return {float(k[0]): 1.0}
    if np.any(np.diff(k) <= 0):
        raise ValueError("k0 grid must be strictly increasing")
    w = np.zeros_like(k)
    w[1:] += 0.5 * np.diff(k)
    w[:-1] += 0.5 * np.diff(k)
    return {float(a): float(b) for a, b in zip(k, w)}


@dataclass(frozen=True)
class AmplitudeSet:
    """Complex amplitudes keyed by ``(sigma, l, p, k0)``.

    ``dk0`` is the default bin width; ``k0_weights`` overrides it per bin.
    A ``one_photon`` set must satisfy ``sum |C|^2 dk0 = 1``.
    """

    entries: dict
    kind: str = "classical"
    dk0: float = 1.0
    k0_weights: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"kind must be one of {KINDS}, got {self.kind!r}")
        if not self.dk0 > 0:
            raise ValueError(f"dk0 must be positive, got {self.dk0}")
        for sigma, l, p, k0 in self.entries:
            if sigma not in (1, -1):
                raise ValueError(f"sigma must be +1 or -1, got {sigma}")
            if p < 0:
                raise ValueError(f"radial index must be >= 0, got {p}")
            if not k0 > 0:
                raise ValueError(f"k0 bins must be positive, got {k0}")
        if self.kind == "one_photon":
            norm = self.norm()
            if abs(norm - 1.0) > 1e-10:
                raise ValueError(f"one-photon amplitudes must be normalized, got sum |C|^2 dk0 = {norm!r}")

    def weight(self, k0):
        return self.k0_weights.get(k0, self.dk0)

    def _weighted(self):
        for key, c in self.entries.items():
            yield key, abs(c) ** 2 * self.weight(key[3])

    def norm(self):
        return math.fsum(w for _, w in self._weighted())

    def with_global_phase(self, angle):
        factor = complex(math.cos(angle), math.sin(angle))
        return AmplitudeSet({k: c * factor for k, c in self.entries.items()}, self.kind, self.dk0, self.k0_weights)

    def to_json(self):
        rows = [
            {"sigma": s, "l": l, "p": p, "k0": k0, "re": c.real, "im": c.imag}
            for (s, l, p, k0), c in sorted(self.entries.items())
        ]
        doc = {"kind": self.kind, "dk0": self.dk0, "entries": rows}
        if self.k0_weights:
            doc["k0_weights"] = [{"k0": k, "weight": w} for k, w in sorted(self.k0_weights.items())]
        return json.dumps(doc, sort_keys=True, indent=2) + "\n"

    @classmethod
    def from_json(cls, text):
        doc = json.loads(text)
        rows = doc["entries"] if isinstance(doc, dict) else doc
        entries = {
            (int(r["sigma"]), int(r["l"]), int(r["p"]), float(r["k0"])): complex(r["re"], r["im"]) for r in rows
        }
        if not isinstance(doc, dict):
            return cls(entries)
        weights = {float(r["k0"]): float(r["weight"]) for r in doc.get("k0_weights", [])}
        return cls(entries, doc.get("kind", "classical"), float(doc.get("dk0", 1.0)), weights)


def orbital_z(a):
    """``L_z = sum l |alpha|^2 dk0`` (units of hbar)."""
    return math.fsum(key[1] * w for key, w in a._weighted())


def spin_z(a):
    """``S_z = sum sigma |alpha|^2 dk0`` (units of hbar)."""
    return math.fsum(key[0] * w for key, w in a._weighted())


def paraxial_energy(a, c=1.0):
    """``H_P = sum c k0 |alpha|^2 dk0``; defined for classical amplitudes only."""
    if a.kind != "classical":
        raise TypeError("paraxial_energy is defined for classical amplitude sets")
    return math.fsum(c * key[3] * w for key, w in a._weighted())


def oam_per_photon(a, c=1.0):
    """Ratio ``L_z / H_P``, the semiclassical OAM per photon."""
    return orbital_z(a) / paraxial_energy(a, c)


def one_photon_from_sphere(state, sigma=1, k0=1.0, dk0=1.0):
    """One-photon amplitudes ``C_{sigma,l,p}(k0)`` for a sphere state in a single ``k0`` bin."""
    scale = 1.0 / math.sqrt(dk0)
    entries = {(sigma, m.l, m.p, float(k0)): complex(c) * scale for m, c in zip(state.basis, state.coeffs)}
    return AmplitudeSet(entries, kind="one_photon", dk0=dk0)
