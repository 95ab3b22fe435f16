"""Statistical complexity: entropy times disequilibrium.

Three disequilibrium kinds are supported, each paired with the normalized
Shannon entropy of the distribution:

- ``sq``:  sum of squared deviations from the uniform distribution
- ``jsd``: Jensen-Shannon divergence from uniform, in bits
- ``tv``:  squared total variation distance from uniform

The first and third are base-free; the Jensen-Shannon kind fixes bits so
that complexity values are comparable across alphabet sizes.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from . import kernels, measures
from .dist import DiscreteDistribution, FamilyPoint, spike_family, uniform
from .errors import FamilyError, RangeError


class ComplexityKind(enum.Enum):
    """Disequilibrium flavor used in the complexity product."""

    SQ = "sq"
    JSD = "jsd"
    TV = "tv"

    @classmethod
    def parse(cls, text: str) -> "ComplexityKind":
        try:
            return cls(text.strip().lower())
        except ValueError:
            valid = ", ".join(k.value for k in cls)
            raise RangeError(f"unknown complexity kind {text!r}; expected one of: {valid}")

    @property
    def kernel_code(self) -> int:
        return {
            ComplexityKind.SQ: kernels.KIND_SQ,
            ComplexityKind.JSD: kernels.KIND_JSD,
            ComplexityKind.TV: kernels.KIND_TV,
        }[self]


def disequilibrium(dist, kind: ComplexityKind) -> float:
    """Distance of `dist` from the uniform reference, per `kind`."""
    p = np.asarray(dist.probs if isinstance(dist, DiscreteDistribution) else dist, dtype=np.float64)
    ref = uniform(p.size)
    if kind is ComplexityKind.SQ:
        return measures.disequilibrium_sq(p)
    if kind is ComplexityKind.TV:
        tv = measures.total_variation(p, ref.probs)
        return tv * tv
    return measures.jsd(p, ref.probs, unit="bits")


def complexity_value(dist, kind: ComplexityKind = ComplexityKind.SQ) -> float:
    """C = normalized entropy times disequilibrium of the chosen kind."""
    return measures.entropy_normalized(dist) * disequilibrium(dist, kind)


def c_sq(dist) -> float:
    return complexity_value(dist, ComplexityKind.SQ)


def c_jsd(dist) -> float:
    return complexity_value(dist, ComplexityKind.JSD)


def c_tv(dist) -> float:
    return complexity_value(dist, ComplexityKind.TV)


@dataclass(frozen=True)
class FamilyEvaluation:
    """Entropy factor, disequilibrium and complexity at one family point."""

    kind: ComplexityKind
    point: FamilyPoint
    h: float
    d: float
    c: float

    def __post_init__(self):
        if abs(self.c - self.h * self.d) > 1e-12 * max(1.0, abs(self.c)):
            raise RangeError("complexity must equal entropy factor times disequilibrium")


def family_eval(kind: ComplexityKind, point: FamilyPoint) -> FamilyEvaluation:
    """Evaluate one two-level family point through the closed forms."""
    h, d, c = kernels.family_hdc(kind.kernel_code, float(point.n), point.omega_value, point.p_max)
    return FamilyEvaluation(kind=kind, point=point, h=h, d=d, c=c)


def family_complexity_direct(kind: ComplexityKind, point: FamilyPoint) -> float:
    """Same quantity computed from the explicit distribution (integer mode)."""
    if point.mode != "integer":
        raise FamilyError("direct evaluation requires an integer group size")
    return complexity_value(spike_family(point), kind)


def family_surface(kind: ComplexityKind, n: int, omegas, p_maxes) -> np.ndarray:
    """Complexity over the outer grid omegas x p_maxes; shape (len(w), len(p))."""
    w = np.asarray(omegas, dtype=np.float64)
    p = np.asarray(p_maxes, dtype=np.float64)
    if w.ndim != 1 or p.ndim != 1 or w.size == 0 or p.size == 0:
        raise RangeError("grid axes must be non-empty 1-d arrays")
    if np.any(w <= 0.0) or np.any(w >= 1.0):
        raise FamilyError("omega grid values must lie strictly inside (0, 1)")
    if np.any(p < 0.0) or np.any(p > 1.0):
        raise RangeError("p_max grid values must lie in [0, 1]")
    return np.asarray(kernels.family_c_grid(kind.kernel_code, float(n), w, p))


def simplex3_surface(kind: ComplexityKind, m: int) -> np.ndarray:
    """Complexity over the lattice {(i/m, j/m, 1-i/m-j/m)}; NaN off-simplex."""
    if m < 2:
        raise RangeError("simplex lattice needs m >= 2")
    return np.asarray(kernels.simplex3_c_grid(kind.kernel_code, int(m)))


def write_family_grid_csv(path, kind: ComplexityKind, n: int, omegas, p_maxes) -> None:
    """CSV rows (omega, p_max, c), omega-major order."""
    surf = family_surface(kind, n, omegas, p_maxes)
    with open(path, "w", encoding="utf-8") as fh:
        fh.write("omega,p_max,c\n")
        for i, w in enumerate(np.asarray(omegas, dtype=np.float64)):
            for j, p in enumerate(np.asarray(p_maxes, dtype=np.float64)):
                fh.write(f"{w:.6g},{p:.6g},{surf[i, j]:.6g}\n")


def write_simplex_grid_csv(path, kind: ComplexityKind, m: int) -> None:
    """CSV rows (p1, p2, c) over the simplex lattice; off-simplex cells skipped."""
    surf = simplex3_surface(kind, m)
    with open(path, "w", encoding="utf-8") as fh:
        fh.write("p1,p2,c\n")
        for i in range(m + 1):
            for j in range(m + 1 - i):
                fh.write(f"{i / m:.6g},{j / m:.6g},{surf[i, j]:.6g}\n")
