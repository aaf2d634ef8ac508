"""Eigenvalue localization regions and their verification over families.

Regions are closed; membership takes an explicit tolerance that absorbs
eigensolver error. ``margin`` is positive inside a region and negative
outside, so a family check reduces to the smallest margin seen.
"""

from __future__ import annotations

import enum
import json
import math
from dataclasses import asdict, dataclass
import numpy as np

from . import family as fam
from .eigen import eigenvalues, eigenvalues_batch
from .family import FamilySpec

__all__ = [
    "RegionKind", "RegionBound", "VerificationReport", "bbh_rectangle",
    "gerschgorin_disks", "square_bound", "diamond_bound", "strip_bound",
    "hessenberg_radius", "verify_region", "hermitian_eigenvalues",
]

DEFAULT_TOL = 1e-9


class RegionKind(enum.Enum):
    RECTANGLE = "RECTANGLE"
    DISK_UNION = "DISK_UNION"
    SQUARE = "SQUARE"
    DIAMOND = "DIAMOND"
    RADIUS = "RADIUS"


@dataclass(frozen=True)
class RegionBound:
    """A closed region of the complex plane.

    ``params`` by kind: RECTANGLE ``(re_min, re_max, im_min, im_max)``;
    DISK_UNION ``(centers, radii)``; SQUARE ``(half_width,)`` centred at 0;
    DIAMOND ``(l1_radius,)``; RADIUS ``(radius,)``.
    """

    kind: RegionKind
    params: tuple

    def margin(self, z) -> np.ndarray:
        z = np.asarray(z, dtype=np.complex128)
        x, y = z.real, z.imag
        k = self.kind
        if k is RegionKind.RECTANGLE:
            r0, r1, i0, i1 = self.params
            return np.minimum(np.minimum(x - r0, r1 - x), np.minimum(y - i0, i1 - y))
        if k is RegionKind.SQUARE:
            return self.params[0] - np.maximum(np.abs(x), np.abs(y))
        if k is RegionKind.DIAMOND:
            return self.params[0] - (np.abs(x) + np.abs(y))
        if k is RegionKind.RADIUS:
            return self.params[0] - np.abs(z)
        centers, radii = self.params
        c = np.asarray(centers, dtype=np.complex128)
        r = np.asarray(radii, dtype=float)
        if c.size == 0:
            return np.full(z.shape, -np.inf)
        return (r - np.abs(z[..., None] - c)).max(axis=-1)

    def contains(self, z, tol: float = DEFAULT_TOL):
        return self.margin(z) >= -tol

    def to_dict(self) -> dict:
        if self.kind is RegionKind.DISK_UNION:
            c, r = self.params
            return {"kind": self.kind.value,
                    "centers": [[float(np.real(x)), float(np.imag(x))] for x in c],
                    "radii": [float(x) for x in r]}
        return {"kind": self.kind.value, "params": [float(p) for p in self.params]}


def hermitian_eigenvalues(H, tol: float = DEFAULT_TOL) -> np.ndarray:
    """Real eigenvalues of a Hermitian matrix via the general solver."""
    vals = eigenvalues(H).values
    scale = max(1.0, float(np.abs(H).max(initial=0.0)))
    if np.any(np.abs(vals.imag) > tol * scale):
        raise ArithmeticError("Hermitian matrix produced non-real eigenvalues")
    return np.sort(vals.real)


def bbh_rectangle(A) -> RegionBound:
    """Bendixson-Bromwich-Hirsch rectangle from the Hermitian and
    skew-Hermitian parts of ``A``."""
    A = np.asarray(A, dtype=np.complex128)
    herm = (A + A.conj().T) / 2
    skew = (A - A.conj().T) / 2j
    mu = hermitian_eigenvalues(herm)
    nu = hermitian_eigenvalues(skew)
    return RegionBound(RegionKind.RECTANGLE, (mu[0], mu[-1], nu[0], nu[-1]))


def gerschgorin_disks(A) -> RegionBound:
    A = np.asarray(A, dtype=np.complex128)
    d = np.diag(A).copy()
    radii = np.abs(A).sum(axis=1) - np.abs(d)
    return RegionBound(RegionKind.DISK_UNION, (tuple(d), tuple(radii)))


def strip_bound(m: int) -> RegionBound:
    """``-m <= Re <= 0``, ``|Im| <= m``: complex symmetric, entries -1 +/- i."""
    return RegionBound(RegionKind.RECTANGLE, (-float(m), 0.0, -float(m), float(m)))


def square_bound(half_width: float = 2.0) -> RegionBound:
    """Square ``|Re|, |Im| <= 2`` for skew-symmetric tridiagonal, entries -1 +/- i."""
    return RegionBound(RegionKind.SQUARE, (float(half_width),))


def diamond_bound(l1_radius: float = math.sqrt(2.0)) -> RegionBound:
    """Diamond ``|Re| + |Im| <= sqrt(2)`` for skew-symmetric tridiagonal
    matrices over 1, i (or the fourth roots of unity)."""
    return RegionBound(RegionKind.DIAMOND, (float(l1_radius),))


def hessenberg_radius(B: float) -> RegionBound:
    """Disk ``|z| <= 1 + 2 sqrt(B)`` for unit upper Hessenberg zero-diagonal
    matrices with entries bounded by ``B``."""
    if B <= 0:
        raise ValueError("entry bound B must be positive")
    return RegionBound(RegionKind.RADIUS, (1.0 + 2.0 * math.sqrt(B),))


@dataclass
class VerificationReport:
    matrices: int
    eigenvalues: int
    violations: int
    worst_margin: float
    region: dict
    mode: str

    def to_dict(self) -> dict:
        return asdict(self)

    def dumps(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True)


def verify_region(spec: FamilySpec, region: RegionBound, mode: str = "exhaustive",
                  seed: int = 0, count: int = 0, tol: float = DEFAULT_TOL,
                  budget: int = 1 << 24, start: int = 0, stop: int | None = None,
                  batch: int = 1 << 14) -> VerificationReport:
    """Check every eigenvalue of a family (or a sample of it) against a region.

    ``mode`` is ``"exhaustive"`` (index range ``[start, stop)``) or
    ``"sampled"`` (``count`` draws of the ``seed`` stream starting at
    ``start``). An eigenvalue violates the region when its margin is below
    ``-tol``.
    """
    if mode == "exhaustive":
        if spec.size > budget:
            from .charpoly import BudgetExceededError
            raise BudgetExceededError(f"family size {spec.size} exceeds budget {budget}")
        stop = spec.size if stop is None else min(stop, spec.size)
        total = max(stop - start, 0)

        def chunk(lo, n):
            return fam.digits_from_indices(spec, np.arange(lo, lo + n, dtype=np.int64))
    elif mode == "sampled":
        total = count

        def chunk(lo, n):
            return fam.sample_digits(spec, seed, n, lo)
    else:
        raise ValueError(f"unknown mode {mode!r}")
    violations, worst, neig = 0, math.inf, 0
    for off in range(0, total, batch):
        n = min(batch, total - off)
        stack = fam.complex_batch(spec, chunk(start + off, n))
        ev = eigenvalues_batch(stack)
        mg = region.margin(ev)
        violations += int((mg < -tol).sum())
        worst = min(worst, float(mg.min()))
        neig += ev.size
    label = mode if mode == "exhaustive" else f"sampled(seed={seed},count={count})"
    return VerificationReport(total, neig, violations, worst, region.to_dict(), label)

