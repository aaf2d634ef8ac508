"""Limit curves of unit upper Hessenberg zero-diagonal Toeplitz families.

For the Toeplitz matrix with zero diagonal, ``-1`` subdiagonal and ``t_k``
on the ``k``-th superdiagonal, the diagonal similarity ``diag(rho**k)``
turns the symbol into the scaled Laurent polynomial

    a(z) = -rho/z + sum_k t_k (z/rho)**k,

which has a single pole (``q = 1``). Its Schmidt-Spitzer set is the set of
``lambda`` for which the two smallest-modulus roots of ``z*(a(z) - lambda)``
have equal modulus. Since ``a_rho(z) = a_1(z/rho)``, the set does not depend
on ``rho``; the scale only affects conditioning.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .charpoly import _toeplitz_polys
from .eigen import ConvergenceError, polyroots
from .family import Population
from .scalars import CyclotomicScalar

__all__ = [
    "LaurentSymbol", "SSCurve", "default_rho", "phi_grid", "symbol_eval",
    "schmidt_spitzer_points", "symbol_image", "winding_number",
    "hausdorff_distance", "one_sided_distance", "convergence_study",
    "edge_perturbation_study", "toeplitz_matrix",
]


def default_rho(t: Sequence[complex]) -> float:
    """``1 + sqrt(B)``, the scale minimizing the Hessenberg Gershgorin radius."""
    B = max((abs(complex(x)) for x in t), default=0.0)
    return 1.0 + math.sqrt(B) if B > 0 else 2.0


@dataclass(frozen=True)
class LaurentSymbol:
    t: tuple[complex, ...]
    rho: float
    q: int = 1

    def __post_init__(self):
        object.__setattr__(self, "t", tuple(complex(x) for x in self.t))
        if self.rho <= 0:
            raise ValueError("scale rho must be positive")
        if self.q != 1:
            raise NotImplementedError("only symbols with a simple pole are supported")

    @classmethod
    def from_sequence(cls, t, rho: float | None = None) -> LaurentSymbol:
        return cls(tuple(complex(x) for x in t), default_rho(t) if rho is None else rho)

    @property
    def h(self) -> int:
        return len(self.t)

    @property
    def m(self) -> int:
        return len(self.t) + 1

    @property
    def scaled(self) -> np.ndarray:
        """``t_k / rho**k`` for ``k = 1..h``."""
        k = np.arange(1, self.h + 1)
        return np.asarray(self.t, dtype=np.complex128) / self.rho ** k

    def __call__(self, z):
        return symbol_eval(self, z)


def symbol_eval(sym: LaurentSymbol, z):
    """``a(z)``; raises ``ZeroDivisionError`` at the pole ``z = 0``."""
    z = np.asarray(z, dtype=np.complex128)
    if np.any(z == 0):
        raise ZeroDivisionError("symbol has a pole at z = 0")
    acc = np.zeros_like(z)
    for c in sym.scaled[::-1]:
        acc = (acc + c) * z
    out = acc - sym.rho / z
    return out if out.ndim else complex(out)


@dataclass
class SSCurve:
    """Accepted Schmidt-Spitzer points plus every candidate examined."""

    points: np.ndarray
    phi_grid: np.ndarray
    rho: float
    rejected: int
    cand_phi: np.ndarray = field(repr=False)
    cand_lambda: np.ndarray = field(repr=False)
    cand_accepted: np.ndarray = field(repr=False)
    failed_phis: list[float] = field(default_factory=list)

    def __len__(self):
        return len(self.points)


def phi_grid(phi_count: int) -> np.ndarray:
    """Equally spaced angles on ``[-pi, pi]`` with ``phi = 0`` removed."""
    if phi_count < 2:
        raise ValueError("phi_count must be at least 2")
    phis = np.linspace(-np.pi, np.pi, phi_count)
    return phis[np.abs(phis) > 1e-12]


def _trim(c: np.ndarray, rtol: float = 1e-13) -> np.ndarray:
    scale = np.abs(c).max(initial=0.0)
    n = c.size
    while n > 0 and abs(c[n - 1]) <= rtol * scale:
        n -= 1
    return c[:n]


def schmidt_spitzer_points(t: Sequence[complex], rho: float | None = None,
                           phi_count: int = 101, tau: float = 1e-8) -> SSCurve:
    """Points of the Schmidt-Spitzer curve of the symbol built from ``t``.

    For each angle ``phi`` of the grid, the roots ``u`` of
    ``z a(z) - z a(e^{i phi} z)`` give candidates ``lambda = a(u)``. A
    candidate is accepted when ``u`` and ``e^{i phi} u`` are the two
    smallest-modulus roots of ``z (a(z) - lambda)``, i.e. the sorted moduli
    satisfy ``alpha_1 >= |u| (1 - tau)`` and ``alpha_2 <= |u| (1 + tau)``.
    Angles where a root solve fails are skipped and listed in
    ``failed_phis``.
    """
    sym = LaurentSymbol.from_sequence(t, rho)
    grid = phi_grid(phi_count)
    sc = sym.scaled
    k = np.arange(1, sym.h + 1)
    nz = np.flatnonzero(sc)
    base = sc[: nz[-1] + 1] if nz.size else sc[:0]
    cphi, clam, cacc, failed = [], [], [], []
    for phi in grid:
        c = np.zeros(sym.h + 2, dtype=np.complex128)
        c[0] = -sym.rho + sym.rho * np.exp(-1j * phi)
        c[2:] = sc * (1.0 - np.exp(1j * k * phi))
        c = _trim(c)
        if c.size < 2:
            continue
        try:
            us = polyroots(c)
            for u in us:
                if u == 0:
                    continue
                lam = complex(symbol_eval(sym, u))
                c2 = np.concatenate([[-sym.rho, -lam], base])
                v = np.sort(np.abs(polyroots(c2)))
                r = abs(u)
                ok = v.size >= 2 and v[0] >= r * (1 - tau) and v[1] <= r * (1 + tau)
                cphi.append(phi)
                clam.append(lam)
                cacc.append(bool(ok))
        except ConvergenceError:
            failed.append(float(phi))
    cphi = np.asarray(cphi, dtype=float)
    clam = np.asarray(clam, dtype=np.complex128)
    cacc = np.asarray(cacc, dtype=bool)
    return SSCurve(clam[cacc], grid, sym.rho, int((~cacc).sum()),
                   cphi, clam, cacc, failed)


def symbol_image(sym: LaurentSymbol, psi_count: int = 256) -> np.ndarray:
    """Closed envelope ``a(e^{i psi} / rho)`` of the scaled symbol.

    Angles are equally spaced on ``[-pi, pi]``. For all-zero ``t`` this is
    the circle of radius ``rho**2``.
    """
    if psi_count < 3:
        raise ValueError("psi_count must be at least 3")
    psi = np.linspace(-np.pi, np.pi, psi_count)
    return symbol_eval(sym, np.exp(1j * psi) / sym.rho)


def winding_number(curve: np.ndarray, points) -> np.ndarray:
    """Winding number of the closed polygon ``curve`` around each point."""
    curve = np.asarray(curve, dtype=np.complex128)
    pts = np.atleast_1d(np.asarray(points, dtype=np.complex128))
    closed = np.concatenate([curve, curve[:1]])
    d = closed[None, :] - pts[:, None]
    ang = np.angle(d[:, 1:] / d[:, :-1])
    return np.rint(ang.sum(axis=1) / (2 * np.pi)).astype(int)


def one_sided_distance(A, B) -> float:
    """``sup_{a in A} inf_{b in B} |a - b|``."""
    A = np.atleast_1d(np.asarray(A, dtype=np.complex128))
    B = np.atleast_1d(np.asarray(B, dtype=np.complex128))
    if A.size == 0 or B.size == 0:
        raise ValueError("point sets must be nonempty")
    best = np.full(A.size, np.inf)
    for lo in range(0, B.size, 2048):
        best = np.minimum(best, np.abs(A[:, None] - B[None, lo:lo + 2048]).min(axis=1))
    return float(best.max())


def hausdorff_distance(A, B) -> float:
    return max(one_sided_distance(A, B), one_sided_distance(B, A))


def convergence_study(t_seq: Sequence[complex], m_range: Sequence[int],
                      rho: float | None = None, phi_count: int = 101):
    """Hausdorff distance between the curves of consecutive truncations.

    Returns ``[(m, distance from the curve of the previous m), ...]`` for
    every ``m`` after the first; the symbol for ``m`` uses ``t[:m-1]``.
    """
    ms = list(m_range)
    if any(b <= a for a, b in zip(ms, ms[1:])):
        raise ValueError("m_range must be strictly increasing")
    if rho is None:
        rho = default_rho(t_seq)
    out, prev = [], None
    for m in ms:
        tt = list(t_seq[:m - 1]) + [0] * max(0, m - 1 - len(t_seq))
        pts = schmidt_spitzer_points(tt, rho, phi_count).points
        if prev is not None:
            d = hausdorff_distance(prev, pts) if prev.size and pts.size else math.inf
            out.append((m, d))
        prev = pts
    return out


def toeplitz_matrix(t: Sequence[complex], subdiagonal: complex = -1.0) -> np.ndarray:
    """Numeric zero-diagonal Toeplitz matrix with ``t_k`` on superdiagonal ``k``."""
    m = len(t) + 1
    T = np.zeros((m, m), dtype=np.complex128)
    for i in range(1, m):
        T[i, i - 1] = subdiagonal
    for k, x in enumerate(t, start=1):
        T[np.arange(m - k), np.arange(k, m)] = x
    return T


def edge_perturbation_study(t_prefix: Sequence[CyclotomicScalar],
                            population: Population) -> dict:
    """Roots of ``Q_{n+1}`` for each choice of the next entry ``t_n``.

    With ``n = len(t_prefix) + 1``, ``Q_{n+1} = F_n - (-1)**n t_n`` where
    ``F_n`` does not depend on ``t_n``. Returns a dict mapping each
    population element to the roots of the corresponding ``Q_{n+1}``, plus
    the key ``"F"`` holding the roots of ``F_n`` itself.
    """
    if len(t_prefix) < 1:
        raise ValueError("t_prefix needs at least one entry")
    ring = population.ring
    prefix = [x if isinstance(x, CyclotomicScalar) else CyclotomicScalar(int(x), 0, ring)
              for x in t_prefix]
    n = len(prefix) + 1
    zero = CyclotomicScalar(0, 0, ring)
    F = _toeplitz_polys(prefix + [zero], ring)[n + 1]
    Fc = np.array([complex(c) for c in F], dtype=np.complex128)
    sign = 1 if n % 2 else -1  # -(-1)^n
    out: dict = {"F": polyroots(Fc)}
    for p in population:
        c = Fc.copy()
        c[0] += sign * complex(p)
        out[p] = polyroots(c)
    return out
