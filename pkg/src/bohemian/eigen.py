"""Double-precision eigenvalues, polynomial roots and inverse corners.

``eigenvalues`` is a self-contained complex Hessenberg QR solver for single
small matrices; ``eigenvalues_batch`` hands stacks of matrices to LAPACK for
the exhaustive sweeps. ``polyroots`` is an Aberth-Ehrlich simultaneous
iteration. Polynomial coefficient arrays are ascending (constant first)
throughout the package.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .scalars import CyclotomicScalar

__all__ = [
    "Spectrum", "ComplexPoly", "ConvergenceError", "SingularMatrixError",
    "eigenvalues", "eigenvalues_batch", "hessenberg", "polyroots",
    "polyval", "cluster_roots", "inverse_corner", "inverse_corner_batch",
    "inverse_corner_toeplitz", "multiset_distance",
]

EPS = np.finfo(float).eps


class ConvergenceError(RuntimeError):
    """An iteration hit its cap before converging."""


class SingularMatrixError(ZeroDivisionError):
    """The matrix (or a required minor) is numerically singular."""


@dataclass(frozen=True)
class Spectrum:
    values: np.ndarray
    residual_bound: float

    def __len__(self):
        return len(self.values)


@dataclass(frozen=True)
class ComplexPoly:
    """Numeric polynomial, ascending coefficients, nonzero leading term."""

    coeffs: np.ndarray

    def __post_init__(self):
        c = np.atleast_1d(np.asarray(self.coeffs, dtype=np.complex128))
        if c.size == 0 or c[-1] == 0:
            raise ValueError("leading coefficient must be nonzero")
        object.__setattr__(self, "coeffs", c)

    @property
    def degree(self) -> int:
        return self.coeffs.size - 1

    def __call__(self, z):
        return polyval(self.coeffs, z)


# -- polynomials ----------------------------------------------------------------

def polyval(coeffs, z):
    """Horner evaluation of ascending ``coeffs`` at ``z`` (array-friendly)."""
    z = np.asarray(z, dtype=np.complex128)
    acc = np.zeros_like(z)
    for c in coeffs[::-1]:
        acc = acc * z + c
    return acc


def _horner_with_derivative(c: np.ndarray, z: np.ndarray):
    p = np.full_like(z, c[-1])
    dp = np.zeros_like(z)
    for ck in c[-2::-1]:
        dp = dp * z + p
        p = p * z + ck
    return p, dp


def _initial_guesses(c: np.ndarray) -> np.ndarray:
    """Starting points on circles read off the Newton polygon of ``c``."""
    n = c.size - 1
    with np.errstate(divide="ignore"):
        logs = np.log(np.abs(c))
    pts = [k for k in range(n + 1) if np.isfinite(logs[k])]
    hull: list[int] = []
    for k in pts:
        while len(hull) >= 2:
            i, j = hull[-2], hull[-1]
            # drop j unless it lies strictly above the chord i -> k
            if (logs[j] - logs[i]) * (k - i) <= (logs[k] - logs[i]) * (j - i):
                hull.pop()
            else:
                break
        hull.append(k)
    z = np.empty(n, dtype=np.complex128)
    pos = 0
    for i, j in zip(hull[:-1], hull[1:]):
        cnt = j - i
        radius = np.exp((logs[i] - logs[j]) / cnt)
        ang = 2 * np.pi * np.arange(cnt) / cnt + 2 * np.pi * i / n + 0.4
        z[pos:pos + cnt] = radius * np.exp(1j * ang)
        pos += cnt
    return z


def polyroots(p, maxiter: int = 800) -> np.ndarray:
    """All roots of a polynomial by Aberth-Ehrlich iteration.

    Parameters
    ----------
    p : ComplexPoly or sequence of complex
        Ascending coefficients; the leading one must be nonzero.
    maxiter : int
        Iteration cap; exceeding it raises :class:`ConvergenceError`.

    Returns
    -------
    numpy.ndarray
        ``degree`` complex roots with multiplicity, sorted by (real, imag).

    Notes
    -----
    A root is frozen once its residual falls below a Horner rounding-error
    bound, so multiple roots stop at their attainable accuracy instead of
    stalling the iteration. Exact zero roots are split off first.
    """
    c = p.coeffs if isinstance(p, ComplexPoly) else ComplexPoly(p).coeffs
    if c.size < 2:
        raise ValueError("polyroots needs degree >= 1")
    nz = 0
    while c[nz] == 0:
        nz += 1
    c = c[nz:]
    n = c.size - 1
    zeros = np.zeros(nz, dtype=np.complex128)
    if n == 0:
        return zeros
    if n == 1:
        return _sorted(np.concatenate([zeros, [-c[0] / c[1]]]))
    absc = np.abs(c)
    z = _initial_guesses(c)
    done = np.zeros(n, dtype=bool)
    for _ in range(maxiter):
        pz, dpz = _horner_with_derivative(c, z)
        bound = 4 * n * EPS * polyval(absc, np.abs(z)).real
        done |= np.abs(pz) <= bound
        if done.all():
            break
        act = ~done
        diff = z[act, None] - z[None, :]
        diff[np.arange(act.sum()), np.flatnonzero(act)] = np.inf
        s = (1.0 / diff).sum(axis=1)
        with np.errstate(divide="ignore", invalid="ignore"):
            ratio = pz[act] / dpz[act]
            step = ratio / (1.0 - ratio * s)
        bad = ~np.isfinite(step)
        if bad.any():
            step[bad] = 1e-8 * (1 + np.abs(z[act][bad]))
        z[act] = z[act] - step
    else:
        raise ConvergenceError(f"Aberth iteration did not converge in {maxiter} steps")
    z = _polish(c, z)
    return _sorted(np.concatenate([zeros, z]))


def _polish(c: np.ndarray, z: np.ndarray, steps: int = 2) -> np.ndarray:
    for _ in range(steps):
        pz, dpz = _horner_with_derivative(c, z)
        with np.errstate(divide="ignore", invalid="ignore"):
            cand = z - pz / dpz
        pc = polyval(c, cand)
        better = np.isfinite(cand) & (np.abs(pc) < np.abs(pz))
        z = np.where(better, cand, z)
    return z


def _sorted(z: np.ndarray) -> np.ndarray:
    return z[np.lexsort((z.imag, z.real))]


def cluster_roots(roots, rtol: float = 1e-7) -> list[tuple[complex, int]]:
    """Group numerically coincident roots into (mean, multiplicity) pairs."""
    roots = list(np.asarray(roots, dtype=np.complex128))
    clusters: list[list[complex]] = []
    for r in roots:
        for cl in clusters:
            centre = np.mean(cl)
            if abs(r - centre) <= rtol * max(1.0, abs(centre)):
                cl.append(r)
                break
        else:
            clusters.append([r])
    return [(complex(np.mean(cl)), len(cl)) for cl in clusters]


def multiset_distance(a, b) -> float:
    """Largest pair gap after greedily pairing the two equal-size multisets.

    Pairs are formed by repeatedly taking the globally closest unpaired
    points; for well-separated roots this is the optimal matching.
    """
    a = np.asarray(a, dtype=np.complex128)
    b = np.asarray(b, dtype=np.complex128)
    if a.size != b.size:
        raise ValueError("multisets differ in size")
    if a.size == 0:
        return 0.0
    d = np.abs(a[:, None] - b[None, :])
    worst = 0.0
    for _ in range(a.size):
        i, j = np.unravel_index(np.argmin(d), d.shape)
        worst = max(worst, float(d[i, j]))
        d[i, :] = np.inf
        d[:, j] = np.inf
    return worst


# -- eigenvalues ------------------------------------------------------------------

def hessenberg(A) -> np.ndarray:
    """Unitary similarity to upper Hessenberg form (Householder)."""
    H = np.array(A, dtype=np.complex128)
    n = H.shape[0]
    for k in range(n - 2):
        x = H[k + 1:, k]
        alpha = np.linalg.norm(x)
        if alpha == 0.0:
            continue
        phase = x[0] / abs(x[0]) if x[0] != 0 else 1.0
        v = x.copy()
        v[0] += phase * alpha
        v /= np.linalg.norm(v)
        H[k + 1:, k:] -= 2.0 * np.outer(v, v.conj() @ H[k + 1:, k:])
        H[:, k + 1:] -= 2.0 * np.outer(H[:, k + 1:] @ v, v.conj())
        H[k + 2:, k] = 0.0
    return H


def _eig2(a, b, c, d):
    half_tr = 0.5 * (a + d)
    disc = np.sqrt(0.25 * (a - d) ** 2 + b * c)
    l1 = half_tr + disc
    l2 = half_tr - disc
    if abs(l2) > abs(l1):
        l1, l2 = l2, l1
    if l1 != 0:
        l2 = (a * d - b * c) / l1
    return l1, l2


def eigenvalues(A, sweep_factor: int = 40) -> Spectrum:
    """Eigenvalues by Hessenberg reduction and shifted complex QR.

    Single-shift QR with Wilkinson shifts and Givens rotations, deflating
    negligible subdiagonal entries. At most ``sweep_factor * m`` QR sweeps
    are performed before :class:`ConvergenceError` is raised.
    """
    A = np.asarray(A, dtype=np.complex128)
    if A.ndim != 2 or A.shape[0] != A.shape[1] or A.shape[0] < 1:
        raise ValueError("eigenvalues needs a nonempty square matrix")
    if not np.all(np.isfinite(A)):
        raise ValueError("matrix entries must be finite")
    n = A.shape[0]
    H = hessenberg(A)
    norm = np.linalg.norm(H)
    eig = np.empty(n, dtype=np.complex128)
    hi, its, sweeps = n - 1, 0, 0
    cap = sweep_factor * n
    while hi >= 0:
        if hi == 0:
            eig[0] = H[0, 0]
            break
        lo = hi
        while lo > 0:
            s = abs(H[lo - 1, lo - 1]) + abs(H[lo, lo])
            if s == 0.0:
                s = norm
            if abs(H[lo, lo - 1]) <= EPS * s:
                H[lo, lo - 1] = 0.0
                break
            lo -= 1
        if lo == hi:
            eig[hi] = H[hi, hi]
            hi -= 1
            its = 0
            continue
        if lo == hi - 1:
            eig[hi], eig[hi - 1] = _eig2(H[hi - 1, hi - 1], H[hi - 1, hi],
                                         H[hi, hi - 1], H[hi, hi])
            hi -= 2
            its = 0
            continue
        if sweeps >= cap:
            raise ConvergenceError(f"QR did not converge in {cap} sweeps")
        if its in (10, 20, 30):
            shift = H[hi, hi] + 0.75 * abs(H[hi, hi - 1]) * np.exp(0.7j * its)
        else:
            l1, l2 = _eig2(H[hi - 1, hi - 1], H[hi - 1, hi], H[hi, hi - 1], H[hi, hi])
            shift = l1 if abs(l1 - H[hi, hi]) < abs(l2 - H[hi, hi]) else l2
        _qr_sweep(H, lo, hi, shift)
        its += 1
        sweeps += 1
    return Spectrum(eig, float(n * EPS * max(norm, EPS)))


def _qr_sweep(H: np.ndarray, lo: int, hi: int, shift: complex) -> None:
    B = H[lo:hi + 1, lo:hi + 1]
    k = B.shape[0]
    idx = np.arange(k)
    B[idx, idx] -= shift
    rots = []
    for j in range(k - 1):
        x, y = B[j, j], B[j + 1, j]
        r = np.hypot(abs(x), abs(y))
        if r == 0.0:
            rots.append(None)
            continue
        c1, s1 = x / r, y / r
        rows = B[j:j + 2, j:].copy()
        B[j, j:] = c1.conjugate() * rows[0] + s1.conjugate() * rows[1]
        B[j + 1, j:] = -s1 * rows[0] + c1 * rows[1]
        rots.append((c1, s1))
    for j, rot in enumerate(rots):
        if rot is None:
            continue
        c1, s1 = rot
        top = min(j + 2, k - 1) + 1
        cols = B[:top, j:j + 2].copy()
        B[:top, j] = cols[:, 0] * c1 + cols[:, 1] * s1
        B[:top, j + 1] = -cols[:, 0] * s1.conjugate() + cols[:, 1] * c1.conjugate()
    B[idx, idx] += shift


def eigenvalues_batch(stack: np.ndarray) -> np.ndarray:
    """Eigenvalues of a ``(N, m, m)`` stack via LAPACK, shape ``(N, m)``."""
    stack = np.asarray(stack)
    if stack.shape[0] == 0:
        return np.zeros((0, stack.shape[-1]), dtype=np.complex128)
    return np.linalg.eigvals(stack.astype(np.complex128, copy=False))


# -- inverse corner -------------------------------------------------------------------

def inverse_corner_batch(stack: np.ndarray, pivot_rtol: float = 1e-12):
    """Top-left entry of the inverse for each matrix of a stack.

    Gaussian elimination with partial pivoting on ``A x = e_1``, vectorized
    over the stack. Returns ``(values, ok)``; ``ok`` is False where a pivot
    fell below ``pivot_rtol`` times the largest entry modulus.
    """
    M = np.array(stack, dtype=np.complex128)
    N, m, _ = M.shape
    rhs = np.zeros((N, m), dtype=np.complex128)
    rhs[:, 0] = 1.0
    scale = np.abs(M).reshape(N, -1).max(axis=1) if m else np.zeros(N)
    ok = scale > 0
    rows = np.arange(N)
    for k in range(m):
        piv = k + np.argmax(np.abs(M[:, k:, k]), axis=1)
        swap = piv != k
        if swap.any():
            r = rows[swap]
            pk = piv[swap]
            M[r, k], M[r, pk] = M[r, pk].copy(), M[r, k].copy()
            rhs[r, k], rhs[r, pk] = rhs[r, pk].copy(), rhs[r, k].copy()
        p = M[:, k, k]
        small = np.abs(p) <= pivot_rtol * scale
        ok &= ~small
        p = np.where(small, 1.0, p)
        M[:, k, k] = p
        f = M[:, k + 1:, k] / p[:, None]
        M[:, k + 1:, k:] -= f[:, :, None] * M[:, k, None, k:]
        rhs[:, k + 1:] -= f * rhs[:, k, None]
    x = np.zeros((N, m), dtype=np.complex128)
    for k in range(m - 1, -1, -1):
        x[:, k] = (rhs[:, k] - (M[:, k, k + 1:] * x[:, k + 1:]).sum(axis=1)) / M[:, k, k]
    vals = np.where(ok, x[:, 0], np.nan + 0j)
    return vals, ok


def inverse_corner(A) -> complex:
    """``(A^-1)[0, 0]``; raises :class:`SingularMatrixError` when singular."""
    A = np.asarray(A, dtype=np.complex128)
    vals, ok = inverse_corner_batch(A[None])
    if not ok[0]:
        raise SingularMatrixError("matrix is numerically singular")
    return complex(vals[0])


def inverse_corner_toeplitz(t: Sequence[CyclotomicScalar]) -> complex:
    """Inverse corner of the unit upper Hessenberg zero-diagonal Toeplitz matrix.

    With ``Q_k`` the characteristic polynomials of the leading blocks, the
    adjugate formula gives ``(A^-1)[0, 0] = -Q_{m-1}(0) / Q_m(0)``. The
    constants ``Q_k(0)`` are computed exactly; only the final division is
    in floating point.
    """
    from .charpoly import toeplitz_constant_terms

    consts = toeplitz_constant_terms(t)
    num, den = consts[-2], consts[-1]
    if den.is_zero():
        raise SingularMatrixError("Q_m(0) = 0: matrix is singular")
    return -complex(num) / complex(den)
