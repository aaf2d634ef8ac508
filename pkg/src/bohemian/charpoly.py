"""Exact characteristic polynomials, censuses and Hurwitz stability.

Characteristic polynomials ``det(zI - A)`` are computed without division:
by the three-term Toeplitz recurrence for unit upper Hessenberg zero-diagonal
Toeplitz matrices, and by Berkowitz's algorithm otherwise. The batch form of
Berkowitz works on int64 ``(a, b)`` component stacks (or Python-int object
arrays when the entries could overflow) and feeds the exhaustive censuses.
"""

from __future__ import annotations

import csv
import enum
import json
import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Sequence

import numpy as np

from . import family as fam
from .eigen import polyroots
from .family import FamilySpec, MatrixInstance
from .scalars import CyclotomicScalar, Ring

__all__ = [
    "CharPoly", "CensusResult", "Stability", "BudgetExceededError",
    "DEFAULT_BUDGET", "charpoly_toeplitz_recurrence", "toeplitz_constant_terms",
    "charpoly_general", "charpoly_batch", "characteristic_height", "census",
    "routh_hurwitz_stable", "hurwitz_minors", "stable_census", "add_stability",
    "export_json", "import_json", "export_csv", "real_square",
]

DEFAULT_BUDGET = 1 << 24
_BATCH = 1 << 15


class BudgetExceededError(ValueError):
    """An exhaustive computation was asked to visit too many matrices."""


class Stability(enum.Enum):
    STABLE = "STABLE"
    NOT_STRICTLY_STABLE = "NOT_STRICTLY_STABLE"


@dataclass(frozen=True, order=True)
class CharPoly:
    """Monic exact polynomial ``c_0 + c_1 z + ... + z^m``.

    ``coeffs`` holds ascending ``(a, b)`` component pairs in the ring
    ``ring``; ``(ring, coeffs)`` is the canonical dedup key.
    """

    ring: Ring = field(compare=False)
    coeffs: tuple[tuple[int, int], ...]

    def __post_init__(self):
        coeffs = tuple((int(a), int(b)) for a, b in self.coeffs)
        object.__setattr__(self, "coeffs", coeffs)
        if not coeffs or coeffs[-1] != (1, 0):
            raise ValueError("characteristic polynomial must be monic")

    def __hash__(self):
        return hash((self.ring.value, self.coeffs))

    def __eq__(self, other):
        if not isinstance(other, CharPoly):
            return NotImplemented
        return self.ring is other.ring and self.coeffs == other.coeffs

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def key(self) -> tuple:
        return (self.ring.value, self.coeffs)

    def scalars(self) -> list[CyclotomicScalar]:
        return [CyclotomicScalar(a, b, self.ring) for a, b in self.coeffs]

    def to_complex(self) -> np.ndarray:
        return np.array([complex(x) for x in self.scalars()], dtype=np.complex128)

    def roots(self) -> np.ndarray:
        return polyroots(self.to_complex())

    def __call__(self, z):
        return np.polyval(self.to_complex()[::-1], z)

    @classmethod
    def from_scalars(cls, coeffs: Sequence[CyclotomicScalar],
                     ring: Ring | None = None) -> CharPoly:
        ring = ring or (coeffs[0].ring if coeffs else Ring.INT)
        return cls(ring, tuple((c.a, c.b) for c in coeffs))

    def __str__(self):
        terms = []
        for k, c in enumerate(self.scalars()):
            if c.is_zero():
                continue
            mono = "" if k == 0 else ("z" if k == 1 else f"z^{k}")
            terms.append(f"({c}){mono}" if mono else f"({c})")
        return " + ".join(reversed(terms))


# -- scalar polynomial helpers --------------------------------------------------

def _poly_mul(p: Sequence[CyclotomicScalar], q: Sequence[CyclotomicScalar]):
    zero = p[0].zero()
    out = [zero] * (len(p) + len(q) - 1)
    for i, x in enumerate(p):
        if x.is_zero():
            continue
        for j, y in enumerate(q):
            out[i + j] = out[i + j] + x * y
    return out


def real_square(p: CharPoly) -> list[int]:
    """Integer coefficients (ascending) of ``p(z) * conj(p)(z)``.

    ``conj(p)`` conjugates each coefficient, so its roots are the mirror
    images of those of ``p`` across the real axis; the product is real and
    has the same real parts of roots.
    """
    s = p.scalars()
    prod = _poly_mul(s, [c.conj() for c in s])
    if any(c.b != 0 for c in prod):  # pragma: no cover - ring identity
        raise ArithmeticError("p * conj(p) is not real")
    return [c.a for c in prod]


# -- Toeplitz recurrence --------------------------------------------------------

def _toeplitz_polys(t: Sequence[CyclotomicScalar], ring: Ring):
    zero, one = CyclotomicScalar(0, 0, ring), CyclotomicScalar(1, 0, ring)
    Q = [[one]]
    for n in range(len(t) + 1):
        nxt = [zero] + list(Q[n])  # z * Q_n
        for k in range(1, n + 1):
            coef = t[k - 1] if k % 2 else -t[k - 1]  # -(-1)^k t_k
            for i, c in enumerate(Q[n - k]):
                nxt[i] = nxt[i] + coef * c
        Q.append(nxt)
    return Q


def _ring_of(t: Sequence[CyclotomicScalar], ring: Ring | None) -> Ring:
    if ring is not None:
        return Ring(ring)
    return t[0].ring if len(t) else Ring.INT


def charpoly_toeplitz_recurrence(t: Sequence[CyclotomicScalar],
                                 ring: Ring | None = None) -> CharPoly:
    """``det(zI - T)`` for the Toeplitz matrix with zero diagonal, -1
    subdiagonal and ``t_k`` on the ``k``-th superdiagonal.

    Uses ``Q_0 = 1`` and
    ``Q_{n+1} = z Q_n - sum_{k=1..n} (-1)^k t_k Q_{n-k}``.
    """
    ring = _ring_of(t, ring)
    t = [fam._promote(x, ring) for x in t]
    return CharPoly.from_scalars(_toeplitz_polys(t, ring)[-1], ring)


def toeplitz_constant_terms(t: Sequence[CyclotomicScalar],
                            ring: Ring | None = None) -> list[CyclotomicScalar]:
    """``[Q_0(0), Q_1(0), ..., Q_m(0)]`` for the sequence ``t`` (length m-1)."""
    ring = _ring_of(t, ring)
    t = [fam._promote(x, ring) for x in t]
    zero, one = CyclotomicScalar(0, 0, ring), CyclotomicScalar(1, 0, ring)
    q = [one]
    for n in range(len(t) + 1):
        acc = zero
        for k in range(1, n + 1):
            coef = t[k - 1] if k % 2 else -t[k - 1]
            acc = acc + coef * q[n - k]
        q.append(acc)
    return q


# -- Berkowitz ------------------------------------------------------------------

def charpoly_general(A: MatrixInstance) -> CharPoly:
    """Exact ``det(zI - A)`` by Berkowitz's division-free algorithm."""
    m, ring = A.m, A.ring
    one = CyclotomicScalar(1, 0, ring)
    p = [one]  # descending coefficients of the leading k x k block
    for k in range(m):
        R = [A[k, j] for j in range(k)]
        C = [A[i, k] for i in range(k)]
        col = [one, -A[k, k]]
        v = C
        for _ in range(k):
            col.append(-sum((r * x for r, x in zip(R, v)), one.zero()))
            v = [sum((A[i, j] * v[j] for j in range(k)), one.zero()) for i in range(k)]
        p = [sum((col[i - j] * p[j] for j in range(min(i, k) + 1)), one.zero())
             for i in range(k + 2)]
    return CharPoly.from_scalars(p[::-1], ring)


def _mul(ring: Ring, a, b, c, d):
    if ring is Ring.EISEN:
        bd = b * d
        return a * c - bd, a * d + b * c - bd
    return a * c - b * d, a * d + b * c


def _needs_bigint(m: int, height: float) -> bool:
    h = max(height, 1.0)
    col = (m * h + 1.0) ** (m + 1)
    coef = (1.0 + math.sqrt(m) * h) ** m
    return 16.0 * (m + 2) * col * coef >= 2.0 ** 62


def charpoly_batch(ring: Ring, A: np.ndarray, B: np.ndarray):
    """Berkowitz on a stack of exact matrices.

    Parameters
    ----------
    ring : Ring
    A, B : numpy.ndarray
        ``(N, m, m)`` integer component arrays of the entries ``A + B*tau``.

    Returns
    -------
    (ca, cb) : tuple of numpy.ndarray
        ``(N, m+1)`` ascending coefficient components. Object arrays of
        Python ints are used when int64 could overflow.
    """
    N, m = A.shape[0], A.shape[1]
    if N:
        scale = np.abs(A).max(initial=0) + np.abs(B).max(initial=0)
        if _needs_bigint(m, float(scale)):
            A, B = A.astype(object), B.astype(object)
    dt = A.dtype
    pa = np.ones((N, 1), dtype=dt)
    pb = np.zeros((N, 1), dtype=dt)
    for k in range(m):
        Ra, Rb = A[:, k, :k], B[:, k, :k]
        Ma, Mb = A[:, :k, :k], B[:, :k, :k]
        va, vb = A[:, :k, k], B[:, :k, k]
        cola = [np.ones(N, dtype=dt), -A[:, k, k]]
        colb = [np.zeros(N, dtype=dt), -B[:, k, k]]
        for _ in range(k):
            xa, xb = _mul(ring, Ra, Rb, va, vb)
            cola.append(-xa.sum(axis=1))
            colb.append(-xb.sum(axis=1))
            ya, yb = _mul(ring, Ma, Mb, va[:, None, :], vb[:, None, :])
            va, vb = ya.sum(axis=2), yb.sum(axis=2)
        na = np.zeros((N, k + 2), dtype=dt)
        nb = np.zeros((N, k + 2), dtype=dt)
        for j in range(k + 1):
            for i in range(j, k + 2):
                xa, xb = _mul(ring, cola[i - j], colb[i - j], pa[:, j], pb[:, j])
                na[:, i] += xa
                nb[:, i] += xb
        pa, pb = na, nb
    return pa[:, ::-1], pb[:, ::-1]


def characteristic_height(p: CharPoly) -> float:
    """Largest coefficient modulus."""
    return max(abs(c) for c in p.scalars())


# -- Hurwitz stability ------------------------------------------------------------

def hurwitz_minors(coeffs_desc: Sequence[int]) -> list[int]:
    """Leading principal minors of the Hurwitz matrix, up to the first
    nonpositive one.

    ``coeffs_desc`` are the real coefficients ``a_0 z^n + ... + a_n``.
    Fraction-free Bareiss elimination without pivoting produces the leading
    principal minors as successive pivots; all arithmetic is exact.
    """
    a = [int(x) for x in coeffs_desc]
    n = len(a) - 1

    def coef(k):
        return a[k] if 0 <= k <= n else 0

    H = [[coef(2 * (j + 1) - (i + 1)) for j in range(n)] for i in range(n)]
    minors = []
    prev = 1
    for k in range(n):
        piv = H[k][k]
        minors.append(piv)
        if piv <= 0:
            break
        for i in range(k + 1, n):
            hik = H[i][k]
            row_i, row_k = H[i], H[k]
            for j in range(k + 1, n):
                row_i[j] = (row_i[j] * piv - hik * row_k[j]) // prev
        prev = piv
    return minors


def _stable_real(coeffs_asc: Sequence[int]) -> bool:
    if any(c <= 0 for c in coeffs_asc):
        return False
    minors = hurwitz_minors(list(coeffs_asc)[::-1])
    return len(minors) == len(coeffs_asc) - 1 and all(d > 0 for d in minors)


def routh_hurwitz_stable(p: CharPoly) -> Stability:
    """Exact strict-stability verdict for a monic polynomial.

    Forms the real integer polynomial ``P = p * conj(p)`` and requires every
    leading principal Hurwitz minor of ``P`` to be positive. A sign pattern
    with any nonpositive coefficient fails immediately, which is a necessary
    condition for a real Hurwitz polynomial.
    """
    P = real_square(p)
    return Stability.STABLE if _stable_real(P) else Stability.NOT_STRICTLY_STABLE


# -- census -----------------------------------------------------------------------

@dataclass
class CensusResult:
    """Distinct characteristic polynomials of a family and their counts.

    The stability fields stay ``None`` until :func:`add_stability` runs.
    """

    polys: dict[CharPoly, int] = field(default_factory=dict)
    total_matrices: int = 0
    verdicts: dict[CharPoly, Stability] | None = None
    stable_polys: int | None = None
    stable_matrices: int | None = None
    max_stable_real_part: float | None = None

    @property
    def distinct(self) -> int:
        return len(self.polys)

    def merge(self, other: CensusResult) -> CensusResult:
        polys = dict(self.polys)
        for p, c in other.polys.items():
            polys[p] = polys.get(p, 0) + c
        return CensusResult(polys, self.total_matrices + other.total_matrices)

    def summary(self) -> dict:
        return {
            "total_matrices": self.total_matrices,
            "distinct": self.distinct,
            "stable_polys": self.stable_polys,
            "stable_matrices": self.stable_matrices,
            "max_stable_real_part": self.max_stable_real_part,
        }


def census(spec: FamilySpec, budget: int = DEFAULT_BUDGET, start: int = 0,
           stop: int | None = None, batch: int = _BATCH) -> CensusResult:
    """Exhaustive distinct-polynomial count over ``[start, stop)`` of a family."""
    size = spec.size
    if size > budget:
        raise BudgetExceededError(f"family size {size} exceeds budget {budget}")
    stop = size if stop is None else min(stop, size)
    ring = spec.ring
    keys, counts = [], []
    bigdict: dict[tuple, int] = {}
    for lo in range(start, stop, batch):
        hi = min(lo + batch, stop)
        digits = fam.digits_from_indices(spec, np.arange(lo, hi, dtype=np.int64))
        A, B = fam.exact_batch(spec, digits)
        ca, cb = charpoly_batch(ring, A, B)
        if ca.dtype == object:
            for ra, rb in zip(ca, cb):
                k = tuple(zip(map(int, ra), map(int, rb)))
                bigdict[k] = bigdict.get(k, 0) + 1
            continue
        rows = np.concatenate([ca, cb], axis=1)
        uniq, cnt = np.unique(rows, axis=0, return_counts=True)
        keys.append(uniq)
        counts.append(cnt)
    polys: dict[CharPoly, int] = {}
    if keys:
        allk = np.concatenate(keys)
        allc = np.concatenate(counts)
        uniq, inv = np.unique(allk, axis=0, return_inverse=True)
        tot = np.bincount(inv.ravel(), weights=allc, minlength=len(uniq)).astype(np.int64)
        d = spec.m + 1
        for row, c in zip(uniq.tolist(), tot.tolist()):
            polys[CharPoly(ring, tuple(zip(row[:d], row[d:])))] = int(c)
    for k, c in bigdict.items():
        p = CharPoly(ring, k)
        polys[p] = polys.get(p, 0) + c
    return CensusResult(polys, max(stop - start, 0))


def _max_real_root(p: CharPoly) -> float:
    return float(np.max(p.roots().real))


def _real_squares(polys: list[CharPoly]) -> list[list[int]]:
    """:func:`real_square` for many polynomials, vectorized per (ring, degree).

    Groups whose coefficients could overflow int64 fall back to the exact
    scalar path.
    """
    out: list = [None] * len(polys)
    for (ring, deg), idx in _group(polys).items():
        arr = np.array([polys[i].coeffs for i in idx], dtype=object)
        if int(np.abs(arr).max()) ** 2 * (deg + 1) * 8 >= 2 ** 62:
            for i in idx:
                out[i] = real_square(polys[i])
            continue
        arr = arr.astype(np.int64)
        a, b = arr[:, :, 0], arr[:, :, 1]
        ca, cb = (a - b, -b) if ring is Ring.EISEN else (a, -b)
        P = np.zeros((len(idx), 2 * deg + 1), dtype=np.int64)
        for i in range(deg + 1):
            for j in range(deg + 1):
                P[:, i + j] += _mul(ring, a[:, i], b[:, i], ca[:, j], cb[:, j])[0]
        for i, row in zip(idx, P.tolist()):
            out[i] = row
    return out


def _group(polys: list[CharPoly]) -> dict[tuple, list[int]]:
    groups: dict[tuple, list[int]] = {}
    for i, p in enumerate(polys):
        groups.setdefault((p.ring, p.degree), []).append(i)
    return groups


def add_stability(result: CensusResult) -> CensusResult:
    """Attach exact stability verdicts and the stable-root statistics."""
    verdicts: dict[CharPoly, Stability] = {}
    stable_polys = stable_mats = 0
    worst = None
    plist = list(result.polys)
    for p, P in zip(plist, _real_squares(plist)):
        cnt = result.polys[p]
        v = Stability.STABLE if _stable_real(P) else Stability.NOT_STRICTLY_STABLE
        verdicts[p] = v
        if v is Stability.STABLE:
            stable_polys += 1
            stable_mats += cnt
            r = _max_real_root(p)
            worst = r if worst is None else max(worst, r)
    result.verdicts = verdicts
    result.stable_polys = stable_polys
    result.stable_matrices = stable_mats
    result.max_stable_real_part = worst
    return result


def stable_census(spec: FamilySpec, budget: int = DEFAULT_BUDGET, **kw) -> CensusResult:
    return add_stability(census(spec, budget, **kw))


# -- serialization ------------------------------------------------------------------

def _sorted_polys(result: CensusResult) -> list[CharPoly]:
    return sorted(result.polys, key=lambda p: (p.ring.value, p.degree, p.coeffs))


def export_json(result: CensusResult, path, spec: FamilySpec | None = None) -> None:
    """Write the census as JSON, polynomials in canonical order."""
    entries = []
    for p in _sorted_polys(result):
        v = result.verdicts.get(p) if result.verdicts is not None else None
        entries.append({
            "ring": p.ring.value,
            "coeffs": [{"a": a, "b": b} for a, b in p.coeffs],
            "count": result.polys[p],
            "stable": None if v is None else v is Stability.STABLE,
        })
    doc = {"total_matrices": result.total_matrices,
           "distinct": result.distinct,
           "stable_polys": result.stable_polys,
           "stable_matrices": result.stable_matrices,
           "max_stable_real_part": result.max_stable_real_part,
           "polynomials": entries}
    if spec is not None:
        doc["family"] = spec.to_dict()
    Path(path).write_text(json.dumps(doc, indent=1, sort_keys=True) + "\n")


def import_json(path) -> CensusResult:
    doc = json.loads(Path(path).read_text())
    polys, verdicts = {}, {}
    have_verdicts = True
    for e in doc["polynomials"]:
        p = CharPoly(Ring(e["ring"]), tuple((c["a"], c["b"]) for c in e["coeffs"]))
        polys[p] = int(e["count"])
        if e.get("stable") is None:
            have_verdicts = False
        else:
            verdicts[p] = Stability.STABLE if e["stable"] else Stability.NOT_STRICTLY_STABLE
    return CensusResult(
        polys, int(doc["total_matrices"]),
        verdicts if (have_verdicts and polys and doc.get("stable_polys") is not None) else None,
        doc.get("stable_polys"), doc.get("stable_matrices"),
        doc.get("max_stable_real_part"))


def export_csv(result: CensusResult, path) -> None:
    """One row per polynomial: degree, interleaved a,b coefficients, count, stable."""
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        for p in _sorted_polys(result):
            v = result.verdicts.get(p) if result.verdicts is not None else None
            flat = [x for ab in p.coeffs for x in ab]
            stable = "" if v is None else int(v is Stability.STABLE)
            w.writerow([p.degree, *flat, result.polys[p], stable])


def census_from_matrices(mats: Iterable[MatrixInstance]) -> CensusResult:
    """Reference census by per-matrix Berkowitz; for tests and tiny families."""
    res = CensusResult()
    for A in mats:
        p = charpoly_general(A)
        res.polys[p] = res.polys.get(p, 0) + 1
        res.total_matrices += 1
    return res
