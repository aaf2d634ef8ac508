"""Populations, structured Bohemian families and their enumeration.

Every family is a bijection between the integers ``0 <= idx < family_size``
and matrices: the free entry positions are listed row-major, and digit ``j``
of ``idx`` (mixed radix, least significant first) selects the population
element placed at free position ``j``. Mirrored entries (symmetric copies,
skew negations, Toeplitz diagonals) are filled from the same digit.

Besides the scalar API (:func:`matrix_from_index`, :func:`sample_uniform`),
the module offers batch builders that turn a ``(N, F)`` array of digits into
stacks of numeric or exact matrices; those drive the exhaustive sweeps.
"""

from __future__ import annotations

import enum
import json
import math
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterator, Sequence

import numpy as np

from .scalars import CyclotomicScalar, Ring

__all__ = [
    "Kind", "Population", "FamilySpec", "MatrixInstance",
    "free_entry_positions", "free_entry_count", "family_size",
    "matrix_from_index", "index_from_matrix", "iter_family",
    "sample_uniform", "sample_digits", "digits_from_indices",
    "complex_batch", "exact_batch", "normalize_subdiagonal",
    "matrix_height", "validate_structure", "StructureError",
    "SAMPLE_BLOCK",
]

SAMPLE_BLOCK = 1 << 16


class Kind(enum.Enum):
    DENSE = "DENSE"
    SYMMETRIC = "SYMMETRIC"
    SKEW_SYMMETRIC_TRIDIAGONAL = "SKEW_SYMMETRIC_TRIDIAGONAL"
    UPPER_HESSENBERG = "UPPER_HESSENBERG"
    UNIT_UH_ZERO_DIAG = "UNIT_UH_ZERO_DIAG"
    UH_TOEPLITZ_ZERO_DIAG = "UH_TOEPLITZ_ZERO_DIAG"


class StructureError(ValueError):
    """A matrix violates the structural rules of its family."""


@dataclass(frozen=True)
class Population:
    """Ordered set of distinct exact scalars sharing one ring tag."""

    elements: tuple[CyclotomicScalar, ...]

    def __post_init__(self):
        elems = tuple(self.elements)
        object.__setattr__(self, "elements", elems)
        if not elems:
            raise ValueError("population must be nonempty")
        rings = {e.ring for e in elems}
        if len(rings) != 1:
            raise ValueError("population elements must share one ring tag")
        if len(set(elems)) != len(elems):
            raise ValueError("population elements must be distinct")

    @property
    def ring(self) -> Ring:
        return self.elements[0].ring

    @property
    def bound(self) -> float:
        """Largest modulus ``B`` among the elements."""
        return max(abs(e) for e in self.elements)

    def __len__(self):
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __getitem__(self, i):
        return self.elements[i]

    def index(self, x: CyclotomicScalar) -> int:
        return self.elements.index(x)

    @cached_property
    def complex_values(self) -> np.ndarray:
        return np.array([complex(e) for e in self.elements], dtype=np.complex128)

    @cached_property
    def exact_values(self) -> tuple[np.ndarray, np.ndarray]:
        return (np.array([e.a for e in self.elements], dtype=np.int64),
                np.array([e.b for e in self.elements], dtype=np.int64))

    def to_list(self) -> list[dict]:
        return [e.to_dict() for e in self.elements]

    @classmethod
    def from_list(cls, items: Sequence[dict]) -> Population:
        return cls(tuple(CyclotomicScalar.from_dict(d) for d in items))


def _promote(x: CyclotomicScalar, ring: Ring) -> CyclotomicScalar:
    if x.ring is ring:
        return x
    if x.ring is Ring.INT:
        return CyclotomicScalar(x.a, 0, ring)
    raise ValueError(f"cannot place a {x.ring.value} scalar in a {ring.value} family")


@dataclass(frozen=True)
class FamilySpec:
    """A structured Bohemian family.

    Parameters
    ----------
    kind : Kind
        Matrix structure.
    m : int
        Dimension.
    population : Population
        Entry population for the free positions.
    subdiagonal_value : CyclotomicScalar
        Fixed subdiagonal for the Hessenberg kinds (unless
        ``free_subdiagonal``).
    diagonal_population : Population, optional
        Separate population for the diagonal of ``UPPER_HESSENBERG``.
    free_diagonal, free_subdiagonal : bool
        Which bands of ``UPPER_HESSENBERG`` are free. A fixed diagonal is 0.
    """

    kind: Kind
    m: int
    population: Population
    subdiagonal_value: CyclotomicScalar = CyclotomicScalar(-1)
    diagonal_population: Population | None = None
    free_diagonal: bool = True
    free_subdiagonal: bool = False

    def __post_init__(self):
        object.__setattr__(self, "kind", Kind(self.kind))
        if not isinstance(self.m, int) or self.m < 1:
            raise ValueError("dimension m must be a positive integer")
        ring = self.population.ring
        object.__setattr__(self, "subdiagonal_value",
                           _promote(self.subdiagonal_value, ring))
        if self.diagonal_population is not None:
            if self.diagonal_population.ring is not ring:
                raise ValueError("diagonal population ring differs from population ring")
            if self.kind is not Kind.UPPER_HESSENBERG:
                raise ValueError("diagonal_population only applies to UPPER_HESSENBERG")

    @property
    def ring(self) -> Ring:
        return self.population.ring

    @cached_property
    def _layout(self) -> _Layout:
        return _Layout.build(self)

    @property
    def free_positions(self) -> list[tuple[int, int]]:
        return list(self._layout.positions)

    @property
    def radices(self) -> tuple[int, ...]:
        return self._layout.radices

    @property
    def size(self) -> int:
        return math.prod(self._layout.radices)

    @property
    def bound(self) -> float:
        """Largest entry modulus over all members (fixed entries included)."""
        mags = [self.population.bound]
        if self.diagonal_population is not None:
            mags.append(self.diagonal_population.bound)
        mags.extend(abs(x) for _, x in self._layout.fixed)
        return max(mags)

    # -- serialization ---------------------------------------------------------

    def to_dict(self) -> dict:
        d = {
            "kind": self.kind.value,
            "m": self.m,
            "population": self.population.to_list(),
            "subdiagonal_value": self.subdiagonal_value.to_dict(),
            "flags": {"free_diagonal": self.free_diagonal,
                      "free_subdiagonal": self.free_subdiagonal},
        }
        if self.diagonal_population is not None:
            d["diagonal_population"] = self.diagonal_population.to_list()
        return d

    @classmethod
    def from_dict(cls, d: dict) -> FamilySpec:
        flags = d.get("flags", {})
        diag = d.get("diagonal_population")
        sub = d.get("subdiagonal_value")
        return cls(
            kind=Kind(d["kind"]),
            m=int(d["m"]),
            population=Population.from_list(d["population"]),
            subdiagonal_value=(CyclotomicScalar.from_dict(sub) if sub is not None
                               else CyclotomicScalar(-1)),
            diagonal_population=Population.from_list(diag) if diag is not None else None,
            free_diagonal=bool(flags.get("free_diagonal", True)),
            free_subdiagonal=bool(flags.get("free_subdiagonal", False)),
        )

    def dumps(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True)

    @classmethod
    def loads(cls, text: str) -> FamilySpec:
        return cls.from_dict(json.loads(text))


@dataclass(frozen=True)
class _Layout:
    """Precomputed placement of free digits and fixed entries."""

    positions: tuple[tuple[int, int], ...]
    radices: tuple[int, ...]
    # per free position: population used and the cells it writes with sign
    pops: tuple[Population, ...]
    targets: tuple[tuple[tuple[int, int, int], ...], ...]
    fixed: tuple[tuple[tuple[int, int], CyclotomicScalar], ...]

    @classmethod
    def build(cls, spec: FamilySpec) -> _Layout:
        m, kind, pop = spec.m, spec.kind, spec.population
        positions, pops, targets, fixed = [], [], [], []

        def free(i, j, cells, p=pop):
            positions.append((i, j))
            pops.append(p)
            targets.append(tuple(cells))

        if kind is Kind.DENSE:
            for i in range(m):
                for j in range(m):
                    free(i, j, [(i, j, 1)])
        elif kind is Kind.SYMMETRIC:
            for i in range(m):
                for j in range(i, m):
                    cells = [(i, j, 1)] if i == j else [(i, j, 1), (j, i, 1)]
                    free(i, j, cells)
        elif kind is Kind.SKEW_SYMMETRIC_TRIDIAGONAL:
            for i in range(m - 1):
                free(i, i + 1, [(i, i + 1, 1), (i + 1, i, -1)])
        elif kind is Kind.UPPER_HESSENBERG:
            dpop = spec.diagonal_population or pop
            for i in range(m):
                for j in range(max(i - 1, 0), m):
                    if j == i - 1:
                        if spec.free_subdiagonal:
                            free(i, j, [(i, j, 1)])
                        else:
                            fixed.append(((i, j), spec.subdiagonal_value))
                    elif j == i:
                        if spec.free_diagonal:
                            free(i, j, [(i, j, 1)], dpop)
                    else:
                        free(i, j, [(i, j, 1)])
        elif kind is Kind.UNIT_UH_ZERO_DIAG:
            for i in range(m):
                for j in range(i + 1, m):
                    free(i, j, [(i, j, 1)])
            for i in range(1, m):
                fixed.append(((i, i - 1), spec.subdiagonal_value))
        elif kind is Kind.UH_TOEPLITZ_ZERO_DIAG:
            for k in range(1, m):
                free(0, k, [(i, i + k, 1) for i in range(m - k)])
            for i in range(1, m):
                fixed.append(((i, i - 1), spec.subdiagonal_value))
        else:  # pragma: no cover
            raise ValueError(kind)
        return cls(tuple(positions), tuple(len(p) for p in pops), tuple(pops),
                   tuple(targets), tuple(fixed))


@dataclass(frozen=True)
class MatrixInstance:
    """An exact ``m x m`` matrix of scalars, optionally tagged with its index."""

    m: int
    entries: tuple[tuple[CyclotomicScalar, ...], ...]
    source_index: int | None = field(default=None, compare=False)

    @property
    def ring(self) -> Ring:
        return self.entries[0][0].ring

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    def to_complex(self) -> np.ndarray:
        return np.array([[complex(x) for x in row] for row in self.entries],
                        dtype=np.complex128)

    @classmethod
    def from_rows(cls, rows, ring: Ring | None = None) -> MatrixInstance:
        """Build from nested sequences of scalars, ints, or (for the Gaussian
        ring) complex numbers with integral parts."""
        rows = [list(r) for r in rows]
        if ring is None:
            found = [x.ring for r in rows for x in r if isinstance(x, CyclotomicScalar)]
            ring = found[0] if found else Ring.INT
        conv = tuple(tuple(_entry(x, ring) for x in r) for r in rows)
        m = len(conv)
        if any(len(r) != m for r in conv):
            raise ValueError("matrix must be square")
        return cls(m, conv)


def _entry(x, ring: Ring) -> CyclotomicScalar:
    if isinstance(x, CyclotomicScalar):
        return x
    z = complex(x)
    if z.real != int(z.real) or z.imag != int(z.imag):
        raise ValueError(f"entry {x!r} has non-integral parts")
    if z.imag and ring is not Ring.GAUSS:
        raise ValueError(f"complex entry {x!r} needs the Gaussian ring")
    return CyclotomicScalar(int(z.real), int(z.imag), ring)


def free_entry_positions(spec: FamilySpec) -> list[tuple[int, int]]:
    """Free (row, col) positions, 0-based, in enumeration order."""
    return spec.free_positions


def free_entry_count(spec: FamilySpec) -> int:
    return len(spec.radices)


def family_size(spec: FamilySpec) -> int:
    return spec.size


def _check_index(spec: FamilySpec, idx: int) -> int:
    idx = int(idx)
    if not 0 <= idx < spec.size:
        raise IndexError(f"index {idx} outside family of size {spec.size}")
    return idx


def matrix_from_index(spec: FamilySpec, idx: int) -> MatrixInstance:
    """Decode a family index into its matrix (exact big-integer arithmetic)."""
    idx = _check_index(spec, idx)
    lay = spec._layout
    zero = CyclotomicScalar(0, 0, spec.ring)
    A = [[zero] * spec.m for _ in range(spec.m)]
    for (r, c), x in lay.fixed:
        A[r][c] = x
    rest = idx
    for radix, pop, cells in zip(lay.radices, lay.pops, lay.targets):
        rest, d = divmod(rest, radix)
        x = pop[d]
        for r, c, sign in cells:
            A[r][c] = x if sign > 0 else -x
    return MatrixInstance(spec.m, tuple(tuple(row) for row in A), idx)


def index_from_matrix(spec: FamilySpec, A: MatrixInstance) -> int:
    """Inverse of :func:`matrix_from_index`; validates structure as well."""
    validate_structure(spec, A)
    lay = spec._layout
    idx, scale = 0, 1
    for (r, c), radix, pop in zip(lay.positions, lay.radices, lay.pops):
        try:
            d = pop.index(A[r, c])
        except ValueError:
            raise StructureError(f"entry {A[r, c]} at {(r, c)} not in population") from None
        idx += d * scale
        scale *= radix
    return idx


def validate_structure(spec: FamilySpec, A: MatrixInstance) -> None:
    """Raise :class:`StructureError` unless ``A`` belongs to the family."""
    if A.m != spec.m:
        raise StructureError(f"dimension {A.m} != {spec.m}")
    lay = spec._layout
    zero = CyclotomicScalar(0, 0, spec.ring)
    expected: dict[tuple[int, int], object] = {}
    for (r, c), x in lay.fixed:
        expected[(r, c)] = x
    for (r0, c0), pop, cells in zip(lay.positions, lay.pops, lay.targets):
        x = A[r0, c0]
        if x not in pop.elements:
            raise StructureError(f"entry {x} at {(r0, c0)} not in population")
        for r, c, sign in cells:
            expected[(r, c)] = x if sign > 0 else -x
    for i in range(spec.m):
        for j in range(spec.m):
            want = expected.get((i, j), zero)
            if A[i, j] != want:
                raise StructureError(
                    f"entry ({i},{j}) = {A[i, j]} violates {spec.kind.value} structure")


def iter_family(spec: FamilySpec, start: int = 0,
                stop: int | None = None) -> Iterator[MatrixInstance]:
    stop = spec.size if stop is None else min(stop, spec.size)
    for idx in range(start, stop):
        yield matrix_from_index(spec, idx)


# -- batch machinery ------------------------------------------------------------

def digits_from_indices(spec: FamilySpec, indices) -> np.ndarray:
    """Mixed-radix digits, shape ``(N, F)``, of an int64 index array."""
    idx = np.asarray(indices, dtype=np.int64)
    radices = np.array(spec.radices, dtype=np.int64)
    if spec.size >= 2**63:
        raise OverflowError("family too large for vectorized index decoding")
    out = np.empty((idx.shape[0], radices.size), dtype=np.int64)
    rest = idx.copy()
    for j, r in enumerate(radices):
        rest, out[:, j] = np.divmod(rest, r)
    return out


def _block_digits(spec: FamilySpec, seed: int, block: int) -> np.ndarray:
    rng = np.random.Generator(np.random.PCG64(np.random.SeedSequence([seed, block])))
    radices = np.array(spec.radices, dtype=np.int64)
    if radices.size == 0:
        return np.zeros((SAMPLE_BLOCK, 0), dtype=np.int64)
    return rng.integers(0, radices, size=(SAMPLE_BLOCK, radices.size), dtype=np.int64)


def sample_digits(spec: FamilySpec, seed: int, count: int, start: int = 0) -> np.ndarray:
    """Digits of samples ``start .. start+count-1`` of the ``seed`` stream.

    The stream is cut into fixed blocks, each with its own generator keyed
    by ``(seed, block)``, so any slice can be produced independently.
    """
    if count < 0 or start < 0:
        raise ValueError("count and start must be nonnegative")
    F = len(spec.radices)
    if count == 0:
        return np.zeros((0, F), dtype=np.int64)
    first, last = start // SAMPLE_BLOCK, (start + count - 1) // SAMPLE_BLOCK
    parts = [_block_digits(spec, seed, b) for b in range(first, last + 1)]
    allrows = np.concatenate(parts) if len(parts) > 1 else parts[0]
    off = start - first * SAMPLE_BLOCK
    return allrows[off:off + count]


def sample_uniform(spec: FamilySpec, seed: int, count: int,
                   start: int = 0) -> Iterator[MatrixInstance]:
    """Stream of ``count`` i.i.d. uniform family members."""
    done = 0
    while done < count:
        n = min(SAMPLE_BLOCK, count - done)
        digits = sample_digits(spec, seed, n, start + done)
        for row in digits:
            yield _matrix_from_digits(spec, row)
        done += n


def _matrix_from_digits(spec: FamilySpec, digits) -> MatrixInstance:
    idx, scale = 0, 1
    for d, r in zip(digits, spec.radices):
        idx += int(d) * scale
        scale *= r
    return matrix_from_index(spec, idx)


def complex_batch(spec: FamilySpec, digits: np.ndarray) -> np.ndarray:
    """Stack of complex128 matrices, shape ``(N, m, m)``, from digit rows."""
    lay = spec._layout
    n, m = digits.shape[0], spec.m
    out = np.zeros((n, m, m), dtype=np.complex128)
    for (r, c), x in lay.fixed:
        out[:, r, c] = complex(x)
    for j, (pop, cells) in enumerate(zip(lay.pops, lay.targets)):
        vals = pop.complex_values[digits[:, j]]
        for r, c, sign in cells:
            out[:, r, c] = vals if sign > 0 else -vals
    return out


def exact_batch(spec: FamilySpec, digits: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Exact ``(a, b)`` int64 component stacks, each ``(N, m, m)``."""
    lay = spec._layout
    n, m = digits.shape[0], spec.m
    A = np.zeros((n, m, m), dtype=np.int64)
    B = np.zeros((n, m, m), dtype=np.int64)
    for (r, c), x in lay.fixed:
        A[:, r, c] = x.a
        B[:, r, c] = x.b
    for j, (pop, cells) in enumerate(zip(lay.pops, lay.targets)):
        pa, pb = pop.exact_values
        va, vb = pa[digits[:, j]], pb[digits[:, j]]
        for r, c, sign in cells:
            A[:, r, c] = va if sign > 0 else -va
            B[:, r, c] = vb if sign > 0 else -vb
    return A, B


# -- structural operations ----------------------------------------------------

def normalize_subdiagonal(H: MatrixInstance) -> MatrixInstance:
    """Diagonal similarity ``D H D^-1`` making every subdiagonal entry 1.

    ``D = diag(s_1, ..., s_m)`` with ``s_1 = 1`` and
    ``s_{k+1} = s_k * conj(h_{k+1,k})``; the subdiagonal must consist of
    units (roots of unity in these rings).
    """
    m = H.m
    for i in range(m):
        for j in range(i - 1):
            if not H[i, j].is_zero():
                raise StructureError("matrix is not upper Hessenberg")
    s = [H[0, 0].one()]
    for k in range(1, m):
        h = H[k, k - 1]
        if h.is_zero():
            raise StructureError(f"reducible: zero subdiagonal at row {k}")
        if not h.is_unit():
            raise StructureError(f"subdiagonal entry {h} is not a unit")
        s.append(s[-1] * h.conj())
    rows = tuple(
        tuple(s[i] * H[i, j] * s[j].conj() for j in range(m)) for i in range(m))
    return MatrixInstance(m, rows, H.source_index)


def matrix_height(A: MatrixInstance) -> float:
    """Largest entry modulus."""
    return max(abs(x) for row in A.entries for x in row)
