"""Exact quadratic-integer scalars used as Bohemian matrix entries.

A scalar is ``a + b*tau`` with integer ``a``, ``b`` and ``tau`` fixed by the
ring tag: absent for plain integers, ``i`` for Gaussian integers and
``omega = exp(2*pi*i/3)`` for Eisenstein integers.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

__all__ = ["Ring", "CyclotomicScalar", "RingMismatchError", "scalar",
           "gaussian", "eisenstein", "roots_of_unity"]

_HALF_SQRT3 = math.sqrt(3.0) / 2.0


class Ring(enum.Enum):
    INT = "INT"
    GAUSS = "GAUSS"
    EISEN = "EISEN"


class RingMismatchError(TypeError):
    """Arithmetic between scalars carrying different ring tags."""


@dataclass(frozen=True, order=True)
class CyclotomicScalar:
    """Immutable exact scalar ``a + b*tau``.

    Python ``int`` operands are promoted into the scalar's ring. Mixing two
    different ring tags raises :class:`RingMismatchError`.
    """

    a: int
    b: int = 0
    ring: Ring = Ring.INT

    def __post_init__(self):
        if not isinstance(self.a, int) or not isinstance(self.b, int):
            raise TypeError("scalar components must be integers")
        if self.ring is Ring.INT and self.b != 0:
            raise ValueError("INT scalars must have b == 0")

    # -- construction helpers -------------------------------------------------

    def _coerce(self, other) -> CyclotomicScalar | None:
        if isinstance(other, CyclotomicScalar):
            if other.ring is not self.ring:
                raise RingMismatchError(
                    f"cannot combine {self.ring.value} with {other.ring.value}")
            return other
        if isinstance(other, int) and not isinstance(other, bool):
            return CyclotomicScalar(other, 0, self.ring)
        return None

    def zero(self) -> CyclotomicScalar:
        return CyclotomicScalar(0, 0, self.ring)

    def one(self) -> CyclotomicScalar:
        return CyclotomicScalar(1, 0, self.ring)

    # -- ring operations ------------------------------------------------------

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return CyclotomicScalar(self.a + o.a, self.b + o.b, self.ring)

    __radd__ = __add__

    def __neg__(self):
        return CyclotomicScalar(-self.a, -self.b, self.ring)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return CyclotomicScalar(self.a - o.a, self.b - o.b, self.ring)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o - self

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        a, b, c, d = self.a, self.b, o.a, o.b
        if self.ring is Ring.EISEN:
            # omega**2 = -omega - 1
            bd = b * d
            return CyclotomicScalar(a * c - bd, a * d + b * c - bd, self.ring)
        return CyclotomicScalar(a * c - b * d, a * d + b * c, self.ring)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        result, base = self.one(), self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def conj(self) -> CyclotomicScalar:
        if self.ring is Ring.EISEN:
            # conj(omega) = omega**2 = -1 - omega
            return CyclotomicScalar(self.a - self.b, -self.b, self.ring)
        return CyclotomicScalar(self.a, -self.b, self.ring)

    def norm(self) -> int:
        """Exact squared modulus ``conj(x) * x`` as a rational integer."""
        a, b = self.a, self.b
        if self.ring is Ring.EISEN:
            return a * a - a * b + b * b
        return a * a + b * b

    def is_unit(self) -> bool:
        return self.norm() == 1

    def inverse(self) -> CyclotomicScalar:
        if not self.is_unit():
            raise ZeroDivisionError(f"{self!r} is not a unit of its ring")
        return self.conj()

    def is_zero(self) -> bool:
        return self.a == 0 and self.b == 0

    def is_real(self) -> bool:
        return self.b == 0

    def __bool__(self):
        return not self.is_zero()

    def __abs__(self) -> float:
        return math.sqrt(self.norm())

    def __complex__(self) -> complex:
        if self.ring is Ring.EISEN:
            return complex(self.a - 0.5 * self.b, self.b * _HALF_SQRT3)
        return complex(self.a, self.b)

    def to_complex(self) -> complex:
        return complex(self)

    def __str__(self):
        if self.ring is Ring.INT or self.b == 0:
            return str(self.a)
        sym = "i" if self.ring is Ring.GAUSS else "w"
        if self.a == 0:
            return f"{self.b}{sym}"
        return f"{self.a}{self.b:+d}{sym}"

    def to_dict(self) -> dict:
        return {"a": self.a, "b": self.b, "ring": self.ring.value}

    @classmethod
    def from_dict(cls, d: dict) -> CyclotomicScalar:
        return cls(int(d["a"]), int(d.get("b", 0)), Ring(d.get("ring", "INT")))


def scalar(a: int, b: int = 0, ring: Ring | str = Ring.INT) -> CyclotomicScalar:
    return CyclotomicScalar(a, b, Ring(ring))


def gaussian(a: int, b: int = 0) -> CyclotomicScalar:
    return CyclotomicScalar(a, b, Ring.GAUSS)


def eisenstein(a: int, b: int = 0) -> CyclotomicScalar:
    return CyclotomicScalar(a, b, Ring.EISEN)


def roots_of_unity(n: int) -> list[CyclotomicScalar]:
    """The ``n``-th roots of unity for ``n`` in {1, 2, 3, 4, 6}, in angle order."""
    if n == 1:
        return [CyclotomicScalar(1, 0, Ring.INT)]
    if n == 2:
        return [CyclotomicScalar(1, 0, Ring.INT), CyclotomicScalar(-1, 0, Ring.INT)]
    if n == 4:
        return [gaussian(1), gaussian(0, 1), gaussian(-1), gaussian(0, -1)]
    if n == 3:
        return [eisenstein(1), eisenstein(0, 1), eisenstein(-1, -1)]
    if n == 6:
        return [eisenstein(1), eisenstein(1, 1), eisenstein(0, 1),
                eisenstein(-1), eisenstein(-1, -1), eisenstein(0, -1)]
    raise ValueError(f"{n}-th roots of unity are not representable exactly")
