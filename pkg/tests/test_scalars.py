import cmath

import pytest
from hypothesis import given
from hypothesis import strategies as st

from bohemian.scalars import (CyclotomicScalar, Ring, RingMismatchError, eisenstein,
                              gaussian, roots_of_unity, scalar)

small = st.integers(-50, 50)


def elements(ring):
    if ring is Ring.INT:
        return small.map(lambda a: CyclotomicScalar(a, 0, ring))
    return st.tuples(small, small).map(lambda ab: CyclotomicScalar(*ab, ring))


rings = st.sampled_from(list(Ring))


@given(rings.flatmap(lambda r: st.tuples(elements(r), elements(r), elements(r))))
def test_ring_axioms(xyz):
    x, y, z = xyz
    assert x + y == y + x
    assert x * y == y * x
    assert (x + y) + z == x + (y + z)
    assert (x * y) * z == x * (y * z)
    assert x * (y + z) == x * y + x * z
    assert x + x.zero() == x and x * x.one() == x
    assert x - x == x.zero()


@given(rings.flatmap(lambda r: st.tuples(elements(r), elements(r))))
def test_complex_embedding_is_a_homomorphism(xy):
    x, y = xy
    assert abs(complex(x * y) - complex(x) * complex(y)) < 1e-9 * (1 + abs(complex(x * y)))
    assert abs(complex(x + y) - (complex(x) + complex(y))) < 1e-9
    assert abs(complex(x.conj()) - complex(x).conjugate()) < 1e-9


@given(rings.flatmap(elements))
def test_norm_is_modulus_squared(x):
    assert x.norm() == (x * x.conj()).a
    assert (x * x.conj()).b == 0
    assert abs(x.norm() - abs(complex(x)) ** 2) < 1e-9 * (1 + x.norm())


def test_eisenstein_conventions():
    w = eisenstein(0, 1)
    assert w * w == eisenstein(-1, -1)
    assert w ** 3 == eisenstein(1, 0)
    assert w.conj() == eisenstein(-1, -1)
    assert eisenstein(2, 1).norm() == 3
    assert abs(complex(w) - cmath.exp(2j * cmath.pi / 3)) < 1e-15


def test_gaussian_basics():
    i = gaussian(0, 1)
    assert i * i == gaussian(-1)
    assert gaussian(-1, 1).norm() == 2
    assert gaussian(3, 4).conj() == gaussian(3, -4)


@pytest.mark.parametrize("n", [1, 2, 3, 4, 6])
def test_roots_of_unity(n):
    rs = roots_of_unity(n)
    assert len(rs) == n and len(set(rs)) == n
    for r in rs:
        assert r ** n == r.one()
        assert r.is_unit() and r * r.inverse() == r.one()


def test_roots_of_unity_order():
    assert roots_of_unity(4) == [gaussian(1), gaussian(0, 1), gaussian(-1), gaussian(0, -1)]
    with pytest.raises(ValueError):
        roots_of_unity(5)


def test_inverse_of_non_unit():
    with pytest.raises(ZeroDivisionError):
        gaussian(1, 1).inverse()


def test_ring_mismatch():
    with pytest.raises(RingMismatchError):
        gaussian(1, 1) + eisenstein(1, 1)
    # plain integers promote
    assert gaussian(1, 1) + 2 == gaussian(3, 1)
    assert 2 * eisenstein(1, 1) == eisenstein(2, 2)


def test_int_ring_rejects_imaginary_part():
    with pytest.raises(ValueError):
        CyclotomicScalar(1, 1, Ring.INT)


def test_dict_round_trip():
    for x in (scalar(-3), gaussian(2, -5), eisenstein(-1, 4)):
        assert CyclotomicScalar.from_dict(x.to_dict()) == x
