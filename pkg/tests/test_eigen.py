import cmath

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from bohemian import charpoly as cp
from bohemian import family as fam
from bohemian.eigen import (ComplexPoly, ConvergenceError, SingularMatrixError, cluster_roots,
                            eigenvalues, eigenvalues_batch, hessenberg, inverse_corner,
                            inverse_corner_batch, inverse_corner_toeplitz, multiset_distance,
                            polyroots, polyval)
from bohemian.scalars import Ring, gaussian, roots_of_unity

from conftest import spec


def test_eigenvalues_trivial():
    ev = eigenvalues(np.diag([1, 1j, -2])).values
    assert multiset_distance(ev, [1, 1j, -2]) < 1e-15
    ev = eigenvalues(np.array([[0, 1], [-1, 0]])).values
    assert multiset_distance(ev, [1j, -1j]) < 1e-15
    assert eigenvalues(np.array([[3.5]])).values[0] == 3.5


def test_eigenvalues_random_against_lapack(rng):
    for m in (2, 3, 5, 8, 16, 32):
        for _ in range(5):
            A = rng.normal(size=(m, m)) + 1j * rng.normal(size=(m, m))
            sp = eigenvalues(A)
            assert len(sp) == m
            assert multiset_distance(sp.values, np.linalg.eigvals(A)) < 1e-10 * m
            assert sp.residual_bound < 1e-12 * np.abs(A).sum()


def test_eigenvalue_trace_and_determinant(rng):
    s = spec("DENSE", 6, fam.Population(tuple(roots_of_unity(4))))
    for idx in rng.integers(0, 2 ** 62, 20):
        A = fam.matrix_from_index(s, int(idx) % s.size)
        ev = eigenvalues(A.to_complex()).values
        p = cp.charpoly_general(A)
        assert abs(ev.sum() - np.trace(A.to_complex())) < 1e-8 * 6
        det = complex(p.scalars()[0]) * (-1) ** 6
        assert abs(np.prod(ev) - det) < 1e-8 * max(1, abs(det))


def test_real_matrix_spectrum_is_conjugate_closed(rng):
    for _ in range(10):
        A = rng.integers(-1, 2, size=(7, 7)).astype(float)
        ev = eigenvalues(A).values
        assert multiset_distance(ev, ev.conj()) < 1e-8


def test_eigenvalues_match_polyroots_of_charpoly(rng):
    # a population without 0 keeps defective (ill-conditioned) members rare
    box = fam.Population(tuple(gaussian(a, b) for a in range(-3, 4) for b in range(-3, 4)))
    s = spec("DENSE", 6, box)
    for idx in rng.integers(0, 2 ** 62, 30):
        A = fam.matrix_from_index(s, int(idx))
        p = cp.charpoly_general(A)
        assert multiset_distance(eigenvalues(A.to_complex()).values,
                                 polyroots(p.to_complex())) < 1e-8


def test_hessenberg_preserves_spectrum(rng):
    A = rng.normal(size=(9, 9)) + 1j * rng.normal(size=(9, 9))
    H = hessenberg(A)
    assert np.allclose(np.tril(H, -2), 0)
    assert multiset_distance(np.linalg.eigvals(H), np.linalg.eigvals(A)) < 1e-10


def test_eigenvalues_rejects_bad_input():
    with pytest.raises(ValueError):
        eigenvalues(np.zeros((2, 3)))
    with pytest.raises(ValueError):
        eigenvalues(np.array([[np.nan]]))


def test_eigenvalues_cap_signals():
    with pytest.raises(ConvergenceError):
        eigenvalues(np.random.default_rng(0).normal(size=(6, 6)), sweep_factor=0)


def test_eigenvalues_batch_shape():
    assert eigenvalues_batch(np.zeros((0, 3, 3))).shape == (0, 3)
    assert eigenvalues_batch(np.eye(4)[None].repeat(2, 0)).shape == (2, 4)


def test_polyroots_examples():
    assert multiset_distance(polyroots([1, 0, 1]), [1j, -1j]) < 1e-15
    for r in polyroots([1j, 0, 1]):
        assert abs(r * r + 1j) < 1e-12
    assert multiset_distance(polyroots([0, 0, 2, 1]), [0, 0, -2]) == 0


def test_polyroots_quadratic_closed_form():
    """With w = e^{i theta}, z = (w + 1 +/- sqrt(w^2 - 6w + 1)) / (4w)
    solves 2w z^2 - (w + 1) z + 1 = 0 (the all-ones symbol quadratic)."""
    for theta in (np.pi, 0.3, 2.0):
        w = cmath.exp(1j * theta)
        disc = cmath.sqrt(w * w - 6 * w + 1)
        closed = [(w + 1 + disc) / (4 * w), (w + 1 - disc) / (4 * w)]
        assert multiset_distance(polyroots([1, -(w + 1), 2 * w]), closed) < 1e-14
    assert multiset_distance(polyroots([1, 0, -2]), [np.sqrt(2) / 2, -np.sqrt(2) / 2]) < 1e-15


def test_polyroots_residuals(rng):
    for deg in (3, 10, 25, 40):
        c = rng.normal(size=deg + 1) + 1j * rng.normal(size=deg + 1)
        r = polyroots(c)
        assert len(r) == deg
        assert multiset_distance(r, np.roots(c[::-1])) < 1e-8
        scale = np.polyval(np.abs(c[::-1]), np.abs(r))
        assert np.all(np.abs(polyval(c, r)) <= 1e-12 * scale)


def test_polyroots_multiple_roots_and_clusters():
    c = np.poly([2.0, 2.0, 2.0, -1.0])[::-1]
    r = polyroots(c)
    assert multiset_distance(r, [2, 2, 2, -1]) < 1e-4
    cl = cluster_roots(r, rtol=1e-4)
    assert sorted(mult for _, mult in cl) == [1, 3]


def test_polyroots_bad_input():
    with pytest.raises(ValueError):
        polyroots([1])
    with pytest.raises(ValueError):
        ComplexPoly([1, 0])


def test_inverse_corner_examples():
    assert inverse_corner(np.eye(3)) == 1
    assert inverse_corner(np.array([[0, 1j], [-1, 0]])) == 0
    with pytest.raises(SingularMatrixError):
        inverse_corner(np.ones((2, 2)))


def test_inverse_corner_batch_matches_solve(rng):
    A = rng.normal(size=(40, 6, 6)) + 1j * rng.normal(size=(40, 6, 6))
    vals, ok = inverse_corner_batch(A)
    assert ok.all()
    assert np.allclose(vals, np.linalg.inv(A)[:, 0, 0], rtol=1e-10, atol=1e-12)


def test_inverse_corner_toeplitz_orientation():
    # m = 2: the corner is exactly 0 and Q_1(0) = 0 sits in the numerator
    assert inverse_corner_toeplitz([gaussian(0, 1)]) == 0
    with pytest.raises(SingularMatrixError):
        inverse_corner_toeplitz([gaussian(0), gaussian(0)])


@pytest.mark.parametrize("m", [3, 4, 5])
def test_inverse_corner_toeplitz_matches_direct(m, quarter_roots):
    s = spec("UH_TOEPLITZ_ZERO_DIAG", m, quarter_roots)
    for idx in range(s.size):
        A = fam.matrix_from_index(s, idx)
        t = [A[0, k] for k in range(1, m)]
        try:
            direct = inverse_corner(A.to_complex())
        except SingularMatrixError:
            with pytest.raises(SingularMatrixError):
                inverse_corner_toeplitz(t)
            continue

        assert abs(inverse_corner_toeplitz(t) - direct) < 1e-12


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 8), st.integers(0, 2 ** 32 - 1))
def test_own_qr_matches_lapack_property(m, seed):
    g = np.random.default_rng(seed)
    A = g.integers(-3, 4, size=(m, m)) + 1j * g.integers(-3, 4, size=(m, m))
    # integer matrices can be defective; compare through the exact charpoly instead
    from bohemian.family import MatrixInstance
    M = MatrixInstance.from_rows(A.tolist(), Ring.GAUSS)
    ev = eigenvalues(A).values
    pr = polyroots(cp.charpoly_general(M).to_complex())
    assert multiset_distance(ev, pr) < 1e-4
