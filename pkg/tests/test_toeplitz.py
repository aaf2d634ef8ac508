import math

import numpy as np
import pytest

from bohemian import family as fam
from bohemian.eigen import multiset_distance, polyroots
from bohemian.family import Population
from bohemian.scalars import eisenstein, gaussian, roots_of_unity
from bohemian.toeplitz import (LaurentSymbol, convergence_study, default_rho,
                               edge_perturbation_study, hausdorff_distance, one_sided_distance,
                               phi_grid, schmidt_spitzer_points, symbol_eval, symbol_image,
                               toeplitz_matrix, winding_number)

from conftest import spec

EXAMPLE_T = (1, -1, 1, 0, 1)
LONG_T = (1, -1, 1, -1, -1, -1, -1, 1, 1)
# one-sided distance from the m = 6 eigenvalues to the 101-angle curve,
# frozen at the first verified run
EXAMPLE_DELTA = 0.12169074414901894


@pytest.fixture(scope="module")
def example_curve():
    return schmidt_spitzer_points(EXAMPLE_T, 1.75, 101)


def test_symbol_eval_examples():
    assert symbol_eval(LaurentSymbol((1,), 1.0), 1j) == pytest.approx(2j)
    sym = LaurentSymbol(EXAMPLE_T, 1.75)
    direct = -1.75 + sum(t * (1 / 1.75) ** k for k, t in enumerate(EXAMPLE_T, start=1))
    assert abs(symbol_eval(sym, 1.0) - direct) < 1e-14
    theta = np.linspace(0, 2 * np.pi, 17)
    vals = symbol_eval(LaurentSymbol((0, 0), 1.0), np.exp(1j * theta))
    assert np.allclose(vals, -np.exp(-1j * theta)) and np.allclose(np.abs(vals), 1)
    with pytest.raises(ZeroDivisionError):
        symbol_eval(sym, 0)


def test_symbol_eval_matches_horner_oracle(rng):
    t = rng.normal(size=7) + 1j * rng.normal(size=7)
    sym = LaurentSymbol(tuple(t), 1.6)
    for z in rng.normal(size=20) + 1j * rng.normal(size=20):
        acc = 0
        for k in range(7, 0, -1):
            acc = acc * (z / 1.6) + t[k - 1]
        expected = acc * (z / 1.6) - 1.6 / z
        assert abs(symbol_eval(sym, z) - expected) <= 1e-14 * max(1, abs(expected))


def test_symbol_properties():
    sym = LaurentSymbol.from_sequence(EXAMPLE_T)
    assert sym.h == 5 and sym.m == 6 and sym.q == 1
    assert sym.rho == default_rho(EXAMPLE_T) == 2.0
    with pytest.raises(ValueError):
        LaurentSymbol((1,), 0.0)
    with pytest.raises(NotImplementedError):
        LaurentSymbol((1,), 2.0, q=2)


def test_phi_grid_excludes_zero():
    g = phi_grid(101)
    assert len(g) == 100 and np.all(g != 0) and g[0] == -np.pi and g[-1] == np.pi


def test_segment_oracle():
    c = schmidt_spitzer_points((1,), 1.5, 201)
    p = c.points
    assert len(p) > 0 and c.failed_phis == []
    assert np.all(np.abs(p.real) < 1e-6) and np.all(np.abs(p.imag) <= 2 + 1e-6)
    ys = np.sort(np.concatenate([p.imag, [-2.0, 2.0]]))
    assert np.diff(ys).max() < 0.05
    # each point is 2i cos(phi/2) for one of the angles
    expected = 2j * np.cos(c.cand_phi[c.cand_accepted] / 2)
    assert np.allclose(np.sort(np.abs(p.imag)), np.sort(np.abs(expected.imag)), atol=1e-8)


def test_empty_symbol_gives_empty_curve():
    c = schmidt_spitzer_points((0, 0, 0), 2.0, 11)
    assert len(c) == 0 and c.rejected == 0


def test_example_curve_encloses_spectrum(example_curve):
    assert example_curve.failed_phis == [] and len(example_curve) > 100
    ev = np.linalg.eigvals(toeplitz_matrix(EXAMPLE_T))
    env = symbol_image(LaurentSymbol(EXAMPLE_T, 1.75), 512)
    assert np.all(winding_number(env, ev) != 0)
    assert np.all(winding_number(env, example_curve.points) != 0)
    assert one_sided_distance(ev, example_curve.points) == pytest.approx(EXAMPLE_DELTA, rel=1e-9)


def test_hessenberg_radius_consistency(example_curve):
    assert np.all(np.abs(example_curve.points) <= 1 + 2 * math.sqrt(1) + 1e-6)
    c = schmidt_spitzer_points(LONG_T, None, 101)
    assert np.all(np.abs(c.points) <= 3 + 1e-6)
    c = schmidt_spitzer_points((1j, -1, 1 + 1j, 0, 1), None, 61)
    assert np.all(np.abs(c.points) <= 1 + 2 * 2 ** 0.25 + 1e-6)


def test_conjugation_symmetry():
    t = (1j, -1, 1, 0, 1j)
    a = schmidt_spitzer_points(t, 1.75, 101).points
    b = schmidt_spitzer_points(tuple(np.conj(t)), 1.75, 101).points
    assert len(a) == len(b)
    assert multiset_distance(np.conj(a), b) < 1e-8


def test_accepted_pairs_recheck(example_curve):
    sym = LaurentSymbol(EXAMPLE_T, 1.75)
    for lam in example_curve.points[::7]:
        v = np.sort(np.abs(polyroots(np.concatenate([[-1.75, -lam], sym.scaled]))))
        assert abs(v[0] - v[1]) <= 1e-8 * v[1] * 2


def test_symbol_image_examples():
    assert np.allclose(np.abs(symbol_image(LaurentSymbol((0, 0), 2.0), 32)), 4.0)
    img = symbol_image(LaurentSymbol((1,), 1.0), 65)
    psi = np.linspace(-np.pi, np.pi, 65)
    assert np.allclose(img, 2j * np.sin(psi))
    with pytest.raises(ValueError):
        symbol_image(LaurentSymbol((1,), 1.0), 2)


def test_winding_number():
    circle = np.exp(1j * np.linspace(0, 2 * np.pi, 200, endpoint=False))
    assert list(winding_number(circle, [0, 2, 0.5j])) == [1, 0, 1]
    assert list(winding_number(circle[::-1], [0])) == [-1]


def test_hausdorff_examples():
    A = np.array([1, 2j, 3])
    assert hausdorff_distance(A, A) == 0
    assert hausdorff_distance([0], [3, 4j]) == 4
    with pytest.raises(ValueError):
        hausdorff_distance([], [1])


def test_convergence_zero_padding_is_constant():
    out = convergence_study((1, -1), [3, 4, 5], rho=2.0, phi_count=41)
    assert out == [(4, 0.0), (5, 0.0)]
    with pytest.raises(ValueError):
        convergence_study((1,), [3, 2])


@pytest.mark.slow
def test_truncation_convergence():
    d = dict(convergence_study(LONG_T, range(2, 12), phi_count=101))
    assert d[10] < d[3] / 10
    assert d[11] == 0.0


def test_fixed_symbol_eigenvalues_approach_curve():
    curve = schmidt_spitzer_points(LONG_T, None, 401).points
    deltas = []
    for n in (10, 20, 40, 80):
        t = list(LONG_T) + [0] * (n - 1 - len(LONG_T))
        deltas.append(one_sided_distance(np.linalg.eigvals(toeplitz_matrix(t)), curve))
    assert all(b < a for a, b in zip(deltas, deltas[1:]))


def test_toeplitz_matrix_matches_family(quarter_roots):
    s = spec("UH_TOEPLITZ_ZERO_DIAG", 5, quarter_roots)
    A = fam.matrix_from_index(s, 123)
    t = [complex(A[0, k]) for k in range(1, 5)]
    assert np.array_equal(toeplitz_matrix(t), A.to_complex())


def test_edge_study_n2():
    t1 = gaussian(0, 1)
    out = edge_perturbation_study([t1], Population((gaussian(0),)))
    root = np.sqrt(-2j)
    assert multiset_distance(out["F"], [0, root, -root]) < 1e-12
    assert multiset_distance(out[gaussian(0)], out["F"]) == 0


def test_edge_study_shift_sign():
    """Q_{n+1} = F_n - (-1)^n t_n must match the recurrence with t_n set."""
    from bohemian.charpoly import charpoly_toeplitz_recurrence
    prefix = [eisenstein(1), eisenstein(0, 1)]
    popn = Population(tuple(roots_of_unity(3)))
    out = edge_perturbation_study(prefix, popn)
    for p in popn:
        q = charpoly_toeplitz_recurrence(prefix + [p])
        assert multiset_distance(out[p], polyroots(q.to_complex())) < 1e-10


def test_edge_study_cube_roots_split():
    prefix = [eisenstein(1), eisenstein(-1), eisenstein(0, 1), eisenstein(1)]
    popn = Population(tuple(roots_of_unity(3)))
    out = edge_perturbation_study(prefix, popn)
    for r in out["F"]:
        near = [np.min(np.abs(out[p] - r)) for p in popn]
        assert len(near) == 3 and max(near) < 1.5
    with pytest.raises(ValueError):
        edge_perturbation_study([], popn)
