import hashlib

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from bohemian import render as rd
from bohemian.render import DensityGrid, Window

UNIT = Window(-1, 1, -1, 1)


def grid(w=2, h=2, window=UNIT, dtype=np.int64):
    return DensityGrid(w, h, window, dtype)


def test_window_validation():
    with pytest.raises(ValueError):
        Window(1, 1, 0, 1)
    with pytest.raises(ValueError):
        Window(0, 1, 2, 1)
    assert Window.parse("-2.5,-1.5,0,1") == Window(-2.5, -1.5, 0, 1)
    with pytest.raises(ValueError):
        Window.parse("1,2,3")


def test_half_open_cells():
    g = rd.accumulate(grid(), [0j])
    assert g.counts[1, 1] == 1 and g.total_in == 1
    g = rd.accumulate(grid(), [1 + 0j, 0.5 + 1j, complex(np.nan, 0)])
    assert g.total_in == 0 and g.total_out == 3
    g = rd.accumulate(grid(), [-1 - 1j])
    assert g.counts[0, 0] == 1


def test_accumulate_additive(rng):
    a = rng.normal(size=500) + 1j * rng.normal(size=500)
    b = rng.normal(size=300) + 1j * rng.normal(size=300)
    g1 = rd.accumulate(rd.accumulate(grid(16, 9), a), b)
    g2 = rd.accumulate(grid(16, 9), np.concatenate([b, a]))
    assert g1 == g2
    assert g1.total_in + g1.total_out == 800
    assert g1.counts.sum() == g1.total_in


def test_splat_weights():
    g = rd.accumulate_splat(grid(4, 4, Window(0, 4, 0, 4), np.float64), [1.5 + 2.5j])
    assert g.counts[2, 1] == 1.0 and g.counts.sum() == 1.0
    g = rd.accumulate_splat(grid(4, 4, Window(0, 4, 0, 4), np.float64), [2 + 2j])
    assert np.array_equal(g.counts[1:3, 1:3], np.full((2, 2), 0.25))


def test_splat_mass_conservation(rng):
    pts = rng.uniform(-1.2, 1.2, 5000) + 1j * rng.uniform(-1.2, 1.2, 5000)
    g = rd.accumulate_splat(grid(37, 23, dtype=np.float64), pts)
    assert abs(g.counts.sum() - g.total_in) < 1e-12 * max(1, g.total_in)
    assert g.total_in + g.total_out == 5000


def test_splat_is_order_independent(rng):
    pts = rng.normal(size=3000) * 0.5 + 1j * rng.normal(size=3000) * 0.5
    a = rd.accumulate_splat(grid(50, 50, dtype=np.float64), pts)
    b = grid(50, 50, dtype=np.float64)
    for chunk in np.array_split(rng.permutation(pts), 7):
        rd.accumulate_splat(b, chunk)
    assert a == b


def test_splat_agrees_with_binning_after_blur(rng):
    pts = rng.normal(size=400_000) * 0.3 + 1j * rng.normal(size=400_000) * 0.3
    ib = rd.accumulate(grid(40, 40), pts).counts.astype(float)
    sp = rd.accumulate_splat(grid(40, 40, dtype=np.float64), pts).counts

    def blur(c):
        return c[:-1, :-1] + c[1:, :-1] + c[:-1, 1:] + c[1:, 1:]

    bi, bs = blur(ib), blur(sp)
    dense = bi > 2000
    assert dense.sum() > 50
    assert np.all(np.abs(bi[dense] - bs[dense]) <= 0.2 * bi[dense])


def test_dtype_guards():
    with pytest.raises(TypeError):
        rd.accumulate(grid(dtype=np.float64), [0j])
    with pytest.raises(TypeError):
        rd.accumulate_splat(grid(), [0j])


def test_merge_rules(rng):
    a = rd.accumulate(grid(8, 8), rng.normal(size=100) + 0j)
    b = rd.accumulate(grid(8, 8), 1j * rng.normal(size=100))
    assert rd.merge(a, b) == rd.merge(b, a)
    with pytest.raises(ValueError):
        rd.merge(a, grid(8, 9))
    with pytest.raises(ValueError):
        rd.merge()


@settings(max_examples=50, deadline=None)
@given(st.lists(st.lists(st.complex_numbers(max_magnitude=2, allow_nan=False), max_size=30),
                min_size=1, max_size=4))
def test_merge_equals_single_accumulate(chunks):
    parts = [rd.accumulate(grid(5, 3), c) for c in chunks]
    whole = rd.accumulate(grid(5, 3), [z for c in chunks for z in c])
    assert rd.merge(*parts) == whole
    assert rd.merge(*reversed(parts)) == whole


def test_equalize_examples():
    assert np.all(rd.equalize(np.array([[3, 3], [0, 3]])) == [[255, 255], [0, 255]])
    idx = rd.equalize(np.array([[1, 100], [1, 1]]))
    assert idx[0, 1] > idx[0, 0] >= 1
    idx = rd.equalize(np.array([1] * 1000 + [100]))
    assert idx[-1] == 255 and idx[0] < 255
    assert np.all(rd.equalize(np.zeros((3, 3))) == 0)


counts_arrays = arrays(np.int64, st.tuples(st.integers(1, 12), st.integers(1, 12)),
                       elements=st.integers(0, 50))


@settings(max_examples=100, deadline=None)
@given(counts_arrays)
def test_equalize_monotone(c):
    idx = rd.equalize(c).ravel().astype(int)
    flat = c.ravel()
    order = np.argsort(flat, kind="stable")
    assert np.all(np.diff(idx[order]) >= 0)
    assert np.all((idx == 0) == (flat == 0))
    if (flat > 0).any():
        assert idx[flat > 0].min() >= 1 and idx.max() == 255


@settings(max_examples=100, deadline=None)
@given(counts_arrays, st.integers(0, 2 ** 32 - 1))
def test_equalize_permutation_invariant(c, seed):
    perm = np.random.default_rng(seed).permutation(c.size)
    a = rd.equalize(c).ravel()
    b = rd.equalize(c.ravel()[perm].reshape(c.shape)).ravel()
    assert np.array_equal(a[perm], b)


def test_palettes():
    for name in ("greyscale", "viridis", "cividis", "copper", "viridis-like", "grayscale"):
        assert rd.get_palette(name).table.shape == (256, 3)
    grey = rd.get_palette("greyscale").table.astype(int)
    luma = grey @ np.array([299, 587, 114])
    assert np.all(np.diff(luma) > 0)
    with pytest.raises(ValueError):
        rd.get_palette("jet")


def test_write_ppm_pixels(tmp_path):
    rd.write_ppm(np.array([[0]], dtype=np.uint8), "greyscale", tmp_path / "a.ppm")
    assert (tmp_path / "a.ppm").read_bytes() == b"P6\n1 1\n255\n\x00\x00\x00"
    rd.write_ppm(np.array([[255]], dtype=np.uint8), "greyscale", tmp_path / "b.ppm")
    assert (tmp_path / "b.ppm").read_bytes().endswith(b"\xff\xff\xff")


def test_ppm_orientation(tmp_path):
    g = rd.accumulate(grid(1, 2), [0.5j])  # upper half
    rd.write_ppm(rd.equalize(g), "greyscale", tmp_path / "o.ppm")
    body = (tmp_path / "o.ppm").read_bytes()[len(b"P6\n1 2\n255\n"):]
    assert body == b"\xff\xff\xff\x00\x00\x00"


def test_ppm_is_byte_deterministic(tmp_path, rng):
    pts = rng.normal(size=2000) + 1j * rng.normal(size=2000)
    digests = []
    for k in range(2):
        g = rd.accumulate(grid(64, 48, Window(-3, 3, -3, 3)), pts)
        rd.write_ppm(rd.equalize(g), "viridis", tmp_path / f"{k}.ppm")
        digests.append(hashlib.sha256((tmp_path / f"{k}.ppm").read_bytes()).hexdigest())
    assert digests[0] == digests[1]


def test_png_output(tmp_path):
    pytest.importorskip("PIL")
    from PIL import Image
    idx = np.array([[0, 255], [128, 1]], dtype=np.uint8)
    rd.write_png(idx, "copper", tmp_path / "a.png")
    img = np.asarray(Image.open(tmp_path / "a.png"))
    assert np.array_equal(img, rd.get_palette("copper").table[idx[::-1]])


def test_fold_conjugate():
    assert rd.fold_conjugate(1j) == 1j and rd.fold_conjugate(-1j) == 1j
    assert np.array_equal(rd.fold_conjugate([2 - 3j, -1 + 0j]), [2 + 3j, -1 + 0j])


def test_fold_of_real_spectra(rng):
    """Folding a conjugate-closed cloud doubles the upper half, keeps the axis."""
    A = rng.integers(-1, 2, size=(300, 5, 5)).astype(float)
    ev = np.linalg.eigvals(A).ravel()
    ev = np.where(np.abs(ev.imag) < 1e-12, ev.real + 0j, ev)
    w = Window(-4, 4, 0, 4)
    folded = rd.accumulate(grid(40, 20, w), rd.fold_conjugate(ev))
    upper = rd.accumulate(grid(40, 20, w), ev[ev.imag > 0])
    axis = rd.accumulate(grid(40, 20, w), ev[ev.imag == 0])
    assert np.array_equal(folded.counts, 2 * upper.counts + axis.counts)


@pytest.mark.parametrize("dtype", [np.int64, np.float64])
def test_grid_dump_round_trip(tmp_path, rng, dtype):
    g = grid(7, 5, Window(-2, 1, 0, 3), dtype)
    pts = rng.normal(size=100) + 1j * rng.normal(size=100)
    (rd.accumulate if dtype is np.int64 else rd.accumulate_splat)(g, pts)
    rd.dump_grid(g, tmp_path / "g.bin")
    assert rd.load_grid(tmp_path / "g.bin") == g
    (tmp_path / "bad.bin").write_bytes(b"nope")
    with pytest.raises(ValueError):
        rd.load_grid(tmp_path / "bad.bin")
