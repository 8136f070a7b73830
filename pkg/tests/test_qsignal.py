from pathlib import Path

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from quatft.qft import PolyGauss, qft_direct, qft_fast
from quatft.qsignal import (
    GridSpec,
    MissingComponentsError,
    PPMParseError,
    QSignal,
    QSpectrum,
    l1_norm,
    l2_norm,
    component_split,
    load_ppm_as_pure_quaternion,
    module_l2_norm,
    module_norm,
    parse_ppm,
    recombine,
    write_ppm,
)

from conftest import random_signal

FIXTURES = Path(__file__).parent / "fixtures"


def test_grid_axes_centred():
    g = GridSpec(4, 5, 0.5, 2.0)
    x1, x2 = g.axes()
    np.testing.assert_array_equal(x1, [-1.0, -0.5, 0.0, 0.5])
    np.testing.assert_array_equal(x2, [-4.0, -2.0, 0.0, 2.0, 4.0])
    assert g.dual() == GridSpec(4, 5, 0.5, 0.1)
    assert g.inscribed_radius() == 0.5


@pytest.mark.parametrize("args", [(0, 4), (4, -1), (4, 4, 0.0, 1.0), (4, 4, 1.0, -2.0), (2.5, 4)])
def test_grid_rejects(args):
    with pytest.raises(ValueError):
        GridSpec(*args)


def test_signal_shape_checked():
    with pytest.raises(ValueError):
        QSignal(GridSpec(4, 4), np.zeros((4, 5, 4)))


def test_samples_read_only():
    f = QSignal.zeros(GridSpec(2, 2))
    with pytest.raises(ValueError):
        f.samples[0, 0, 0] = 1.0


def test_norms_of_constant():
    f = QSignal.from_components(GridSpec(4, 4, 0.5, 0.5), 1.0)
    assert l1_norm(f) == 4.0
    assert l2_norm(f) == 2.0


def test_norms_of_gaussian():
    grid = GridSpec.centered_box(128, 128, 4.0)
    f = PolyGauss.gaussian().sample(grid)
    assert l1_norm(f) == pytest.approx(1.0, abs=1e-10)
    assert l2_norm(f) == pytest.approx(2 ** -0.5, abs=1e-10)


def test_norms_of_zero_and_constant_i():
    assert l1_norm(QSignal.zeros(GridSpec(3, 3))) == 0.0
    assert l2_norm(QSignal.zeros(GridSpec(3, 3))) == 0.0
    assert l2_norm(QSignal.from_components(GridSpec(2, 2), 0.0, 1.0)) == 2.0


def test_l2_pythagorean_split(rng):
    f = random_signal(rng, 9, 7)
    parts = [l2_norm(QSignal.from_components(f.grid, c)) for c in component_split(f)]
    assert l2_norm(f) ** 2 == pytest.approx(sum(p ** 2 for p in parts), rel=1e-10)


@given(arrays(np.float64, (3, 4, 4), elements=st.floats(-1e6, 1e6)))
def test_split_recombine_exact(samples):
    f = QSignal(GridSpec(3, 4), samples)
    f0, f1, f2, f3 = component_split(f)
    g = QSignal.from_components(f.grid, f0, f1, f2, f3)
    np.testing.assert_array_equal(g.samples, f.samples)
    for c in (f0, f1, f2, f3):
        assert np.all(np.abs(c) <= f.modulus())


def test_module_norm_of_zero():
    S = qft_fast(QSignal.zeros(GridSpec(4, 4)))
    np.testing.assert_array_equal(module_norm(S), 0.0)


def test_l1_uses_quaternion_modulus():
    f = QSignal.from_components(GridSpec(2, 2), 0.0, 3.0, 0.0, 4.0)
    assert l1_norm(f) == 20.0


def test_module_norm_equals_modulus_for_real(rng):
    f = random_signal(rng, 12, 10, real=True)
    S = qft_fast(f)
    np.testing.assert_allclose(module_norm(S), S.modulus(), rtol=1e-14, atol=1e-14)


def test_module_norm_of_i_times_real(rng):
    g = random_signal(rng, 8, 8, real=True)
    f = QSignal.from_components(g.grid, None, g.samples[..., 0])
    np.testing.assert_allclose(module_norm(qft_fast(f)), qft_fast(g).modulus(), atol=1e-13)


def test_module_norm_pythagorean(rng):
    f = random_signal(rng, 8, 8)
    S = qft_fast(f)
    parts = [qft_fast(QSignal.from_components(f.grid, *(c if k == m else None for k, c in enumerate(f.components()))))
             for m in range(4)]
    # only the m-th slot is filled, so each part is f_m placed on its own unit
    expect = np.sqrt(sum(module_norm(P) ** 2 for P in parts))
    np.testing.assert_allclose(module_norm(S), expect, atol=1e-13)
    comp_mods = np.stack([qft_fast(QSignal.from_components(f.grid, c)).modulus() for c in f.components()])
    assert np.all(comp_mods <= module_norm(S)[None] + 1e-13)


def test_module_norm_differs_from_modulus_in_general(rng):
    f = random_signal(rng, 8, 8)
    S = qft_fast(f)
    assert np.max(np.abs(module_norm(S) - S.modulus())) > 1e-3


def test_module_norm_needs_components(rng):
    f = random_signal(rng, 4, 4)
    S = qft_fast(f, keep_components=False)
    assert not S.has_components
    with pytest.raises(MissingComponentsError):
        module_norm(S)


def test_recombine_matches_spectrum(rng):
    f = random_signal(rng, 6, 7)
    S = qft_direct(f)
    np.testing.assert_allclose(recombine(S.components), S.samples, atol=1e-13)


def test_module_l2_of_delta():
    grid = GridSpec(8, 8, 0.5, 0.5)
    s = np.zeros((8, 8, 4))
    s[4, 4] = [0.0, 1.0, 1.0, 0.0]
    f = QSignal(grid, s)
    assert module_l2_norm(qft_fast(f)) == pytest.approx(l2_norm(f), rel=1e-14)


def test_spectrum_component_shape():
    with pytest.raises(ValueError):
        QSpectrum(GridSpec(2, 2), np.zeros((2, 2, 4)), np.zeros((3, 2, 2, 4)))


# --- PPM ---------------------------------------------------------------

def test_ppm_fixture_byte_exact():
    buf = (FIXTURES / "rgb_2x2.ppm").read_bytes()
    assert buf[:3] == b"P6\n"
    img, maxval = parse_ppm(buf)
    assert maxval == 255
    expect = np.array([[[255, 0, 0], [0, 255, 0]], [[0, 0, 255], [255, 255, 255]]], dtype=np.uint8)
    np.testing.assert_array_equal(img, expect)


def test_ppm_fixture_as_quaternion():
    f = load_ppm_as_pure_quaternion(FIXTURES / "rgb_2x2.ppm")
    assert f.grid.shape == (2, 2)
    np.testing.assert_array_equal(f.samples[..., 0], 0.0)
    np.testing.assert_array_equal(f.samples[0, 0], [0, 1, 0, 0])
    np.testing.assert_array_equal(f.samples[0, 1], [0, 0, 1, 0])
    np.testing.assert_array_equal(f.samples[1, 0], [0, 0, 0, 1])
    np.testing.assert_array_equal(f.samples[1, 1], [0, 1, 1, 1])


@pytest.mark.parametrize("pixel, expect", [((255, 255, 255), [0, 1, 1, 1]), ((0, 0, 0), [0, 0, 0, 0])])
def test_single_pixel(tmp_path, pixel, expect):
    path = tmp_path / "p.ppm"
    write_ppm(path, np.array([[pixel]], dtype=np.uint8))
    f = load_ppm_as_pure_quaternion(path)
    np.testing.assert_array_equal(f.samples[0, 0], expect)


def test_ppm_maxval_scaling():
    img, maxval = parse_ppm(b"P6 1 1 15\n" + bytes([15, 5, 0]))
    assert maxval == 15
    np.testing.assert_array_equal(img[0, 0], [15, 5, 0])


def test_ppm_write_read_round_trip(tmp_path, rng):
    rgb = rng.integers(0, 256, (5, 3, 3), dtype=np.uint8)
    write_ppm(tmp_path / "x.ppm", rgb)
    img, _ = parse_ppm((tmp_path / "x.ppm").read_bytes())
    np.testing.assert_array_equal(img, rgb)


@pytest.mark.parametrize("buf, offset", [
    (b"P3\n1 1\n255\n\x00\x00\x00", 0),
    (b"P6\n1 1\n255\n\x00\x00", 13),
    (b"P6\nx 1\n255\n", 3),
    (b"P6\n1 1\n65535\n", 7),
    (b"P6\n0 1\n255\n", 3),
    (b"P6\n1", 4),
])
def test_ppm_errors_report_offset(buf, offset):
    with pytest.raises(PPMParseError) as exc:
        parse_ppm(buf)
    assert exc.value.offset == offset
    assert "offset" in str(exc.value)
