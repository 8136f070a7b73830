import numpy as np
import pytest

from quatft import formats
from quatft.qft import qft_fast
from quatft.qsignal import GridSpec, QSignal

from conftest import random_signal


def test_binary_round_trip(rng):
    f = random_signal(rng, 5, 3, 0.3, 0.7)
    grid, samples = formats.from_bytes(formats.to_bytes(f.grid, f.samples))
    assert grid == f.grid
    np.testing.assert_array_equal(samples, f.samples)


def test_binary_header_layout():
    buf = formats.to_bytes(GridSpec(2, 3, 0.5, 0.25), np.zeros((2, 3, 4)))
    assert buf[:5] == b"QSIG1"
    assert buf[5:9] == (2).to_bytes(4, "little")
    assert len(buf) == 5 + 8 + 16 + 2 * 3 * 4 * 8


@pytest.mark.parametrize("buf", [b"", b"QSIG2" + bytes(24), formats.to_bytes(GridSpec(2, 2), np.zeros((2, 2, 4)))[:-1]])
def test_binary_rejects(buf):
    with pytest.raises(formats.FormatError):
        formats.from_bytes(buf)


def test_csv_round_trip_exact(rng):
    f = random_signal(rng, 4, 6, 0.1, 1 / 3)
    text = formats.to_csv(f.grid, f.samples)
    assert text.splitlines()[0] == "x1,x2,q0,q1,q2,q3"
    grid, samples = formats.from_csv(text)
    assert grid.shape == f.grid.shape
    assert grid.d1 == pytest.approx(f.grid.d1, rel=1e-14)
    np.testing.assert_array_equal(samples, f.samples)


def test_csv_rejects_bad_header():
    with pytest.raises(formats.FormatError):
        formats.from_csv("a,b,c\n1,2,3\n")


@pytest.mark.parametrize("name", ["sig.bin", "sig.csv"])
def test_save_load_signal(tmp_path, rng, name):
    f = random_signal(rng, 3, 4)
    formats.save_signal(tmp_path / name, f)
    g = formats.load_signal(tmp_path / name)
    np.testing.assert_array_equal(g.samples, f.samples)


def test_spectrum_round_trip(tmp_path, rng):
    S = qft_fast(random_signal(rng, 4, 4))
    formats.save_spectrum(tmp_path / "s.bin", S)
    T = formats.load_spectrum(tmp_path / "s.bin")
    assert T.grid == S.grid
    np.testing.assert_array_equal(T.samples, S.samples)
    assert not T.has_components


def test_magnitude_csv(rng):
    f = QSignal.from_components(GridSpec(2, 2), [[1.0, 0.0], [0.0, 0.0]])
    lines = formats.magnitude_csv(qft_fast(f)).splitlines()
    assert lines[0] == "xi1,xi2,modulus,module_norm"
    assert len(lines) == 5
    S = qft_fast(f, keep_components=False)
    assert formats.magnitude_csv(S).splitlines()[1].endswith(",")
