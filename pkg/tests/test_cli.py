import numpy as np
import pytest

from quatft import formats
from quatft.cli import main
from quatft.fixtures import DEFAULT_GRID, sample
from quatft.qft import PolyGauss, qft_fast
from quatft.uncertainty import BeurlingParams, beurling_certify


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_check_lemma_plancherel(capsys):
    code, out, _ = run(capsys, "check-lemma", "plancherel")
    assert code == 0
    assert out.startswith("PASS plancherel")


def test_check_lemma_gaussian(capsys):
    code, out, _ = run(capsys, "check-lemma", "gaussian")
    assert code == 0
    err = float(out.split("error=")[1].split()[0])
    assert err < 1e-6


def test_check_lemma_tolerance_flag_can_fail(capsys):
    code, out, _ = run(capsys, "check-lemma", "gaussian", "--tolerance", "1e-14")
    assert code == 1
    assert out.startswith("FAIL gaussian")


def test_check_lemma_convolution_reports_failure(capsys):
    code, out, _ = run(capsys, "check-lemma", "convolution")
    assert code == 1
    assert "FAIL convolution" in out
    assert "PASS convolution[g even in x1]" in out


def test_unknown_lemma_is_usage_error(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["check-lemma", "nonsense"])
    assert exc.value.code == 2
    err = capsys.readouterr().err
    assert "plancherel" in err and "dilation" in err


def test_unknown_theorem_is_usage_error(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["certify", "heisenberg"])
    assert exc.value.code == 2
    assert "cowling-price" in capsys.readouterr().err


def test_missing_certify_params(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["certify", "hardy", "--d", "0"])
    assert exc.value.code == 2
    assert "--alpha" in capsys.readouterr().err


def test_certify_beurling_d2(capsys):
    code, out, _ = run(capsys, "certify", "beurling", "--d", "2", "--input", "gaussian")
    assert code == 0
    assert "verdict: divergent" in out
    assert "forced conclusion: unconstrained" in out


def test_certify_matches_library(capsys):
    code, out, _ = run(capsys, "certify", "beurling", "--d", "5", "--format", "kv")
    assert code == 0
    assert out == beurling_certify(PolyGauss.gaussian(), BeurlingParams(5.0)).to_kv()


@pytest.mark.parametrize("argv", [
    ["certify", "hardy", "--d", "0", "--alpha", "1", "--beta", "1"],
    ["certify", "gelfand-shilov", "--d", "3", "--alpha", "1", "--beta", "1", "--p", "2"],
    ["certify", "cowling-price", "--d", "5", "--alpha", "0.5", "--beta", "0.5", "--p", "2",
     "--input", "polygauss:1,0,1"],
])
def test_certify_theorems_converge(capsys, argv):
    code, out, _ = run(capsys, *argv, "--format", "kv")
    assert code == 0
    assert "verdict=convergent" in out
    assert "conclusion=poly_times_gaussian" in out


def test_certify_sampled_input(capsys):
    code, out, _ = run(capsys, "certify", "beurling", "--d", "5", "--input", "delta")
    assert code == 0
    assert "note: sampled ladder" in out


def test_gelfand_shilov_integer_d(capsys):
    with pytest.raises(SystemExit):
        main(["certify", "gelfand-shilov", "--d", "3.5", "--alpha", "1", "--beta", "1", "--p", "2"])


def test_transform_inverse_round_trip(tmp_path, capsys):
    spec, back = tmp_path / "s.bin", tmp_path / "f.csv"
    assert main(["transform", "--input", "noise:3", "--output", str(spec)]) == 0
    assert main(["inverse", "--input", str(spec), "--output", str(back)]) == 0
    f = sample("noise:3")
    g = formats.load_signal(back)
    np.testing.assert_allclose(g.samples, f.samples, atol=1e-12)


def test_transform_matches_library(tmp_path):
    out = tmp_path / "s.bin"
    main(["transform", "--input", "gaussian", "--output", str(out)])
    S = formats.load_spectrum(out)
    np.testing.assert_array_equal(S.samples, qft_fast(sample("gaussian")).samples)


def test_transform_direct_flag(tmp_path):
    a, b = tmp_path / "a.bin", tmp_path / "b.bin"
    main(["transform", "--input", "noise:1", "--grid", "16,16", "--output", str(a)])
    main(["transform", "--input", "noise:1", "--grid", "16,16", "--direct", "--output", str(b)])
    np.testing.assert_allclose(formats.load_spectrum(a).samples, formats.load_spectrum(b).samples, atol=1e-12)


def test_outputs_byte_identical(tmp_path):
    paths = [tmp_path / "a.csv", tmp_path / "b.csv"]
    for p in paths:
        main(["export", "--input", "real-noise:5", "--grid", "8,8", "--output", str(p)])
    assert paths[0].read_bytes() == paths[1].read_bytes()
    paths = [tmp_path / "a.bin", tmp_path / "b.bin"]
    for p in paths:
        main(["convolve", "--input", "gaussian", "--input", "noise:2", "--output", str(p)])
    assert paths[0].read_bytes() == paths[1].read_bytes()


def test_export_header(tmp_path):
    p = tmp_path / "m.csv"
    main(["export", "--input", "gaussian", "--grid", "4,4", "--output", str(p)])
    lines = p.read_text().splitlines()
    assert lines[0] == "xi1,xi2,modulus,module_norm"
    assert len(lines) == 17


def test_grid_and_spacing_flags(tmp_path):
    p = tmp_path / "s.bin"
    main(["transform", "--input", "gaussian", "--grid", "8,6", "--spacing", "0.5,0.25", "--output", str(p)])
    S = formats.load_spectrum(p)
    assert S.grid.shape == (8, 6)
    assert S.grid.d1 == pytest.approx(1 / 4)


def test_ppm_input(tmp_path):
    from pathlib import Path
    ppm = Path(__file__).parent / "fixtures" / "rgb_2x2.ppm"
    out = tmp_path / "s.csv"
    assert main(["transform", "--input", str(ppm), "--output", str(out)]) == 0


def test_missing_file_exit_2(capsys):
    code, _, err = run(capsys, "transform", "--input", "no/such/file.bin", "--output", "x.bin")
    assert code == 2
    assert "fixtures" in err


def test_convolve_needs_two_inputs():
    with pytest.raises(SystemExit):
        main(["convolve", "--input", "gaussian", "--output", "x.bin"])


def test_default_grid():
    assert DEFAULT_GRID.shape == (64, 64)
