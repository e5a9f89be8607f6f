import math

import numpy as np
import pytest

from inverted_y import laplace, resonant
from inverted_y.crosscheck import random_resonant_parameters
from inverted_y.errors import DegenerateRoots, NotResonant
from inverted_y.model import DecayRates, DriveParameters, InitialAmplitudes, SpectrumGrid

from conftest import make, preset_scenario


def test_fig3e_coefficients():
    sc = preset_scenario("fig3e")
    assert resonant.cubic_coefficients(sc.drive, sc.decay) == pytest.approx((1.0, 5.3125, 0.53125), abs=1e-15)


def test_not_resonant_is_rejected():
    with pytest.raises(NotResonant):
        resonant.cubic_coefficients(DriveParameters(1, 1, 1, 0.1), DecayRates())


def test_undriven_roots_are_degenerate():
    dec = resonant.decompose(DriveParameters(), DecayRates())
    assert dec.degenerate and dec.weights is None
    assert sorted(dec.roots.real) == pytest.approx([-0.5, -0.5, 0.0], abs=1e-15)
    # fallback path evaluates without error
    sc = make(init=(0, 1, 0, 0))
    s = resonant.resonant_s2_points([0.0, 0.5], sc)
    assert np.all(np.isfinite(s))
    assert s[0] == pytest.approx(2 / math.pi, rel=1e-12)


def test_roots_residual_and_vieta(rng):
    for _ in range(200):
        drive, decay = random_resonant_parameters(rng)
        coeffs = resonant.cubic_coefficients(drive, decay)
        dec = resonant.cubic_roots(coeffs)
        scale = max(1.0, max(abs(c) for c in coeffs))
        assert max(abs(resonant.cubic_value(r, coeffs)) for r in dec.roots) < 1e-10 * scale
        assert abs(dec.roots.sum() + coeffs[0]) < 1e-10


def test_root_ordering_and_conjugacy():
    sc = preset_scenario("fig3e")
    dec = resonant.decompose(sc.drive, sc.decay)
    assert dec.lambda1.imag == 0
    assert dec.lambda2.imag > 0
    assert dec.lambda3 == dec.lambda2.conjugate()


def test_partial_fractions_known_roots():
    roots = [1.0, 2.0, 3.0]
    beta = resonant.partial_fractions(roots)
    # independent: solve sum_j beta_j prod_{m != j}(x + i L_m) = 1 at three points
    xs = np.array([0.1, 0.7, -1.3])
    z = 1j * np.array(roots)
    a = np.array([[np.prod([x + z[m] for m in range(3) if m != j]) for j in range(3)] for x in xs])
    expected = np.linalg.solve(a, np.ones(3))
    assert np.allclose(beta, expected, atol=1e-14)
    assert beta[0] == pytest.approx(-0.5, abs=1e-14)
    assert np.allclose(resonant.partial_fractions_permutation_form(roots), beta, atol=1e-14)


def test_partial_fraction_identities(rng):
    for _ in range(100):
        drive, decay = random_resonant_parameters(rng)
        dec = resonant.decompose(drive, decay)
        if dec.degenerate:
            continue
        b, z = dec.weights, 1j * dec.roots
        assert abs(b.sum()) < 1e-10
        assert abs((b * z).sum()) < 1e-10
        assert abs((b * z ** 2).sum() - 1) < 1e-10
        assert np.allclose(resonant.partial_fractions_permutation_form(dec.roots), b, rtol=1e-9)


def test_degenerate_roots_raise():
    with pytest.raises(DegenerateRoots):
        resonant.partial_fractions([1.0, 1.0, 2.0])


def test_cardano_agrees(rng):
    checked = 0
    for _ in range(200):
        drive, decay = random_resonant_parameters(rng)
        dec = resonant.cubic_roots(resonant.cubic_coefficients(drive, decay))
        if dec.degenerate:
            continue
        agree, worst, _ = resonant.cardano_cross_check(drive, decay)
        assert agree, worst
        checked += 1
    assert checked > 150


def test_resonant_paths_agree(rng):
    x = np.linspace(-8, 8, 161)
    for _ in range(40):
        drive, decay = random_resonant_parameters(rng)
        decay = DecayRates(1.0, max(decay.gamma3, 0.05))
        z = rng.normal(size=4) + 1j * rng.normal(size=4)
        from inverted_y.model import Scenario
        sc = Scenario(drive, decay, InitialAmplitudes(*(z / np.linalg.norm(z))))
        a = laplace.s2_points(x, sc)
        b = resonant.resonant_s2_points(x, sc)
        assert np.max(np.abs(a - b)) <= 1e-12 * max(1.0, a.max())


def test_three_lorentzian_form():
    sc = preset_scenario("fig3e")
    x = np.linspace(-10, 10, 401)
    a = laplace.s2_points(x, sc)
    b = resonant.three_lorentzian_s2(x, sc.drive, sc.decay)
    assert np.max(np.abs(a - b)) <= 1e-12 * a.max()


def test_dark_state_checks():
    drive = DriveParameters(0.5, 0.5, 0.5)
    s = math.sqrt(0.5)
    assert resonant.dark_state_check(drive, InitialAmplitudes(s, 0, 0, -s))
    assert not resonant.dark_state_check(drive, InitialAmplitudes(s, 0, 0, s))
    # complex Rabi frequencies: a1 proportional to O24, a4 to -O12
    o12, o24 = 0.8 * np.exp(0.7j), 1.5 * np.exp(-0.3j)
    drive = DriveParameters(o12, o24, 1.0)
    n = math.hypot(abs(o12), abs(o24))
    good = InitialAmplitudes(o24 / n, 0, 0, -o12 / n)
    assert resonant.dark_state_check(drive, good)
    conj = InitialAmplitudes(np.conj(o24) / n, 0, 0, -np.conj(o12) / n)
    assert not resonant.dark_state_check(drive, conj)
    from inverted_y.model import Scenario
    assert laplace.s2_points(np.linspace(-5, 5, 51), Scenario(drive, DecayRates(), good)).max() < 1e-20


def test_dark_line_check():
    assert resonant.dark_line_check(InitialAmplitudes(0, 0.6, 0.8, 0))
    assert not resonant.dark_line_check(InitialAmplitudes(1, 0, 0, 0))


def test_isolated_central_fwhm_matches_root():
    sc = preset_scenario("fig3e")
    spec = laplace.spectrum(SpectrumGrid(-3, 3, 6001), sc)
    feats = resonant.spectral_features(sc.drive, sc.decay)
    assert feats.resolved
    assert resonant.central_fwhm(spec) == pytest.approx(feats.central_width, rel=0.05)


def test_central_width_vanishes_with_gamma3():
    drive = preset_scenario("fig5a").drive
    widths = [resonant.spectral_features(drive, DecayRates(1.0, g3)).central_width for g3 in (1.0, 0.1, 1e-3, 0.0)]
    assert widths[0] > widths[1] > widths[2] > widths[3]
    assert widths[3] < 1e-12


def test_triple_root_is_snapped():
    dec = resonant.cubic_roots((1.5, 0.75, 0.125))   # (s + 1/2)^3
    assert dec.degenerate and dec.all_real
    assert np.all(dec.roots == -0.5)


def test_fig3a_is_unresolved_single_peak():
    sc = preset_scenario("fig3a")
    feats = resonant.spectral_features(sc.drive, sc.decay)
    assert feats.conjugate_pair and not feats.resolved
    assert len(resonant.local_maxima(laplace.spectrum(SpectrumGrid(), sc))) == 1


def test_fig3f_against_fig3e():
    out = {}
    for name in ("fig3e", "fig3f"):
        sc = preset_scenario(name)
        spec = laplace.spectrum(SpectrumGrid(), sc)
        _, right = resonant.sideband_peaks(spec)
        side = spec.values[np.argmin(np.abs(spec.deltas - right))]
        centre = spec.values[np.argmin(np.abs(spec.deltas))]
        out[name] = (centre, side / centre, resonant.spectral_features(sc.drive, sc.decay).central_width)
    assert out["fig3f"][0] < out["fig3e"][0]          # central peak suppressed
    assert out["fig3f"][1] > out["fig3e"][1]          # sidebands enhanced relative to it
    assert out["fig3f"][2] > out["fig3e"][2]          # and broadened
