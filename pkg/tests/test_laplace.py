import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from inverted_y import laplace, oracle
from inverted_y.crosscheck import random_scenario
from inverted_y.model import Channel, DecayRates, DriveParameters, InitialAmplitudes, Scenario, SpectrumGrid

from conftest import make, preset_scenario


def test_undriven_level2_is_lorentzian():
    sc = make(init=(0, 1, 0, 0))
    s = np.array([0.3, 1.0 + 2j, -0.2j])
    assert np.allclose(laplace.c2_tilde(s, sc), 1.0 / (s + 0.5), rtol=1e-14)
    # natural line: peak gamma2 / (2 pi) * 4 / gamma2^2 = 2/pi
    assert laplace.s2_points([0.0], sc)[0] == pytest.approx(2 / math.pi, rel=1e-14)


def test_level3_with_no_coupling_gives_no_s2():
    sc = make(init=(0, 0, 1, 0))
    assert np.all(laplace.c2_tilde(np.array([0.1, 1j]), sc) == 0)
    assert laplace.c3_tilde(0.2, sc) == pytest.approx(1 / (0.2 + 0.5))


def test_fig2a_c2_tilde_vanishes_at_origin():
    val = laplace.c2_tilde(0.0, preset_scenario("fig2a"))
    assert np.isfinite(val)
    assert val == 0


def test_cleared_form_matches_nested_fraction():
    rng = np.random.default_rng(3)
    for _ in range(30):
        sc = random_scenario(rng)
        s = rng.normal(size=8) + 1j * rng.normal(size=8) + 0.8
        a = laplace.c2_tilde(s, sc)
        b = laplace.c2_tilde_nested(s, sc)
        assert np.max(np.abs(a - b)) <= 1e-12 * max(1.0, np.max(np.abs(b)))


def test_dark_line_and_dark_state():
    for name in ("fig2a", "fig2b", "fig2c"):
        assert laplace.s2_points([0.0], preset_scenario(name))[0] < 1e-20
    spec = laplace.spectrum(SpectrumGrid(), preset_scenario("fig2d"))
    assert spec.values.max() < 1e-20


def test_s3_zero_without_gamma3():
    spec = laplace.spectrum(SpectrumGrid(-5, 5, 101), preset_scenario("fig5b-gamma3-zero"), Channel.S3)
    assert not spec.values.any()


def test_single_frequency_against_time_domain():
    # detuned, complex phases; fine dt so the trapezoid error sits well below 1e-6
    sc = Scenario(DriveParameters(0.7 * np.exp(0.4j), 1.3 * np.exp(-1.1j), 1.9 * np.exp(2.0j), 0.4, -0.6, 0.9),
                  DecayRates(1.0, 0.6),
                  InitialAmplitudes(0.6, 0.48j, 0.0, -0.64))
    traj = oracle.integrate_amplitudes(sc, dt=1e-3)
    assert traj.converged
    for ch, evaluate, shift in ((Channel.S2, laplace.c2_tilde, sc.drive.delta1),
                                (Channel.S3, laplace.c3_tilde, sc.drive.delta1 + sc.drive.delta3)):
        num = oracle.photon_amplitudes(traj, sc, [1.3], ch, method="direct")[0]
        ana = evaluate(-1j * (1.3 - shift), sc)
        assert abs(num - ana) <= 1e-6 * abs(ana)


def test_trapped_populations_final_value():
    # a1 = 1, resonant: trapped = |O24|^2 / (|O12|^2 + |O24|^2)
    sc = preset_scenario("fig3e")
    p1, p3, p4 = laplace.trapped_populations(sc)
    assert p3 == 0.0
    assert p1 + p4 == pytest.approx(16 / 17, abs=1e-12)
    p1, p3, p4 = laplace.trapped_populations(preset_scenario("fig2d"))
    assert (p1, p4) == pytest.approx((0.5, 0.5), abs=1e-14)


@given(st.floats(-20, 20))
@settings(max_examples=50, deadline=None)
def test_s2_nonnegative_and_finite(x):
    sc = preset_scenario("fig3f")
    v = laplace.s2_points([x], sc)[0]
    assert np.isfinite(v) and v >= 0


def test_vanishing_coupling_is_not_singular():
    # an undamped pole with weight ~1e-63 leaves the cleared denominator tiny but exact
    sc = make(omegas=(0, 0, 1e-31), gammas=(1.0, 0.0), init=(1, 0, 0, 0))
    assert laplace.c2_tilde(0.0, sc) == 0


def test_fig2b_c3_against_time_domain():
    sc = preset_scenario("fig2b")
    traj = oracle.integrate_amplitudes(sc, dt=1e-3)
    for dq in (0.0, 0.7, 1.3):
        num = oracle.photon_amplitudes(traj, sc, [dq], Channel.S3, method="direct")[0]
        ana = laplace.c3_tilde(-1j * dq, sc)
        assert abs(num - ana) <= 1e-6 * abs(ana)
