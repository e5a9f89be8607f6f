import math

import numpy as np
import pytest

from inverted_y import laplace, oracle
from inverted_y.crosscheck import max_relative_deviation
from inverted_y.errors import NotConverged, StepTooLarge
from inverted_y.model import SpectrumGrid

from conftest import make, preset_scenario


def test_rk4_step_exponential():
    y = oracle.rk4_step(lambda y: -y, np.array([1.0]), 0.1)
    assert y[0] == pytest.approx(1 - 0.1 + 0.005 - 0.1 ** 3 / 6 + 0.1 ** 4 / 24, abs=1e-15)


def test_free_decay():
    sc = make(init=(0, 1, 0, 0))
    traj = oracle.integrate_amplitudes(sc, t_end=5.0, dt=0.01)
    assert abs(traj.c2[-1] - math.exp(-2.5)) < 1e-8
    traj.check_invariants()


def test_dark_state_is_stationary():
    sc = preset_scenario("fig2d")
    traj = oracle.integrate_amplitudes(sc, t_end=50.0)
    assert np.max(np.abs(traj.amplitudes - sc.init.as_array())) < 1e-12


def test_fourth_order_convergence():
    sc = preset_scenario("fig3c")
    errs = []
    ref = oracle.integrate_amplitudes(sc, t_end=4.0, dt=0.00125).amplitudes[-1]
    for dt in (0.04, 0.02):
        traj = oracle.integrate_amplitudes(sc, t_end=4.0, dt=dt)
        errs.append(np.max(np.abs(traj.amplitudes[-1] - ref)))
    assert 12 < errs[0] / errs[1] < 20


def test_probability_bookkeeping():
    sc = preset_scenario("fig3e")
    traj = oracle.integrate_amplitudes(sc, dt=0.0025)
    total = traj.norm + oracle.emitted_probability(traj, sc)
    assert np.max(np.abs(total - 1.0)) < 1e-6


def test_trapped_population_matches_final_value():
    sc = preset_scenario("fig3e")
    p1, p4 = oracle.trapped_population(oracle.integrate_amplitudes(sc))
    assert p1 + p4 == pytest.approx(16 / 17, abs=1e-6)


def test_step_too_large():
    with pytest.raises(StepTooLarge):
        oracle.integrate_amplitudes(preset_scenario("fig3e"), dt=0.1)


def test_not_converged():
    sc = preset_scenario("fig3e")
    traj = oracle.integrate_amplitudes(sc, t_end=1.0)
    assert not traj.converged
    with pytest.raises(NotConverged):
        oracle.spectrum_from_trajectory(traj, sc, SpectrumGrid())


def test_czt_matches_direct_sum():
    sc = preset_scenario("fig2c")
    traj = oracle.integrate_amplitudes(sc)
    g = SpectrumGrid(-5, 5, 201)
    a = oracle.spectrum_from_trajectory(traj, sc, g, method="czt").values
    b = oracle.spectrum_from_trajectory(traj, sc, g, method="direct").values
    assert max_relative_deviation(a, b) < 1e-10


def test_matches_analytic_spectrum():
    sc = preset_scenario("fig3e")
    g = SpectrumGrid()
    dev = max_relative_deviation(laplace.spectrum(g, sc).values, oracle.oracle_spectrum(sc, g).values)
    assert dev < 1e-4


def test_step_halving_at_default_step():
    sc = preset_scenario("fig3c")
    dt = oracle.default_step(sc)
    a = oracle.integrate_amplitudes(sc, t_end=20.0, dt=dt).amplitudes[-1]
    b = oracle.integrate_amplitudes(sc, t_end=20.0, dt=dt / 2).amplitudes[-1]
    assert np.max(np.abs(a - b)) < 1e-9


def test_norm_never_increases():
    for name in ("fig2a", "fig3e", "fig5b"):
        oracle.integrate_amplitudes(preset_scenario(name)).check_invariants(tol=1e-9)


def test_fig2c_dark_line_in_time_domain():
    sc = preset_scenario("fig2c")
    g = SpectrumGrid()
    numeric = oracle.oracle_spectrum(sc, g).values
    analytic = laplace.spectrum(g, sc).values
    assert numeric[1000] < 1e-10 and analytic[1000] < 1e-10
    assert max_relative_deviation(analytic, numeric) < 1e-4


def test_natural_line():
    sc = preset_scenario("natural")
    g = SpectrumGrid()
    numeric = oracle.oracle_spectrum(sc, g).values
    assert max_relative_deviation(laplace.spectrum(g, sc).values, numeric) < 1e-4
    traj = oracle.integrate_amplitudes(sc)
    assert oracle.trapped_population(traj) == pytest.approx((0.0, 0.0), abs=1e-15)
