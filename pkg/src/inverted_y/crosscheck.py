"""Analytic-versus-oracle comparison, probability budget and random scenarios."""
from __future__ import annotations

import math

import numpy as np
from scipy.integrate import quad, simpson

from . import laplace, oracle
from .model import Channel, DecayRates, DriveParameters, InitialAmplitudes, Scenario, SpectrumGrid

ZERO_FLOOR = 1e-20


def max_relative_deviation(a, b):
    """max |a - b| over the larger of the two peak values.

    Normalising by the peak rather than pointwise keeps exact zeros (dark
    lines, dark states) from turning round-off into infinite ratios.  The
    peak is floored at ``ZERO_FLOOR`` (the dark-state threshold), so two
    spectra that are both zero up to round-off deviate by ~0, not by 1.
    """
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    scale = max(np.max(np.abs(a)), np.max(np.abs(b)), ZERO_FLOOR)
    return float(np.max(np.abs(a - b)) / scale)


def channels_for(scenario):
    return [Channel.S2] if scenario.decay.gamma3 == 0.0 else [Channel.S2, Channel.S3]


def compare_with_oracle(scenario, grid, channels=None, trajectory=None):
    """Max relative deviation per channel between analytic and RK4 spectra."""
    traj = trajectory or oracle.integrate_amplitudes(scenario)
    result = {}
    for ch in channels or channels_for(scenario):
        analytic = laplace.spectrum(grid, scenario, ch).values
        numeric = oracle.spectrum_from_trajectory(traj, scenario, grid, ch).values
        result[Channel.parse(ch)] = max_relative_deviation(analytic, numeric)
    return result


def integrated_emission(scenario, channel=Channel.S2, half_width=40.0, n_points=16001):
    """Total emitted probability into one channel.

    Simpson's rule on a uniform grid over [-half_width, half_width] plus
    adaptive quadrature of the analytic spectrum beyond it; lines from
    excited initial states fall off only as 1/delta^2, so the tails beyond
    40 gamma still hold ~1e-2 of the probability.
    """
    channel = Channel.parse(channel)
    points = laplace.s2_points if channel is Channel.S2 else laplace.s3_points
    x = np.linspace(-half_width, half_width, n_points)
    core = simpson(points(x, scenario), x=x)

    def f(t):
        return float(points(np.array([t]), scenario)[0])

    upper, _ = quad(f, half_width, math.inf, limit=200)
    lower, _ = quad(f, -math.inf, -half_width, limit=200)
    return float(core + upper + lower)


def probability_budget(scenario, trajectory=None):
    """(emitted S2, emitted S3, trapped from the oracle, total)."""
    traj = trajectory or oracle.integrate_amplitudes(scenario)
    p1, p4 = oracle.trapped_population(traj)
    trapped = p1 + p4
    if scenario.decay.gamma3 == 0.0:
        trapped += float(abs(traj.c3[-1]) ** 2)
    e2 = integrated_emission(scenario, Channel.S2)
    e3 = integrated_emission(scenario, Channel.S3) if scenario.decay.gamma3 > 0 else 0.0
    return e2, e3, trapped, e2 + e3 + trapped


def random_amplitudes(rng):
    z = rng.normal(size=4) + 1j * rng.normal(size=4)
    z /= math.sqrt(float(np.sum(np.abs(z) ** 2)))
    return InitialAmplitudes(*z)


def random_scenario(rng, resonant=False, complex_phases=True, min_decay_rate=0.02):
    """Draw a scenario the oracle can resolve within its time budget.

    |Omega| in [0.2, 3], phases uniform, detunings in [-2, 2] (zero if
    resonant), gamma2 = 1, gamma3 in [0.2, 1.5], random normalised initial
    state.  Draws whose slowest damped mode decays slower than
    ``min_decay_rate`` (near-dark superpositions) are redrawn.
    """
    while True:
        mags = rng.uniform(0.2, 3.0, size=3)
        phases = rng.uniform(0, 2 * math.pi, size=3) if complex_phases else np.zeros(3)
        omegas = mags * np.exp(1j * phases)
        deltas = np.zeros(3) if resonant else rng.uniform(-2.0, 2.0, size=3)
        drive = DriveParameters(*omegas, *deltas)
        decay = DecayRates(1.0, rng.uniform(0.2, 1.5))
        sc = Scenario(drive, decay, random_amplitudes(rng))
        if oracle.slowest_decay_rate(sc) >= min_decay_rate:
            return sc


def random_resonant_parameters(rng):
    """Resonant drive and decay for root-level checks: |Omega| in [0, 5], gamma3 in [0, 2]."""
    mags = rng.uniform(0.0, 5.0, size=3)
    phases = rng.uniform(0, 2 * math.pi, size=3)
    return DriveParameters(*(mags * np.exp(1j * phases))), DecayRates(1.0, rng.uniform(0.0, 2.0))


def default_grid():
    return SpectrumGrid()
