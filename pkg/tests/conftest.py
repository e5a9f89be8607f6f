import numpy as np
import pytest

from inverted_y.model import DecayRates, DriveParameters, InitialAmplitudes, Scenario, SpectrumGrid
from inverted_y.scenario_io import from_preset


def preset_scenario(name):
    return from_preset(name).scenario


def make(omegas=(0, 0, 0), deltas=(0, 0, 0), gammas=(1.0, 1.0), init=(0, 1, 0, 0)):
    return Scenario(DriveParameters(*omegas, *deltas), DecayRates(*gammas), InitialAmplitudes(*init))


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


@pytest.fixture
def grid():
    return SpectrumGrid()
