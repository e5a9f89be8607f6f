"""Spontaneous-emission spectra of an inverted-Y four-level atom driven by three fields.

Analytic spectra come from the transformed amplitudes (``laplace``) and,
on resonance, from the cubic-root factorisation (``resonant``); ``oracle``
integrates the amplitude equations in time as an independent check.
"""
from .errors import (DegenerateRoots, InvertedYError, NegativeRate, NonFiniteParameter,
                     NonNormalizedInitialState, NotConverged, NotResonant, SingularEvaluation,
                     StepTooLarge, ValidationError)
from .laplace import c2_tilde, c3_tilde, spectrum, spectrum_s2, spectrum_s3, trapped_populations
from .model import (Channel, DecayRates, DriveParameters, InitialAmplitudes, Scenario, Spectrum,
                    SpectrumGrid, validate_scenario)
from .oracle import integrate_amplitudes, spectrum_from_trajectory, trapped_population
from .resonant import (cubic_coefficients, cubic_roots, dark_line_check, dark_state_check,
                       partial_fractions, resonant_spectrum_s2, spectral_features)

__version__ = "0.1.0"
