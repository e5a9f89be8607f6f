"""Parameter and state types for the driven inverted-Y atom.

Every frequency-like quantity (Rabi frequencies, detunings, decay rates,
emission detunings) is stored dimensionless, in units of the decay rate of
level |2>.  Omega24 couples |2> <-> |4> and omega23 couples |2> <-> |3>.
"""
from __future__ import annotations

import cmath
import enum
import math
from dataclasses import dataclass, field, replace

import numpy as np
from scipy.integrate import trapezoid

from .errors import NegativeRate, NonFiniteParameter, NonNormalizedInitialState, ValidationError

UNITS = "gamma2"

NORM_TOL = 1e-12
NORM_REJECT_TOL = 1e-9
RESONANCE_TOL = 1e-12


def _check_finite(name, value):
    if not cmath.isfinite(complex(value)):
        raise NonFiniteParameter(f"{name} must be finite, got {value!r}")


class Channel(str, enum.Enum):
    """Emission channel: S2 is |2> -> |g>, S3 is |3> -> |e>."""

    S2 = "S2"
    S3 = "S3"

    @classmethod
    def parse(cls, text):
        if isinstance(text, cls):
            return text
        try:
            return cls(str(text).upper())
        except ValueError:
            raise ValidationError(f"channel must be one of s2, s3; got {text!r}") from None


@dataclass(frozen=True)
class DriveParameters:
    """Complex Rabi frequencies and real laser detunings of the three fields."""

    omega12: complex = 0j
    omega24: complex = 0j
    omega23: complex = 0j
    delta1: float = 0.0
    delta2: float = 0.0
    delta3: float = 0.0
    units: str = UNITS

    def __post_init__(self):
        if self.units != UNITS:
            raise ValidationError(f"frequencies must be given in units of {UNITS}, got {self.units!r}")
        for name in ("omega12", "omega24", "omega23"):
            value = getattr(self, name)
            _check_finite(name, value)
            object.__setattr__(self, name, complex(value))
        for name in ("delta1", "delta2", "delta3"):
            value = getattr(self, name)
            if isinstance(value, complex) or not math.isfinite(float(value)):
                raise NonFiniteParameter(f"{name} must be a finite real number, got {value!r}")
            object.__setattr__(self, name, float(value))

    @property
    def is_resonant(self):
        return max(abs(self.delta1), abs(self.delta2), abs(self.delta3)) <= RESONANCE_TOL

    @property
    def max_frequency(self):
        """Largest |Omega| or |delta|; sets the fastest time scale of the drive."""
        return max(abs(self.omega12), abs(self.omega24), abs(self.omega23),
                   abs(self.delta1), abs(self.delta2), abs(self.delta3))

    def scaled(self, factor):
        return replace(self, omega12=self.omega12 * factor, omega24=self.omega24 * factor,
                       omega23=self.omega23 * factor, delta1=self.delta1 * factor,
                       delta2=self.delta2 * factor, delta3=self.delta3 * factor)


@dataclass(frozen=True)
class DecayRates:
    gamma2: float = 1.0
    gamma3: float = 1.0

    def __post_init__(self):
        for name in ("gamma2", "gamma3"):
            value = getattr(self, name)
            if isinstance(value, complex) or not math.isfinite(float(value)):
                raise NonFiniteParameter(f"{name} must be a finite real number, got {value!r}")
            object.__setattr__(self, name, float(value))
        if self.gamma2 <= 0.0:
            raise NegativeRate(f"gamma2 must be > 0 (it sets the unit system), got {self.gamma2}")
        if self.gamma3 < 0.0:
            raise NegativeRate(f"gamma3 must be >= 0, got {self.gamma3}")

    def scaled(self, factor):
        return DecayRates(self.gamma2 * factor, self.gamma3 * factor)


@dataclass(frozen=True)
class InitialAmplitudes:
    """Initial amplitudes a1(0)..a4(0); photon amplitudes start at zero."""

    a1: complex = 0j
    a2: complex = 0j
    a3: complex = 0j
    a4: complex = 0j

    def __post_init__(self):
        for name in ("a1", "a2", "a3", "a4"):
            value = getattr(self, name)
            _check_finite(name, value)
            object.__setattr__(self, name, complex(value))

    @property
    def norm(self):
        return math.fsum(abs(a) ** 2 for a in self.as_array())

    def as_array(self):
        return np.array([self.a1, self.a2, self.a3, self.a4], dtype=complex)

    @classmethod
    def basis(cls, level):
        """The bare state |level>, level in 1..4."""
        if level not in (1, 2, 3, 4):
            raise ValidationError(f"level must be 1..4, got {level}")
        return cls(**{f"a{level}": 1.0})


@dataclass(frozen=True)
class Scenario:
    drive: DriveParameters
    decay: DecayRates
    init: InitialAmplitudes

    def __post_init__(self):
        deviation = abs(self.init.norm - 1.0)
        if deviation > NORM_REJECT_TOL:
            raise NonNormalizedInitialState(
                f"initial amplitudes must satisfy |a1|^2+|a2|^2+|a3|^2+|a4|^2 = 1, "
                f"got norm {self.init.norm!r}")

    @property
    def is_resonant(self):
        return self.drive.is_resonant

    def scaled(self, factor):
        """Multiply every frequency by ``factor`` (> 0); amplitudes untouched."""
        if not factor > 0:
            raise ValidationError("scale factor must be positive")
        return Scenario(self.drive.scaled(factor), self.decay.scaled(factor), self.init)

    def to_dict(self):
        """Lossless plain-data form; complex numbers become [re, im]."""
        def c(z):
            return [z.real, z.imag]

        d = self.drive
        return {
            "drive": {"omega12": c(d.omega12), "omega24": c(d.omega24), "omega23": c(d.omega23),
                      "delta1": d.delta1, "delta2": d.delta2, "delta3": d.delta3},
            "decay": {"gamma2": self.decay.gamma2, "gamma3": self.decay.gamma3},
            "init": {name: c(getattr(self.init, name)) for name in ("a1", "a2", "a3", "a4")},
        }

    @classmethod
    def from_dict(cls, data):
        def z(pair):
            return complex(pair[0], pair[1])

        drive = data["drive"]
        return cls(
            DriveParameters(z(drive["omega12"]), z(drive["omega24"]), z(drive["omega23"]),
                            drive["delta1"], drive["delta2"], drive["delta3"]),
            DecayRates(**data["decay"]),
            InitialAmplitudes(**{k: z(v) for k, v in data["init"].items()}),
        )


def validate_scenario(drive, decay, init):
    """Check the joint invariants of a scenario and bundle it.

    Amplitudes whose norm is off by more than 1e-12 but at most 1e-9 are
    rescaled to unit norm; anything further off is rejected.
    """
    for obj, kind in ((drive, DriveParameters), (decay, DecayRates), (init, InitialAmplitudes)):
        if not isinstance(obj, kind):
            raise ValidationError(f"expected {kind.__name__}, got {type(obj).__name__}")
    norm = init.norm
    if abs(norm - 1.0) > NORM_REJECT_TOL:
        raise NonNormalizedInitialState(
            f"initial state is not normalized: sum |a_i|^2 = {norm!r} (tolerance {NORM_REJECT_TOL})")
    if abs(norm - 1.0) > NORM_TOL:
        scale = 1.0 / math.sqrt(norm)
        init = InitialAmplitudes(*(a * scale for a in init.as_array()))
    return Scenario(drive, decay, init)


@dataclass(frozen=True)
class SpectrumGrid:
    """Uniform grid of emission detunings (delta_k or delta_q)."""

    delta_min: float = -10.0
    delta_max: float = 10.0
    n_points: int = 2001

    def __post_init__(self):
        for name in ("delta_min", "delta_max"):
            if not math.isfinite(getattr(self, name)):
                raise NonFiniteParameter(f"{name} must be finite")
        if not self.delta_min < self.delta_max:
            raise ValidationError("grid requires delta_min < delta_max")
        if int(self.n_points) != self.n_points or self.n_points < 2:
            raise ValidationError("grid requires an integer n_points >= 2")
        object.__setattr__(self, "n_points", int(self.n_points))

    @property
    def step(self):
        return (self.delta_max - self.delta_min) / (self.n_points - 1)

    @property
    def deltas(self):
        return np.linspace(self.delta_min, self.delta_max, self.n_points)

    def scaled(self, factor):
        return SpectrumGrid(self.delta_min * factor, self.delta_max * factor, self.n_points)


@dataclass(frozen=True)
class Spectrum:
    grid: SpectrumGrid
    values: np.ndarray = field(repr=False)
    channel: Channel

    def __post_init__(self):
        values = np.array(self.values, dtype=float)
        if values.shape != (self.grid.n_points,):
            raise ValidationError(
                f"spectrum has {values.shape} values for a grid of {self.grid.n_points} points")
        if not np.all(np.isfinite(values)) or np.any(values < 0.0):
            raise ValidationError("spectral densities must be finite and non-negative")
        values.setflags(write=False)
        object.__setattr__(self, "values", values)
        object.__setattr__(self, "channel", Channel.parse(self.channel))

    @property
    def deltas(self):
        return self.grid.deltas

    def integral(self):
        return float(trapezoid(self.values, self.deltas))
