"""Closed-form Laplace-domain amplitudes and the emission spectra built on them.

The transformed amplitude of level |2> is a ratio of two expressions that each
carry inner fractions with poles at

    s = 0                          (coupling to |1>, weight Omega12)
    s = i(delta1 - delta2)         (coupling to |4>, weight Omega24)
    s = i(delta1 + delta3) - g3/2  (coupling to |3>, weight Omega23)

Both numerator and denominator are multiplied through by the product of the
(distinct) pole factors, so points where an inner fraction blows up but the
full ratio stays finite evaluate without NaN.  Poles that coincide (the
resonant case puts the first two on top of each other) are merged before
clearing, otherwise the cleared form degenerates to 0/0.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import SingularEvaluation
from .model import Channel, Spectrum

# poles closer than this (in units of gamma2) are treated as one
POLE_MERGE_TOL = 1e-12
SINGULAR_TOL = 1e-14


@dataclass(frozen=True)
class LaplaceAmplitude:
    value: complex
    evaluation_point: complex


@dataclass(frozen=True)
class _PoleGroup:
    location: complex
    numerator_weight: complex    # sum of i*Omega*a/2 terms sharing this pole
    denominator_weight: float    # sum of |Omega/2|^2 terms sharing this pole
    members: tuple


def _pole_groups(scenario):
    d, g, a = scenario.drive, scenario.decay, scenario.init
    raw = [
        ("12", 0j, 0.5j * d.omega12 * a.a1, abs(d.omega12 / 2) ** 2),
        ("24", 1j * (d.delta1 - d.delta2), 0.5j * d.omega24 * a.a4, abs(d.omega24 / 2) ** 2),
        ("23", 1j * (d.delta1 + d.delta3) - g.gamma3 / 2,
         0.5j * d.omega23.conjugate() * a.a3, abs(d.omega23 / 2) ** 2),
    ]
    tol = POLE_MERGE_TOL * g.gamma2
    groups = []
    for name, loc, w, u in raw:
        if u == 0.0:
            # no coupling -> no pole (numerator weight carries the same Omega factor)
            continue
        for i, grp in enumerate(groups):
            if abs(grp.location - loc) <= tol:
                groups[i] = _PoleGroup(grp.location, grp.numerator_weight + w,
                                       grp.denominator_weight + u, grp.members + (name,))
                break
        else:
            groups.append(_PoleGroup(loc, w, u, (name,)))
    return groups


def _products(s, locations):
    """Full product of (s - p) and the leave-one-out products."""
    factors = [s - p for p in locations]
    full = np.ones_like(s)
    for f in factors:
        full = full * f
    leave_out = []
    for i in range(len(factors)):
        prod = np.ones_like(s)
        for j, f in enumerate(factors):
            if j != i:
                prod = prod * f
        leave_out.append(prod)
    return full, leave_out


def _cleared_c2(s, scenario, groups):
    d, g, a = scenario.drive, scenario.decay, scenario.init
    full, leave_out = _products(s, [grp.location for grp in groups])
    num = a.a2 * full
    den = (s + g.gamma2 / 2 - 1j * d.delta1) * full
    size = np.abs(den)
    for grp, rest in zip(groups, leave_out):
        num = num + grp.numerator_weight * rest
        den = den + grp.denominator_weight * rest
        size = size + grp.denominator_weight * np.abs(rest)
    return num, den, size


def _singular_check(den, size):
    """Flag points where the denominator is lost to cancellation among its terms."""
    bad = np.flatnonzero(np.abs(den) <= SINGULAR_TOL * size)
    if bad.size:
        raise SingularEvaluation(
            f"cleared denominator of C2~(s) vanishes at point index {int(bad[0])}", index=int(bad[0]))


def c2_tilde(s, scenario):
    """Vectorised C2~(s) in pole-cleared form.  ``s`` may be scalar or array."""
    s_arr = np.asarray(s, dtype=complex)
    groups = _pole_groups(scenario)
    num, den, size = _cleared_c2(np.atleast_1d(s_arr), scenario, groups)
    _singular_check(den, size)
    out = num / den
    return out.reshape(s_arr.shape) if s_arr.ndim else complex(out[0])


def c3_tilde(s, scenario):
    """Vectorised C3~(s) = (a3 + i Omega23 C2~(s)/2) / (s - i(delta1+delta3) + gamma3/2).

    When the |3> pole is not shared with another coupling, the factor
    (s - p3) cancels analytically between numerator and denominator; that
    cancelled form is used so s = p3 is regular.
    """
    d, g, a = scenario.drive, scenario.decay, scenario.init
    s_arr = np.asarray(s, dtype=complex)
    s1 = np.atleast_1d(s_arr)
    p3 = 1j * (d.delta1 + d.delta3) - g.gamma3 / 2
    groups = _pole_groups(scenario)
    own = [grp for grp in groups if grp.members == ("23",)]
    if own:
        others = [grp for grp in groups if grp.members != ("23",)]
        full, leave_out = _products(s1, [grp.location for grp in others])
        num = (a.a3 * (s1 + g.gamma2 / 2 - 1j * d.delta1) + 0.5j * d.omega23 * a.a2) * full
        for grp, rest in zip(others, leave_out):
            num = num + (a.a3 * grp.denominator_weight + 0.5j * d.omega23 * grp.numerator_weight) * rest
        _, den, size = _cleared_c2(s1, scenario, groups)
        _singular_check(den, size)
        out = num / den
    else:
        num2, den2, size = _cleared_c2(s1, scenario, groups)
        _singular_check(den2, size)
        num = a.a3 * den2 + 0.5j * d.omega23 * num2
        den = (s1 - p3) * den2
        vanishing = np.abs(s1 - p3) <= SINGULAR_TOL * g.gamma2
        if np.any(vanishing & (np.abs(num) > 0)):
            idx = int(np.flatnonzero(vanishing)[0])
            raise SingularEvaluation(f"C3~(s) has a pole at point index {idx}", index=idx)
        with np.errstate(invalid="ignore", divide="ignore"):
            out = np.where(vanishing, 0j, num / den)
    return out.reshape(s_arr.shape) if s_arr.ndim else complex(out[0])


def c2_tilde_nested(s, scenario):
    """Direct transcription of the nested-fraction formula, no pole clearing.

    Only meaningful away from the inner poles; kept as an independent
    reference for the cleared evaluation.
    """
    d, g, a = scenario.drive, scenario.decay, scenario.init
    s = np.asarray(s, dtype=complex)
    f12 = s
    f24 = s - 1j * (d.delta1 - d.delta2)
    f23 = s - 1j * (d.delta1 + d.delta3) + g.gamma3 / 2
    num = (a.a2 + 0.5j * d.omega12 * a.a1 / f12
           + 0.5j * d.omega23.conjugate() * a.a3 / f23
           + 0.5j * d.omega24 * a.a4 / f24)
    den = (s + g.gamma2 / 2 - 1j * d.delta1 + abs(d.omega12 / 2) ** 2 / f12
           + abs(d.omega24 / 2) ** 2 / f24 + abs(d.omega23 / 2) ** 2 / f23)
    return num / den


def evaluate_c2_tilde(s, scenario):
    return LaplaceAmplitude(c2_tilde(complex(s), scenario), complex(s))


def evaluate_c3_tilde(s, scenario):
    return LaplaceAmplitude(c3_tilde(complex(s), scenario), complex(s))


def s2_points(deltas, scenario):
    d = scenario.drive
    s = -1j * (np.asarray(deltas, dtype=float) - d.delta1)
    return scenario.decay.gamma2 / (2 * math.pi) * np.abs(c2_tilde(s, scenario)) ** 2


def s3_points(deltas, scenario):
    d, g = scenario.drive, scenario.decay
    deltas = np.asarray(deltas, dtype=float)
    if g.gamma3 == 0.0:
        return np.zeros_like(deltas)
    s = -1j * (deltas - d.delta1 - d.delta3)
    return g.gamma3 / (2 * math.pi) * np.abs(c3_tilde(s, scenario)) ** 2


def spectrum_s2(grid, scenario):
    """S2 on ``grid``: (gamma2 / 2pi) |C2~(-i(delta_k - delta1))|^2."""
    return Spectrum(grid, s2_points(grid.deltas, scenario), Channel.S2)


def spectrum_s3(grid, scenario):
    """S3 on ``grid``: (gamma3 / 2pi) |C3~(-i(delta_q - delta1 - delta3))|^2."""
    return Spectrum(grid, s3_points(grid.deltas, scenario), Channel.S3)


def spectrum(grid, scenario, channel=Channel.S2):
    if Channel.parse(channel) is Channel.S2:
        return spectrum_s2(grid, scenario)
    return spectrum_s3(grid, scenario)


def trapped_populations(scenario):
    """Long-time populations of the non-decaying levels from the transformed amplitudes.

    Integrating the ground-state equations in the lab frame gives
    a1(inf) = a1 + (i Omega12*/2) C2~(0) and
    a4(inf) = a4 + (i Omega24*/2) C2~(i(delta1 - delta2)); level |3> keeps
    population only when gamma3 = 0.  Returns (p1, p3, p4).
    """
    d, g, a = scenario.drive, scenario.decay, scenario.init
    p1 = abs(a.a1 + 0.5j * d.omega12.conjugate() * c2_tilde(0j, scenario)) ** 2
    p4 = abs(a.a4 + 0.5j * d.omega24.conjugate()
             * c2_tilde(1j * (d.delta1 - d.delta2), scenario)) ** 2
    if g.gamma3 > 0.0:
        p3 = 0.0
    else:
        p3 = abs(a.a3 + 0.5j * d.omega23 * c2_tilde(1j * (d.delta1 + d.delta3), scenario)) ** 2
    return p1, p3, p4
