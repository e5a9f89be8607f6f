"""Closed forms for the fully resonant drive (delta1 = delta2 = delta3 = 0).

On resonance the cleared denominator of C2~(s) reduces to the cubic

    P(s) = s^3 + c2 s^2 + c1 s + c0,
    c2 = (g2 + g3)/2,
    c1 = (|O12|^2 + |O24|^2 + |O23|^2 + g2 g3)/4,
    c0 = (g3/2) (|O12|^2 + |O24|^2)/4,

and the S2 spectrum factors over its roots.  Roots are the zeros of P as
written; because they come in conjugate pairs, |prod(-i d + L_j)| equals
|P(-i d)| whichever sign convention is used for the factors, so every
spectral quantity below is insensitive to it.  Widths are reported as
absolute real parts.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional, Tuple

import numpy as np
from scipy.signal import find_peaks, peak_prominences

from .errors import DegenerateRoots, NotResonant
from .model import RESONANCE_TOL, Channel, Spectrum
from .laplace import s2_points

DEGENERACY_TOL = 1e-8
CLUSTER_TOL = 1e-4
REAL_ROOT_TOL = 1e-10


@dataclass(frozen=True)
class CubicDecomposition:
    """Roots of the resonant cubic and, when they are distinct, the weights
    beta_j of 1/prod(x + i L_j) = sum_j beta_j/(x + i L_j)."""

    lambda1: complex
    lambda2: complex
    lambda3: complex
    beta1: Optional[complex] = None
    beta2: Optional[complex] = None
    beta3: Optional[complex] = None
    degenerate: bool = False
    all_real: bool = False

    @property
    def roots(self):
        return np.array([self.lambda1, self.lambda2, self.lambda3], dtype=complex)

    @property
    def weights(self):
        if self.beta1 is None:
            return None
        return np.array([self.beta1, self.beta2, self.beta3], dtype=complex)


@dataclass(frozen=True)
class SpectralFeatures:
    """Sideband offset and half-widths of the three-peak S2 line shape.

    ``gamma_sideband >= gamma_central`` is *not* enforced: it fails for
    part of parameter space (e.g. O12=0.5, O24=2, O23=1), see
    ``sideband_broader_than_centre``.
    """

    delta_lambda: float
    gamma_central: float
    gamma_sideband: float
    conjugate_pair: bool
    degenerate: bool
    resolved: bool

    @property
    def central_width(self):
        return 2.0 * self.gamma_central

    @property
    def sideband_width(self):
        return 2.0 * self.gamma_sideband

    @property
    def sideband_broader_than_centre(self):
        return self.gamma_sideband >= self.gamma_central


def require_resonant(drive):
    if not drive.is_resonant:
        raise NotResonant(
            "resonant closed forms need delta1 = delta2 = delta3 = 0 "
            f"(|delta| <= {RESONANCE_TOL}); got {drive.delta1}, {drive.delta2}, {drive.delta3}")


def cubic_coefficients(drive, decay):
    """(c2, c1, c0) of the resonant characteristic cubic."""
    require_resonant(drive)
    g2, g3 = decay.gamma2, decay.gamma3
    o12, o24, o23 = abs(drive.omega12) ** 2, abs(drive.omega24) ** 2, abs(drive.omega23) ** 2
    c2 = (g2 + g3) / 2
    c1 = (o12 + o24 + o23 + g2 * g3) / 4
    c0 = (g3 / 2) * ((o12 + o24) / 4)
    return c2, c1, c0


def cubic_value(s, coefficients):
    c2, c1, c0 = coefficients
    return ((s + c2) * s + c1) * s + c0


def _scale(coefficients):
    c2, c1, c0 = (abs(c) for c in coefficients)
    return max(c2, math.sqrt(c1), c0 ** (1.0 / 3.0), 1e-300)


def _polish(root, coefficients, iterations=3):
    c2, c1, _ = coefficients
    for _ in range(iterations):
        f = cubic_value(root, coefficients)
        fp = (3 * root + 2 * c2) * root + c1
        if fp == 0:
            break
        step = f / fp
        if not np.isfinite(step):
            break
        root = root - step
    return root


def _order(roots, scale):
    """Most-real root first, then the pair member with Im > 0."""
    imag_tol = REAL_ROOT_TOL * scale
    real_like = [r for r in roots if abs(r.imag) <= imag_tol]
    if len(real_like) == 3:
        ordered = sorted((complex(r.real, 0.0) for r in roots), key=lambda r: -r.real)
        return ordered, True
    first = min(roots, key=lambda r: abs(r.imag))
    rest = [r for r in roots if r is not first]
    upper = max(rest, key=lambda r: r.imag)
    # enforce the exact conjugate structure implied by real coefficients
    pair = complex(0.5 * (rest[0].real + rest[1].real), abs(upper.imag))
    return [complex(first.real, 0.0), pair, pair.conjugate()], False


def cubic_roots(coefficients):
    """Roots of s^3 + c2 s^2 + c1 s + c0 via companion-matrix eigenvalues.

    Roots are Newton-polished; clusters (multiple roots, where the
    eigenvalue route loses half the digits) are snapped onto the
    corresponding zero of P' or onto -c2/3 for a triple root.
    """
    c2, c1, c0 = (float(c) for c in coefficients)
    coefficients = (c2, c1, c0)
    scale = _scale(coefficients)
    roots = [_polish(complex(r), coefficients) for r in np.roots([1.0, c2, c1, c0])]

    close = [(i, j) for i in range(3) for j in range(i + 1, 3)
             if abs(roots[i] - roots[j]) <= CLUSTER_TOL * scale]
    triple = complex(-c2 / 3)
    slope = (3 * triple + 2 * c2) * triple + c1
    if (len(close) >= 2 and abs(cubic_value(triple, coefficients)) <= 1e-10 * scale ** 3
            and abs(slope) <= 1e-8 * scale ** 2):
        roots = [triple] * 3
    elif close:
        i, j = min(close, key=lambda ij: abs(roots[ij[0]] - roots[ij[1]]))
        centre = 0.5 * (roots[i] + roots[j])
        crit = np.roots([3.0, 2 * c2, c1]) if (c2 or c1) else np.array([0.0])
        double = complex(min(crit, key=lambda z: abs(z - centre)))
        if abs(cubic_value(double, coefficients)) <= 1e-10 * scale ** 3:
            roots[i] = roots[j] = double
            k = 3 - i - j
            roots[k] = complex(-c2 - 2 * double)

    ordered, all_real = _order(roots, scale)
    degenerate = any(abs(ordered[a] - ordered[b]) <= DEGENERACY_TOL * scale
                     for a in range(3) for b in range(a + 1, 3))
    return CubicDecomposition(*ordered, degenerate=degenerate, all_real=all_real)


def depressed_cubic_terms(drive, decay):
    """p and q of the depressed cubic, written out in the physical parameters."""
    require_resonant(drive)
    g2, g3 = decay.gamma2, decay.gamma3
    o_all = (abs(drive.omega12) ** 2 + abs(drive.omega24) ** 2 + abs(drive.omega23) ** 2 + g2 * g3) / 4
    o_lambda = (abs(drive.omega12) ** 2 + abs(drive.omega24) ** 2) / 4
    shift = (g2 + g3) / 6
    p = o_all - (g2 + g3) ** 2 / 12
    q = -shift * o_all + (g3 / 2) * o_lambda + 2 * shift ** 3
    return p, q


def cardano_roots(drive, decay):
    """Cardano's formulas written out term by term.

    Returns (roots, y_plus, y_minus, discriminant).  For a real radicand the
    real cube root is taken; otherwise the principal complex cube root of
    the y_plus radicand, with y_minus = -p / (3 y_plus).
    """
    p, q = depressed_cubic_terms(drive, decay)
    shift = (decay.gamma2 + decay.gamma3) / 6
    disc = (q / 2) ** 2 + (p / 3) ** 3
    if disc >= 0:
        root_disc = math.sqrt(disc)
        y_plus = complex(np.cbrt(-q / 2 + root_disc))
        y_minus = complex(np.cbrt(-q / 2 - root_disc))
    else:
        y_plus = complex(-q / 2 + 1j * math.sqrt(-disc)) ** (1.0 / 3.0)
        y_minus = -p / (3 * y_plus)
    half_sqrt3 = math.sqrt(3) / 2
    lam1 = y_plus + y_minus - shift
    lam2 = -(y_plus + y_minus) / 2 - shift + 1j * half_sqrt3 * (y_plus - y_minus)
    lam3 = -(y_plus + y_minus) / 2 - shift + 1j * half_sqrt3 * (y_minus - y_plus)
    return np.array([lam1, lam2, lam3]), y_plus, y_minus, disc


def cardano_cross_check(drive, decay, tol=1e-8):
    """Compare the robust roots with the Cardano formulas.

    Returns (agree, max_deviation, unambiguous).  ``unambiguous`` is True
    when the radicand is strictly positive (real cube roots, no branch
    choice).  Roots are matched as sets.
    """
    robust = cubic_roots(cubic_coefficients(drive, decay)).roots
    literal, _, _, disc = cardano_roots(drive, decay)
    remaining = list(literal)
    worst = 0.0
    for r in robust:
        k = min(range(len(remaining)), key=lambda i: abs(remaining[i] - r))
        worst = max(worst, abs(remaining.pop(k) - r))
    scale = max(1.0, _scale(cubic_coefficients(drive, decay)))
    return worst <= tol * scale, worst, disc > 0


def _check_distinct(roots):
    for a in range(3):
        for b in range(a + 1, 3):
            if abs(roots[a] - roots[b]) <= DEGENERACY_TOL:
                raise DegenerateRoots(
                    f"roots {roots[a]} and {roots[b]} coincide within {DEGENERACY_TOL}")


def partial_fractions(roots):
    """Weights beta_j with 1/prod_m(x + i L_m) = sum_j beta_j / (x + i L_j).

    beta_j = 1 / prod_{m != j} (i L_m - i L_j).  Roots are in units of
    gamma2 and must be pairwise separated by more than 1e-8.
    """
    lam = np.asarray(roots, dtype=complex)
    _check_distinct(lam)
    z = 1j * lam
    return np.array([1.0 / np.prod([z[m] - z[j] for m in range(3) if m != j]) for j in range(3)])


def partial_fractions_permutation_form(roots):
    """Same weights from the antisymmetric closed form

        beta_i = (L_k - L_j) / (L1^2 (L2 - L3) + L2^2 (L3 - L1) + L3^2 (L1 - L2))

    with (i, j, k) a cyclic permutation of (1, 2, 3).
    """
    lam = np.asarray(roots, dtype=complex)
    _check_distinct(lam)
    l1, l2, l3 = lam
    den = l1 ** 2 * (l2 - l3) + l2 ** 2 * (l3 - l1) + l3 ** 2 * (l1 - l2)
    return np.array([(l3 - l2) / den, (l1 - l3) / den, (l2 - l1) / den])


def decompose(drive, decay):
    """Roots plus partial-fraction weights (weights omitted if degenerate)."""
    dec = cubic_roots(cubic_coefficients(drive, decay))
    if dec.degenerate:
        return dec
    try:
        b = partial_fractions(dec.roots)
    except DegenerateRoots:
        return CubicDecomposition(dec.lambda1, dec.lambda2, dec.lambda3,
                                  degenerate=True, all_real=dec.all_real)
    return CubicDecomposition(dec.lambda1, dec.lambda2, dec.lambda3, *b,
                              degenerate=False, all_real=dec.all_real)


def resonant_numerator(deltas, scenario):
    """Numerator of the factored S2 amplitude on resonance, as a function of delta_k."""
    d, g, a = scenario.drive, scenario.decay, scenario.init
    x = np.asarray(deltas, dtype=float)
    ground = d.omega12 * a.a1 / 2 + d.omega24 * a.a4 / 2
    return (ground - a.a2 * x) * (x + 0.5j * g.gamma3) + d.omega23.conjugate() * a.a3 * x / 2


def resonant_s2_points(deltas, scenario, decomposition=None):
    require_resonant(scenario.drive)
    x = np.asarray(deltas, dtype=float)
    dec = decomposition or decompose(scenario.drive, scenario.decay)
    num = resonant_numerator(x, scenario)
    if dec.degenerate or dec.weights is None:
        # repeated roots: no partial fractions; the pole-cleared form also
        # removes zeros shared by numerator and cubic (e.g. the undriven atom)
        return s2_points(x, scenario)
    inv_den = sum(b / (x + 1j * lam) for b, lam in zip(dec.weights, dec.roots))
    return scenario.decay.gamma2 / (2 * math.pi) * np.abs(num * inv_den) ** 2


def resonant_spectrum_s2(grid, scenario):
    """S2 from the cubic roots and partial-fraction weights (product form if degenerate)."""
    return Spectrum(grid, resonant_s2_points(grid.deltas, scenario), Channel.S2)


def three_lorentzian_s2(deltas, drive, decay):
    """S2 for a1(0) = 1 written as a product of three Lorentzian denominators."""
    dec = cubic_roots(cubic_coefficients(drive, decay))
    x = np.asarray(deltas, dtype=float)
    gamma1 = dec.lambda1.real
    gamma2 = dec.lambda2.real
    dl = dec.lambda2.imag
    g2, g3 = decay.gamma2, decay.gamma3
    num = g2 / (2 * math.pi) * abs(drive.omega12 / 2) ** 2 * (x ** 2 + g3 ** 2 / 4)
    den = (x ** 2 + gamma1 ** 2) * ((x - dl) ** 2 + gamma2 ** 2) * ((x + dl) ** 2 + gamma2 ** 2)
    return num / den


def spectral_features(drive, decay):
    """Sideband offset |Im L2|, central half-width |Re L1|, sideband half-width |Re L2|.

    With three real roots there are no sidebands: delta_lambda is 0 and the
    two widths are those of the first two roots.  ``resolved`` follows the
    convention delta_lambda > max(gamma_central, gamma_sideband).
    """
    dec = cubic_roots(cubic_coefficients(drive, decay))
    if dec.all_real:
        return SpectralFeatures(0.0, abs(dec.lambda1.real), abs(dec.lambda2.real),
                                conjugate_pair=False, degenerate=dec.degenerate, resolved=False)
    dl = abs(dec.lambda2.imag)
    g1, g2 = abs(dec.lambda1.real), abs(dec.lambda2.real)
    return SpectralFeatures(dl, g1, g2, conjugate_pair=True, degenerate=dec.degenerate,
                            resolved=dl > max(g1, g2))


def dark_state_check(drive, init, tol=1e-12):
    """Ground-state superposition decoupled from |2>: O12 a1 + O24 a4 = 0."""
    require_resonant(drive)
    if abs(init.a2) > tol or abs(init.a3) > tol:
        return False
    return abs(drive.omega12 * init.a1 + drive.omega24 * init.a4) < tol


def dark_line_check(init, tol=1e-12):
    """True when S2 has an exact zero at delta_k = 0 (no ground-state amplitude)."""
    return abs(init.a1) <= tol and abs(init.a4) <= tol


# ----------------------------------------------------------------------------
# line-shape measurements on sampled spectra


def local_maxima(spectrum, lo=None, hi=None):
    """Indices of strict local maxima (optionally restricted to [lo, hi])."""
    x = spectrum.deltas
    mask = np.ones_like(x, dtype=bool)
    if lo is not None:
        mask &= x >= lo
    if hi is not None:
        mask &= x <= hi
    idx = np.flatnonzero(mask)
    peaks, _ = find_peaks(spectrum.values[idx])
    return idx[peaks]


def peak_positions(spectrum, lo=None, hi=None):
    return spectrum.deltas[local_maxima(spectrum, lo, hi)]


def sideband_peaks(spectrum) -> Tuple[float, float]:
    """Positions of the outermost local maxima on either side of zero."""
    pos = peak_positions(spectrum)
    left, right = pos[pos < 0], pos[pos > 0]
    if not left.size or not right.size:
        raise ValueError("spectrum has no sideband peak on one side of zero")
    return float(left.min()), float(right.max())


def central_peak(spectrum):
    """Index of the local maximum at delta = 0, or None."""
    i0 = int(np.argmin(np.abs(spectrum.deltas)))
    peaks = local_maxima(spectrum)
    return i0 if i0 in set(peaks.tolist()) else None


def central_prominence(spectrum):
    """Height of the central peak above the higher of its two flanking minima (0 if absent)."""
    i0 = central_peak(spectrum)
    if i0 is None:
        return 0.0
    return float(peak_prominences(spectrum.values, [i0])[0][0])


def central_fwhm(spectrum):
    """Full width at half maximum of the central peak (linear interpolation)."""
    i0 = central_peak(spectrum)
    if i0 is None:
        raise ValueError("no central peak")
    x, y = spectrum.deltas, spectrum.values
    half = 0.5 * y[i0]

    def crossing(step):
        i = i0
        while 0 < i < len(y) - 1 and y[i + step] > half:
            i += step
        j = i + step
        if not 0 <= j < len(y) or y[j] > half:
            raise ValueError("central peak does not fall to half maximum inside the grid")
        return x[i] + (half - y[i]) * (x[j] - x[i]) / (y[j] - y[i])

    return float(crossing(1) - crossing(-1))
