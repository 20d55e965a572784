"""
Non-rigorous double precision pre-pass.

Everything here only produces starting points: the periodic point seed, the
branch of f^{-q} continued along the boundary curve and the cut direction
of the crescent coordinate. Rigor enters when the seeds are verified.
"""

from dataclasses import dataclass
from typing import Callable
import math

import numpy as np
from numpy.polynomial import polynomial as npoly

from beltrami_cert.analytic.dynamics import float_coeffs
from beltrami_cert.analytic.fnstd import FnStd
from beltrami_cert.utils import VerificationError, get_logger

BRANCH_SAMPLES = 4000
NEWTON_STEPS = 60

log = get_logger(__name__)


def periodic_roots(f: FnStd, q: int) -> np.ndarray:
    """Roots of f^q(z) = z that are not fixed points of f."""
    coeffs = float_coeffs(f)
    composed = np.array([0, 1], dtype=complex)
    for _ in range(q):
        composed = npoly.polyval(npoly.Polynomial(composed), coeffs).coef
    roots = npoly.polyroots(npoly.polysub(composed, [0, 1]))
    fixed = npoly.polyroots(npoly.polysub(coeffs, [0, 1]))
    keep = [z for z in roots if np.min(np.abs(fixed - z)) > 1e-6]
    return np.asarray(keep, dtype=complex)


def select_periodic_seed(f: FnStd, q: int, anchor: complex) -> complex:
    """
    The period q point closest to `anchor`. For the crescent the anchor is
    the critical orbit point the boundary curve passes through.
    """
    roots = periodic_roots(f, q)
    if roots.size == 0:
        raise VerificationError(f"No points of exact period dividing {q} besides the fixed points.")
    seed = complex(roots[np.argmin(np.abs(roots - anchor))])
    log.debug(f"Periodic seed of period {q} near {anchor}: {seed}.")
    return seed


def _newton_inverse(coeffs: np.ndarray, q: int, w: complex, z: complex) -> complex:
    """Solve f^q(z) = w by Newton from `z`."""
    dcoeffs = npoly.polyder(coeffs)
    for _ in range(NEWTON_STEPS):
        value, slope = z, 1.0 + 0j
        for _ in range(q):
            slope *= npoly.polyval(value, dcoeffs)
            value = npoly.polyval(value, coeffs)
        if slope == 0:
            break
        step = (value - w) / slope
        z = complex(z - step)
        if abs(step) <= 1e-16 * (1.0 + abs(z)):
            break
    return z


@dataclass(frozen=True)
class BranchTable:
    """
    Samples of the boundary curve and of its preimage under the branch of
    f^{-q} that fixes 0, continued along increasing parameter values.
    """

    radii: np.ndarray
    curve: np.ndarray
    preimages: np.ndarray

    def seed(self, r: float) -> complex:
        i = int(np.clip(np.searchsorted(self.radii, r), 0, len(self.radii) - 1))
        if i > 0 and abs(self.radii[i - 1] - r) < abs(self.radii[i] - r):
            i -= 1
        return complex(self.preimages[i])

    def rows(self):
        for r, z, w in zip(self.radii, self.curve, self.preimages):
            yield float(r), float(z.real), float(z.imag), float(w.real), float(w.imag)


def branch_table(
    f: FnStd,
    q: int,
    multiplier: complex,
    curve: Callable[[float], complex],
    r_min: float,
    r_max: float,
    samples: int = BRANCH_SAMPLES,
) -> BranchTable:
    """
    Continue the branch of f^{-q} fixing 0 along curve(r), r in [r_min, r_max],
    on a logarithmic parameter grid. Near 0 the branch is w -> multiplier^{-q} w.
    """
    coeffs = float_coeffs(f)
    radii = np.geomspace(r_min, r_max, samples)
    points = np.array([curve(float(r)) for r in radii], dtype=complex)
    preimages = np.empty_like(points)
    z = points[0] * multiplier ** (-q)
    for i, w in enumerate(points):
        z = _newton_inverse(coeffs, q, complex(w), z)
        preimages[i] = z
    jumps = np.abs(np.diff(preimages))
    steps = np.abs(np.diff(points))
    if np.any(~np.isfinite(preimages)):
        raise VerificationError("Branch continuation of the inverse iterate diverged.")
    log.debug(
        f"Branch table on [{r_min:.3e}, {r_max:.3e}]: {samples} samples, "
        f"largest preimage step {jumps.max():.3e} for curve step {steps.max():.3e}."
    )
    return BranchTable(radii, points, preimages)


def choose_cut_angle(values: np.ndarray) -> float:
    """
    Direction of a ray from 0 that stays farthest, in angle, from every
    sampled value: the middle of the largest gap between their arguments.
    """
    values = np.asarray(values, dtype=complex)
    values = values[np.abs(values) > 0]
    if values.size == 0:
        return math.pi
    args = np.sort(np.angle(values))
    gaps = np.diff(np.concatenate([args, [args[0] + 2.0 * math.pi]]))
    i = int(np.argmax(gaps))
    cut = args[i] + gaps[i] / 2.0
    return float(math.remainder(cut, 2.0 * math.pi)) or 0.0
