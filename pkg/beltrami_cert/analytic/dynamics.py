"""
Validated dynamics of the golden mean quadratic f(z) = lambda z (1 - z/2).
"""

from dataclasses import dataclass
from functools import cached_property
import math

import numpy as np
from numpy.polynomial import polynomial as npoly

from beltrami_cert.analytic.fnstd import FnStd, fn_deriv_eval_disk, fn_eval_disk, orbit
from beltrami_cert.rigor import interval as ia
from beltrami_cert.rigor.disk import ONE, Disk
from beltrami_cert.rigor.interval import Interval
from beltrami_cert.utils import BranchError, VerificationError, fibonacci, get_logger

DEFAULT_DEGREE = 32
DEFAULT_RHO = 16.0
NEWTON_INFLATIONS = 40
FLOAT_NEWTON_STEPS = 60

log = get_logger(__name__)


@dataclass(frozen=True)
class GoldenQuadratic:
    """
    The map f(z) = lambda z - (lambda/2) z^2 with lambda = exp(2 pi i theta)
    and theta the golden mean, as a standard set without error terms.
    """

    degree: int = DEFAULT_DEGREE
    rho: float = DEFAULT_RHO

    @cached_property
    def theta(self) -> Interval:
        return (ia.sqrt(Interval.point(5)) - 1.0) / 2.0

    @cached_property
    def lam(self) -> Disk:
        return Disk.from_polar(Interval(1.0, 1.0), ia.two_pi() * self.theta)

    @cached_property
    def fn(self) -> FnStd:
        return FnStd.polynomial([self.lam, -self.lam * 0.5], self.degree, self.rho)

    def q(self, n: int) -> int:
        return fibonacci(n)

    def rotation_exponent(self, n: int) -> Interval:
        """(-q_n theta mod 1) as an interval inside (0, 1)."""
        x = self.theta * self.q(n)
        k = math.floor(x.lo)
        if math.floor(x.hi) != k:
            raise VerificationError(f"q_{n} theta is not separated from an integer: {x}.")
        return Interval.point(k + 1) - x


@dataclass(frozen=True)
class PeriodicPoint:
    point: Disk
    multiplier: Disk
    period: int
    newton_radius: float

    def to_dict(self) -> dict:
        return {
            "point": self.point.to_dict(),
            "multiplier": self.multiplier.to_dict(),
            "period": self.period,
        }


# ---- non-rigorous pre-pass ----


def float_coeffs(f: FnStd) -> np.ndarray:
    """Coefficient centers, constant term first."""
    return np.array([0j] + [c.center for c in f.coeffs[: f._effective]], dtype=complex)


def float_eval(f: FnStd, z: complex) -> complex:
    return complex(npoly.polyval(z, float_coeffs(f)))


def float_deriv(f: FnStd, z: complex) -> complex:
    return complex(npoly.polyval(z, npoly.polyder(float_coeffs(f))))


def float_orbit(f: FnStd, z: complex, k: int) -> list[complex]:
    coeffs = float_coeffs(f)
    points = [complex(z)]
    for _ in range(k):
        points.append(complex(npoly.polyval(points[-1], coeffs)))
    return points


def _float_periodic_newton(f: FnStd, q: int, z: complex) -> complex:
    coeffs = float_coeffs(f)
    dcoeffs = npoly.polyder(coeffs)
    for _ in range(FLOAT_NEWTON_STEPS):
        w, dw = z, 1.0 + 0j
        for _ in range(q):
            dw *= npoly.polyval(w, dcoeffs)
            w = npoly.polyval(w, coeffs)
        denominator = dw - 1.0
        if denominator == 0:
            break
        step = (w - z) / denominator
        z = complex(z - step)
        if abs(step) <= 1e-17 * (1.0 + abs(z)):
            break
    return z


def _float_preimage_newton(f: FnStd, w: complex, z: complex) -> complex:
    coeffs = float_coeffs(f)
    dcoeffs = npoly.polyder(coeffs)
    for _ in range(FLOAT_NEWTON_STEPS):
        d = npoly.polyval(z, dcoeffs)
        if d == 0:
            break
        step = (npoly.polyval(z, coeffs) - w) / d
        z = complex(z - step)
        if abs(step) <= 1e-17 * (1.0 + abs(z)):
            break
    return z


# ---- validated operations ----


def iterate_derivative(f: FnStd, z: Disk, k: int) -> Disk:
    """Disk containing (f^k)'(w) for every w in `z`, by the chain rule."""
    product = ONE
    for _ in range(k):
        product = product * fn_deriv_eval_disk(f, z)
        z = fn_eval_disk(f, z)
    return product


def periodic_point(f: FnStd, n: int, seed: Disk) -> PeriodicPoint:
    """
    Verified fixed point of f^{q_n} near `seed`, with its multiplier.

    The point is certified by the interval Newton operator
    N(Z) = c - (f^q(c) - c) / ((f^q)'(Z) - 1) mapping Z into its interior,
    which gives existence and uniqueness in Z; the multiplier must have
    modulus greater than 1.

    Raises:
        VerificationError: if the Newton operator never contracts, the point
            leaves the seed disk, or the point is not repelling.
    """
    seed = Disk.of(seed)
    q = fibonacci(n)
    c = _float_periodic_newton(f, q, seed.center)
    w = float_orbit(f, c, q)[-1]
    r = max(1e3 * abs(w - c), 1e-14 * (1.0 + abs(c)))
    residual = orbit(f, Disk(c), q) - c
    for _ in range(NEWTON_INFLATIONS):
        z = Disk(c, r)
        slope = iterate_derivative(f, z, q) - 1.0
        if not slope.contains_zero():
            candidate = c - residual / slope
            if z.interior_contains(candidate):
                break
            r = max(4.0 * r, 2.0 * (candidate.distance_up(c) + candidate.radius))
        else:
            r = 4.0 * r
    else:
        raise VerificationError(f"Newton operator for f^{q} does not contract near {seed.center}.")
    if seed.radius > 0.0 and not seed.contains(candidate):
        raise VerificationError(f"Fixed point of f^{q} at {candidate} leaves the seed {seed}.")
    multiplier = iterate_derivative(f, candidate, q)
    if multiplier.mig <= 1.0:
        raise VerificationError(f"Fixed point of f^{q} is not certified repelling: |xi| in {multiplier.abs()}.")
    log.debug(f"Verified fixed point of f^{q} in {candidate}, multiplier {multiplier}.")
    return PeriodicPoint(candidate, multiplier, q, r)


def inverse_step(f: FnStd, w: Disk, guess: complex) -> Disk:
    """
    Disk containing, for every target in `w`, the unique preimage under f
    inside a Newton-verified disk around `guess`.

    Raises:
        BranchError: if the derivative enclosure contains 0.
        VerificationError: if the Newton operator never contracts.
    """
    w = Disk.of(w)
    c = _float_preimage_newton(f, w.center, complex(guess))
    d = float_deriv(f, c)
    if d == 0:
        raise BranchError(f"Critical point at {c}: no local inverse branch.")
    r = max(2.0 * w.radius / abs(d), 1e-15 * (1.0 + abs(c)))
    residual = fn_eval_disk(f, Disk(c)) - w
    for _ in range(NEWTON_INFLATIONS):
        z = Disk(c, r)
        slope = fn_deriv_eval_disk(f, z)
        if slope.contains_zero():
            raise BranchError(f"Derivative disk {slope} over {z} contains 0.")
        candidate = c - residual / slope
        if z.interior_contains(candidate):
            return candidate
        r = max(4.0 * r, 2.0 * (candidate.distance_up(c) + candidate.radius))
    raise VerificationError(f"Inverse branch Newton does not contract for target {w}.")


def inverse_branch_chain(f: FnStd, n: int, w: Disk, seed: Disk | complex) -> list[Disk]:
    """
    The disks Z_0, ..., Z_{q-1} of the branch of f^{-q_n} continuing `seed`,
    with Z_0 the preimage of `w` and f(Z_j) meeting Z_{j+1}.
    """
    q = fibonacci(n)
    guesses = float_orbit(f, Disk.of(seed).center, q - 1)
    chain = []
    target = Disk.of(w)
    for j in range(q - 1, -1, -1):
        target = inverse_step(f, target, guesses[j])
        chain.append(target)
    chain.reverse()
    return chain


def inverse_branch(f: FnStd, n: int, w: Disk, seed: Disk | complex) -> Disk:
    return inverse_branch_chain(f, n, w, seed)[0]


def inverse_branch_derivative(f: FnStd, chain: list[Disk]) -> Disk:
    """D f^{-q}(w) = 1 / prod f'(Z_j) along a verified chain."""
    product = ONE
    for z in chain:
        product = product * fn_deriv_eval_disk(f, z)
    return product.reciprocal()
