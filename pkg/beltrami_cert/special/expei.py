"""
Certified enclosures of ExpEi(z) = exp(-z) Ei(z).

Ei is continued off the positive real axis as Ei(z) = -E1(-z), so ExpEi has its
cut along [0, inf). Two regimes are used:

- near zero, the convergent series
  Ei(z) = gamma + ln(-z) + sum_{i=1}^n z^i/(i! i) + E_n(z),
  |E_n(z)| <= e^{|z|} |z|^{n+1} / ((n+1)! (n+1)),
  evaluated with mpmath interval arithmetic at a precision that grows with |z|;
- far from zero, the asymptotic series
  ExpEi(z) = (1/z) [sum_{i=0}^n i!/z^i + R_n(z)],
  evaluated in disk arithmetic.

Disks of positive radius are handled in centered form: the value at the center
plus r * sup|ExpEi'|, where ExpEi' = 1/z - ExpEi and, from the integral
representation ExpEi(w) = int_0^inf e^{-t}/(w - t) dt, both terms are bounded by
1/dist(w, [0, inf)).
"""

from dataclasses import dataclass, field
from typing import Literal
import math

from mpmath import iv

from beltrami_cert.rigor import interval as ia
from beltrami_cert.rigor import rounding as rd
from beltrami_cert.rigor.disk import Disk
from beltrami_cert.rigor.interval import Interval
from beltrami_cert.utils import DomainError, PrecisionError

ASYMPTOTIC_THRESHOLD = 35.0
NEAR_ZERO_MAX_TERMS = 400
ABS_TOLERANCE = 1e-12

Regime = Literal["near_zero", "asymptotic"]


@dataclass(frozen=True)
class ExpEiRegime:
    """
    How one ExpEi enclosure was produced.

    `printed_factor` is the bracket eta(Re z)(|z| - |Im z|) + 1 of the
    asymptotic remainder; `used_factor` is the factor actually applied, which
    differs only for Re z > 0 and |Im z| < 1 where the printed bracket does not
    dominate |z|/|Im z|.
    """

    regime: Regime
    order: int
    threshold: float = ASYMPTOTIC_THRESHOLD
    remainder: float = 0.0
    printed_factor: float = 1.0
    used_factor: float = 1.0
    derivative_padding: float = field(default=0.0)


def distance_to_cut(c: complex) -> float:
    """Lower bound on the distance from c to the ray [0, inf)."""
    if c.real <= 0.0:
        return rd.hypot_down(c.real, c.imag)
    return abs(c.imag)


def _near_zero_order(z: complex, tol: float) -> int:
    absz = abs(z)
    if absz == 0.0:
        raise DomainError("ExpEi is singular at 0.")
    log_tol = math.log(tol)
    base = absz - z.real
    log_absz = math.log(absz)
    for n in range(1, NEAR_ZERO_MAX_TERMS + 1):
        log_bound = base + (n + 1) * log_absz - math.lgamma(n + 2) - math.log(n + 1)
        if log_bound < log_tol - 2.0:
            return n
    raise PrecisionError(
        f"Near-zero ExpEi series needs more than {NEAR_ZERO_MAX_TERMS} terms at z={z}."
    )


def _near_zero_point(z: complex, tol: float = 1e-20) -> tuple[Disk, ExpEiRegime]:
    n = _near_zero_order(z, tol)
    on_cut = z.imag == 0.0 and z.real > 0.0
    prec = 64 + 2 * int(math.ceil(abs(z)))
    with ia.working_precision(prec):
        zz = iv.mpc(z.real, z.imag)
        term = iv.mpc(1)
        total = iv.mpc(0)
        for k in range(1, n + 1):
            term = term * zz / k
            total = total + term / k
        if on_cut:
            # principal value on the cut
            log_term = iv.ln(iv.mpf(z.real))
        else:
            log_term = iv.ln(-zz)
        value = iv.exp(-zz) * (iv.euler + log_term + total)
        absz = abs(zz)
        bound = (
            iv.exp(absz - iv.mpf(z.real))
            * absz ** (n + 1)
            / (iv.factorial(n + 1) * (n + 1))
        )
        re = ia.from_iv(value.real)
        im = ia.from_iv(value.imag)
        remainder = ia.from_iv(bound).hi
    disk = Disk.from_box(re, im).inflate(remainder)
    return disk, ExpEiRegime("near_zero", n, remainder=remainder)


def _asymptotic_factor(z: complex) -> tuple[float, float]:
    """Printed and applied remainder factors, both as upper bounds."""
    if z.real <= 0.0:
        return 1.0, 1.0
    absz = Interval.point(rd.hypot_up(z.real, z.imag))
    abs_im = Interval.point(abs(z.imag))
    printed = (absz - abs_im + 1.0).hi
    if abs(z.imag) >= 1.0:
        return printed, printed
    if z.imag == 0.0:
        raise DomainError(f"Asymptotic ExpEi series is not used on the cut: z={z}.")
    return printed, (absz / abs_im).hi


def _asymptotic_point(z: complex, tol: float = ABS_TOLERANCE) -> tuple[Disk, ExpEiRegime]:
    printed, factor = _asymptotic_factor(z)
    absz_lo = rd.hypot_down(z.real, z.imag)
    n_cap = max(1, int(math.floor(absz_lo)) - 2)
    target = 2.0**-60
    # (n+1)!/|z|^{n+1} by its running ratio
    ratio = 1.0 / absz_lo
    n = n_cap
    for k in range(1, n_cap + 1):
        ratio *= (k + 1) / absz_lo
        if factor * ratio < target:
            n = k
            break
    fact = Interval.point(math.factorial(n + 1))
    abs_lo = Interval.point(absz_lo)
    remainder = (factor * fact / abs_lo ** (n + 2)).hi
    if remainder > tol:
        raise PrecisionError(
            f"Asymptotic ExpEi remainder {remainder:.3e} exceeds {tol:.1e} at z={z}."
        )
    w = Disk(z).reciprocal()
    acc = Disk.of(math.factorial(n))
    for i in range(n - 1, -1, -1):
        acc = acc * w + Disk.of(math.factorial(i))
    value = (w * acc).inflate(remainder)
    return value, ExpEiRegime(
        "asymptotic", n, remainder=remainder, printed_factor=printed, used_factor=factor
    )


def choose_regime(z: complex, threshold: float = ASYMPTOTIC_THRESHOLD) -> Regime:
    on_cut = z.imag == 0.0 and z.real > 0.0
    if on_cut or abs(z) < threshold:
        return "near_zero"
    return "asymptotic"


def expei_with_regime(
    z: Disk | complex,
    regime: Regime | None = None,
    threshold: float = ASYMPTOTIC_THRESHOLD,
) -> tuple[Disk, ExpEiRegime]:
    """
    Enclosure of ExpEi over the disk `z`, with the regime data used.

    Raises:
        DomainError: if a disk of positive radius touches the cut, or z = 0.
        PrecisionError: if neither series reaches its tolerance.
    """
    z = Disk.of(z)
    c, r = z.center, z.radius
    gap = rd.sub_down(distance_to_cut(c), r)
    if r > 0.0 and gap <= 0.0:
        raise DomainError(f"ExpEi argument disk touches the branch cut: {z}.")
    if c == 0:
        raise DomainError("ExpEi is singular at 0.")
    chosen = regime or choose_regime(c, threshold)
    if chosen == "near_zero":
        value, info = _near_zero_point(c)
    else:
        try:
            value, info = _asymptotic_point(c)
        except PrecisionError:
            if regime is not None:
                raise
            # |z|/|Im z| too large for the asymptotic remainder
            value, info = _near_zero_point(c)
    if r > 0.0:
        padding = rd.mul_up(rd.div_up(2.0, gap), r)
        value = value.inflate(padding)
        info = ExpEiRegime(
            info.regime,
            info.order,
            threshold,
            info.remainder,
            info.printed_factor,
            info.used_factor,
            padding,
        )
    return value, info


def expei_enclosure(z: Disk | complex, threshold: float = ASYMPTOTIC_THRESHOLD) -> Disk:
    """Disk containing exp(-w) Ei(w) for every w in `z`."""
    return expei_with_regime(z, threshold=threshold)[0]
