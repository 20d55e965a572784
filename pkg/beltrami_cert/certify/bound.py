"""
The radius r of the disk covered by g^{nu+eta}(D_R) and the pointwise bound on
|g^mu(z) - g_*(z)|.
"""

import cmath
import math

from beltrami_cert.certify.report import BoundReport
from beltrami_cert.rigor import interval as ia
from beltrami_cert.rigor import rounding as rd
from beltrami_cert.rigor.disk import Disk
from beltrami_cert.rigor.interval import Interval
from beltrami_cert.transforms.lpstd import LpStd
from beltrami_cert.utils import DomainError, VerificationError, get_logger

DEFAULT_N_COVER = 1024

log = get_logger(__name__)


def holder_term(A: Interval, eps_prime: Interval, modulus: Interval, p: float) -> Interval:
    """A eps' |z|^{1 - 2/p}."""
    exponent = 1 - Interval.point(2) / Interval.of(p)
    return A * eps_prime * ia.power(Interval(max(modulus.lo, 0.0), modulus.hi), exponent)


def circle_cover(R: float, n_cover: int) -> list[Disk]:
    """`n_cover` disks centred on |z| = R whose union contains the circle."""
    if n_cover < 3:
        raise DomainError(f"A circle cover needs at least 3 disks, got {n_cover}.")
    radius = rd.mul_up(rd.mul_up(2.0 * R, math.sin(math.pi / (2 * n_cover))), 1.0 + 1e-12)
    return [Disk(R * cmath.exp(2j * math.pi * j / n_cover), radius) for j in range(n_cover)]


def _check_reach(g_star: LpStd, modulus: Interval):
    if modulus.hi >= g_star.grid.outer:
        raise DomainError(f"|z| up to {modulus.hi} leaves the g_* grid, which ends at {g_star.grid.outer}.")


def inner_radius(g_star: LpStd, R: float, n_cover: int = DEFAULT_N_COVER, padding: Interval | None = None) -> Interval:
    """
    Enclosure of inf |g(z)| over |z| = R, with g within `padding` of
    g_* = id + g_star on that circle.

    Raises:
        VerificationError: if the lower bound is not positive.
    """
    padding = padding or Interval.point(0.0)
    lower, upper = math.inf, math.inf
    for z in circle_cover(R, n_cover):
        _check_reach(g_star, z.abs())
        perturbation = g_star.eval_series(z)
        # on the arc |z| = R exactly, so R - |P| bounds |g_*| too
        arc = (Interval.point(R) - perturbation.mag).lo
        lower = min(lower, max((z + perturbation).mig, arc))
        center = Disk(z.center)
        upper = min(upper, (center + g_star.eval_series(center)).mag)
    r = Interval(rd.sub_down(lower, padding.hi), rd.add_up(upper, padding.hi))
    if r.lo <= 0.0:
        raise VerificationError(f"Inner radius is not certified positive: {r}.")
    log.info(f"Inner radius r in {r} from {n_cover} disks on |z| = {R}.")
    return r


def _denominator(R: float, C: Interval, u: Interval, p: float) -> Interval:
    two_over_p = Interval.point(2) / Interval.of(p)
    return ia.power(Interval.of(R), two_over_p * 2) - C * ia.power(u, two_over_p)


def positivity_radius(
    g_star: LpStd, A: Interval, eps_prime: Interval, C: Interval, R: float, p: float, steps: int = 60
) -> float:
    """
    Radius of a disk |z| <= rho on which the denominator of the bound is
    certified positive, found by bisection below the edge of the g_* grid.
    """
    sup = g_star.sup_modulus()
    edges = g_star.grid.edges

    def positive(rho: float) -> bool:
        reach = [float(sup[m]) for m in range(g_star.grid.n_cells) if edges[m] < rho]
        u = Interval.point(rho) + max(reach, default=0.0) + holder_term(A, eps_prime, Interval.point(rho), p)
        return _denominator(R, C, Interval(0.0, u.hi), p).lo > 0.0

    lo, hi = 0.0, math.nextafter(g_star.grid.outer, 0.0)
    if positive(hi):
        return hi
    for _ in range(steps):
        mid = 0.5 * (lo + hi)
        lo, hi = (mid, hi) if positive(mid) else (lo, mid)
    return lo


def final_bound(z: Disk | complex, report: BoundReport) -> Interval:
    """
    Upper bound on |g^mu(z) - g_*(z)|: the compact part A eps' |z|^{1-2/p} plus
    the part coming from the differential beyond R.

    Raises:
        DomainError: if the report is not certified, z leaves the g_* grid or
            the denominator is not certified positive.
    """
    if not report.certified:
        raise DomainError(f"Report is not certified (status {report.status}).")
    z = Disk.of(z)
    modulus = z.abs()
    g_star = report.g_star
    _check_reach(g_star, modulus)
    p = report.p
    first = holder_term(report.interval("A"), report.interval("eps_prime"), modulus, p)
    g = (z + g_star.eval_series(z)).abs()
    u = Interval(0.0, (g + first).hi)
    C = report.interval("C")
    denominator = _denominator(report.R, C, u, p)
    if denominator.lo <= 0.0:
        raise DomainError(f"Denominator of the bound is not positive at z = {z}: {denominator}.")
    total = first + C * ia.power(u, 1 + Interval.point(2) / Interval.of(p)) / denominator
    return Interval(0.0, max(total.hi, 0.0))
