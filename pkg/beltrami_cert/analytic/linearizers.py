"""
Linearizing coordinates used to complete the fundamental crescent.

Near 0 the Siegel linearizer conjugates f to the rotation z -> lambda z. Near
the repelling periodic point a the Koenigs coordinate conjugates f^q to
w -> xi w; it is reached through the branch of f^{-q} that fixes a.
"""

from dataclasses import dataclass
import math

from beltrami_cert.analytic.dynamics import inverse_branch_chain
from beltrami_cert.analytic.fnstd import FnStd
from beltrami_cert.rigor import disk as cd
from beltrami_cert.rigor.disk import ONE, ZERO, Disk
from beltrami_cert.rigor.interval import Interval
from beltrami_cert.utils import BranchError, DomainError, VerificationError, get_logger

SIEGEL_ORDER = 64
TAIL_TOLERANCE = 1e-10
MAX_KOENIGS_STEPS = 200

log = get_logger(__name__)


def siegel_coefficients(lam: Disk, order: int = SIEGEL_ORDER) -> list[Disk]:
    """
    Coefficients phi_1 = 1, phi_2, ..., phi_order of the conjugacy
    f(phi(z)) = phi(lambda z) for f(z) = lambda z - (lambda/2) z^2.
    """
    if order < 1:
        raise DomainError(f"Linearizer order must be positive, got {order}.")
    half = lam * -0.5
    coeffs = [ONE]
    power = lam
    for k in range(2, order + 1):
        power = power * lam
        total = ZERO
        for i in range(1, k):
            total = total + coeffs[i - 1] * coeffs[k - i - 1]
        divisor = power - lam
        if divisor.contains_zero():
            raise DomainError(f"Small divisor lambda^{k} - lambda is not separated from 0.")
        coeffs.append(half * total / divisor)
    return coeffs


def siegel_radius_estimate(coeffs: list[Disk]) -> float:
    """
    Root-test estimate of the radius of convergence from the last half of
    the coefficients. Not a certified bound.
    """
    tail = [(k, c.center) for k, c in enumerate(coeffs, start=1) if k > len(coeffs) // 2]
    roots = [abs(c) ** (1.0 / k) for k, c in tail if c != 0]
    if not roots:
        return math.inf
    return 1.0 / max(roots)


@dataclass(frozen=True)
class SiegelData:
    coeffs: tuple[Disk, ...]
    s: Interval
    estimate: float

    def to_dict(self) -> dict:
        return {
            "order": len(self.coeffs),
            "s": self.s.to_list(),
            "radius_estimate": self.estimate,
        }


def siegel_data(lam: Disk, s_lower_bound: float, order: int = SIEGEL_ORDER) -> SiegelData:
    coeffs = siegel_coefficients(lam, order)
    estimate = siegel_radius_estimate(coeffs)
    if s_lower_bound > estimate:
        log.warning(
            f"Configured linearization radius {s_lower_bound} exceeds the root-test estimate {estimate:.4f}."
        )
    return SiegelData(tuple(coeffs), Interval.point(s_lower_bound), estimate)


def koebe_constant(s: Interval, rho: float) -> Interval:
    """c = 1/(s (1 - rho/s)^3), the Koebe distortion constant on D_rho inside D_s."""
    if not rho < s.lo:
        raise DomainError(f"Koebe constant needs rho < s, got rho={rho}, s={s}.")
    return 1.0 / (s * (1.0 - rho / s) ** 3)


@dataclass(frozen=True)
class KoenigsData:
    """
    Data of the branch g of f^{-q} fixing `point` on B[point, radius]:
    sup |g - point| <= sup_image, c_bar = sup_image/radius and the quadratic
    constant K with |xi g(a+u) - a - u| <= K |u|^2.
    """

    n: int
    point: Disk
    multiplier: Disk
    radius: float
    sup_image: float
    c_bar: Interval
    K: Interval
    chain: tuple[Disk, ...]

    @property
    def ratio(self) -> Interval:
        """|xi| c_bar^2, the contraction of the tail."""
        return self.c_bar.sqr() * self.multiplier.mag

    def to_dict(self) -> dict:
        return {
            "point": self.point.to_dict(),
            "multiplier": self.multiplier.to_dict(),
            "radius": self.radius,
            "sup_image": self.sup_image,
            "c_bar": self.c_bar.to_list(),
            "K": self.K.to_list(),
        }


def koenigs_data(f: FnStd, n: int, point: Disk, multiplier: Disk, radius: float) -> KoenigsData:
    """
    Raises:
        VerificationError: if the branch does not contract strongly enough,
            i.e. c_bar^2 |xi| < 1 < c_bar |xi| fails.
    """
    a = Disk.of(point)
    ball = Disk(a.center, radius).inflate(a.radius)
    chain = inverse_branch_chain(f, n, ball, a)
    sup_image = (chain[0] - a).mag
    s = Interval.point(radius)
    c_bar = Interval.point(sup_image) / s
    xi_abs = multiplier.abs()
    if not (c_bar.sqr() * xi_abs).hi < 1.0:
        raise VerificationError(f"Koenigs contraction fails: c_bar^2 |xi| = {c_bar.sqr() * xi_abs}.")
    if not (c_bar * xi_abs).lo > 1.0:
        raise VerificationError(f"Koenigs bound fails: c_bar |xi| = {c_bar * xi_abs}.")
    K = (xi_abs * sup_image + s) / s.sqr()
    log.debug(f"Koenigs branch on B[{a.center}, {radius}]: c_bar={c_bar}, K={K}.")
    return KoenigsData(n, a, multiplier, radius, sup_image, c_bar, K, tuple(chain))


def _branch_image(f: FnStd, data: KoenigsData, w: Disk) -> Disk:
    chain = inverse_branch_chain(f, data.n, w, data.point)
    for small, big in zip(chain, data.chain):
        if not big.contains(small):
            raise BranchError(f"Preimage {small} leaves the verified branch disk {big}.")
    return chain[0]


def koenigs_coordinate(f: FnStd, data: KoenigsData, u: Disk, tolerance: float = TAIL_TOLERANCE) -> Disk:
    """
    Disk containing lim xi^k (g^k(a + u) - a) for every u in the given disk.

    The iteration stops once the geometric tail
    K |u|^2 (|xi| c_bar^2)^k / (1 - |xi| c_bar^2) is below `tolerance`.
    """
    u = Disk.of(u)
    if u.mag >= data.radius:
        raise DomainError(f"{u} leaves the Koenigs disk of radius {data.radius}.")
    ratio = data.ratio
    base = data.K * Interval.point(u.mag).sqr() / (1.0 - ratio)
    factor = Interval(1.0, 1.0)
    v = u
    scale = ONE
    for _ in range(MAX_KOENIGS_STEPS):
        tail = base * factor
        if tail.hi <= tolerance:
            return (scale * v).inflate(tail.hi)
        v = _branch_image(f, data, data.point + v) - data.point
        scale = scale * data.multiplier
        factor = factor * ratio
    raise VerificationError(f"Koenigs tail did not reach {tolerance} in {MAX_KOENIGS_STEPS} steps.")


def koenigs_radius_for_univalence(data: KoenigsData) -> float:
    """Radius of the disk around 0 covered by the Koenigs coordinate, from Koebe 1/4."""
    return (Interval.point(data.radius) / 4.0).lo


def principal_multiplier_log(multiplier: Disk) -> Disk:
    """i ln xi with arg xi in (0, 2 pi), so that the real part is negative."""
    return cd.ln(multiplier, cut_angle=2.0 * math.pi).mul_i()

