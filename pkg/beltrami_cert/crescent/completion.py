"""
Completion of the crescent near its two ends.

For r < varrho the boundary arc is replaced by the image phi(d t) of a
straight segment under the Siegel linearizer, for r > R by the image of a
logarithmic spiral under the Koenigs linearizer at the periodic point.
Both linearizers only enter through Koebe distortion constants, which bound
the relative deviations gamma, beta of the curves from their linear models.
"""

from dataclasses import dataclass
import cmath
import math

import numpy as np

from beltrami_cert.analytic.linearizers import (
    SIEGEL_ORDER,
    KoenigsData,
    SiegelData,
    koebe_constant,
    koenigs_coordinate,
    koenigs_data,
    koenigs_radius_for_univalence,
    principal_multiplier_log,
    siegel_data,
)
from beltrami_cert.crescent.geometry import CrescentConfig
from beltrami_cert.rigor import disk as cd
from beltrami_cert.rigor import interval as ia
from beltrami_cert.rigor import rounding as rd
from beltrami_cert.rigor.disk import ONE, Disk
from beltrami_cert.rigor.interval import Interval
from beltrami_cert.utils import DomainError, get_logger

T_PIECES = 64
SPIRAL_PIECES = 512
WEIGHT_PIECES = 16
SPIRAL_TAIL = 1e-12
RHO_SCAN = 4000

log = get_logger(__name__)

UNIT = Interval(0.0, 1.0)


def small_r_dilatation(nu: Interval, omega: Interval, alpha: Disk, sigma_diff: Disk) -> Disk:
    """
    |mu| near 0:
    (nu - omega - alpha - i (sigma - sigma~)/2pi) / (nu + omega - alpha + i (sigma - sigma~)/2pi).
    """
    jump = sigma_diff.mul_i() / ia.two_pi()
    numerator = -alpha - jump + (nu - omega)
    denominator = -alpha + jump + (nu + omega)
    if denominator.contains_zero():
        raise DomainError(f"Dilatation denominator near 0 contains 0: {denominator}.")
    return numerator / denominator


def large_r_dilatation(
    nu: Disk, log_term: Disk, r_alpha_tilde: Disk, r_alpha: Disk, weight: Interval, sigma: Disk
) -> Disk:
    """
    |mu| near the periodic point, with `weight` = eta(-phi) + phi/2pi and
    `log_term` = i ln xi.
    """
    two_pi = ia.two_pi()
    common = r_alpha_tilde * two_pi + (r_alpha - r_alpha_tilde) * (weight * two_pi)
    numerator = nu - log_term + common + sigma.mul_i()
    denominator = nu + log_term + common - sigma.mul_i()
    if denominator.contains_zero():
        raise DomainError(f"Dilatation denominator near infinity contains 0: {denominator}.")
    return numerator / denominator


# ---- near 0 ----


@dataclass(frozen=True)
class SiegelCompletion:
    """
    Segment completion for r < varrho: the curve phi(d t), t = (r/varrho)^nu,
    and its preimage phi(lambda^{-q} d t).
    """

    siegel: SiegelData
    rho: float
    c: Interval
    d: Disk
    point: Disk
    lam_power: Disk
    nu: Interval
    omega: Interval

    @property
    def cut(self) -> float:
        """Logarithm cut pointing away from -a."""
        return cmath.phase(self.point.center)

    def to_dict(self) -> dict:
        return {
            **self.siegel.to_dict(),
            "rho": self.rho,
            "c": self.c.to_list(),
            "d": self.d.to_dict(),
            "nu": self.nu.to_list(),
            "omega": self.omega.to_list(),
        }


def _koebe_slack(s: float, rho: float) -> float:
    return rho - rho**2 / (s * (1.0 - rho / s) ** 3)


def smallest_feasible_rho(s: float, modulus: float) -> float:
    """Smallest rho < s on a scan with rho - c(rho) rho^2 above `modulus`."""
    for rho in np.linspace(modulus, s, RHO_SCAN)[1:-1]:
        if _koebe_slack(s, float(rho)) > modulus * (1.0 + 1e-6):
            return float(rho)
    raise DomainError(f"No rho < s = {s} puts a point of modulus {modulus} inside phi(D_rho).")


def siegel_completion(
    cfg: CrescentConfig,
    s_lower_bound: float,
    rho: float | None = None,
    order: int = SIEGEL_ORDER,
    nu: Interval | None = None,
) -> SiegelCompletion:
    """
    Raises:
        DomainError: if rho >= s or lambda(varrho) is not certified to lie
            in phi(D_rho), so that d = phi^{-1}(lambda(varrho)) is undefined.
    """
    siegel = siegel_data(cfg.golden.lam, s_lower_bound, order)
    ell = cfg.lambda_n(Interval.point(cfg.inner_cutoff))
    modulus = ell.abs()
    if rho is None:
        rho = smallest_feasible_rho(siegel.s.lo, modulus.hi)
    c = koebe_constant(siegel.s, rho)
    slack = Interval.point(rho) - c * Interval.point(rho).sqr()
    if not slack.lo > modulus.hi:
        raise DomainError(f"lambda(varrho) with |.| <= {modulus.hi} is not inside phi(D_rho) for rho = {rho}.")
    t_star = modulus * 2.0 / (1.0 + ia.sqrt(1.0 - c * modulus * 4.0))
    d = ell.inflate((c * t_star.sqr()).hi)
    omega = cfg.golden.rotation_exponent(cfg.n)
    lam_power = cfg.golden.lam ** (-cfg.q)
    log.debug(f"Siegel completion: rho = {rho:.4f}, c = {c}, |d| <= {d.mag:.4e}.")
    return SiegelCompletion(siegel, rho, c, d, cfg.periodic.point, lam_power, omega if nu is None else nu, omega)


def siegel_dilatation_sup(sc: SiegelCompletion, t_pieces: int = T_PIECES, w_pieces: int = WEIGHT_PIECES) -> Interval:
    a, d, nu = sc.point, sc.d, sc.nu
    cut = sc.cut
    scale = sc.c * d.mag
    bound = 0.0
    for t in UNIT.split(t_pieces):
        deviation = (scale * t).hi
        g_tilde, b_tilde, g, b = (Disk(0j, deviation) for _ in range(4))
        one_gt, one_g = ONE + g_tilde, ONE + g

        segment = d * one_gt * t
        image = d * one_g * sc.lam_power * t
        # sigma - sigma~, with ln d cancelled
        sigma_diff = cd.ln(image - a, cut) - cd.ln(segment - a, cut) - cd.ln(one_g) + cd.ln(one_gt)
        r_sigma_tilde = (segment + a * (b_tilde - g_tilde) / one_gt) * nu / (segment - a)
        r_sigma = (image + a * (b - g) / one_g) * nu / (image - a)

        for w in UNIT.split(w_pieces):
            alpha = r_sigma * w + r_sigma_tilde * (1.0 - w)
            mu = small_r_dilatation(nu, sc.omega, alpha, sigma_diff)
            bound = max(bound, mu.mag)
    return Interval(0.0, bound)


# ---- near the periodic point ----


@dataclass(frozen=True)
class KoenigsCompletion:
    """
    Spiral completion for r > R: psi((d - a) E) + a with
    E = exp(nu ln(r/R) / 2pi), and its preimage under the branch fixing a.
    """

    koenigs: KoenigsData
    s: float
    rho: float
    c: Interval
    offset: Disk
    point: Disk
    nu: Disk
    log_term: Disk

    @property
    def multiplier(self) -> Disk:
        return self.koenigs.multiplier

    def to_dict(self) -> dict:
        return {
            **self.koenigs.to_dict(),
            "s": self.s,
            "rho": self.rho,
            "c": self.c.to_list(),
            "d_minus_a": self.offset.to_dict(),
            "nu": self.nu.to_dict(),
        }


def koenigs_completion(cfg: CrescentConfig, radius: float, rho: float | None = None) -> KoenigsCompletion:
    """
    Raises:
        DomainError: if d - a = psi^{-1}(lambda(R) - a) leaves D_rho or rho >= s.
        VerificationError: if the branch fixing a does not contract.
    """
    periodic = cfg.periodic
    kdata = koenigs_data(cfg.f, cfg.n, periodic.point, periodic.multiplier, radius)
    s = koenigs_radius_for_univalence(kdata)
    ell = cfg.lambda_n(Interval.point(cfg.outer_cutoff))
    offset = koenigs_coordinate(cfg.f, kdata, ell - periodic.point)
    if rho is None:
        rho = offset.mag * (1.0 + 1e-9)
    if not offset.mag <= rho:
        raise DomainError(f"|d - a| <= {offset.mag} exceeds rho = {rho}.")
    c = koebe_constant(Interval.point(s), rho)
    nu = principal_multiplier_log(periodic.multiplier)
    log.debug(f"Koenigs completion: s = {s:.4e}, rho = {rho:.4e}, c = {c}, |d - a| <= {offset.mag:.4e}.")
    return KoenigsCompletion(kdata, s, rho, c, offset, periodic.point, nu, nu)


def _spiral_factors(rate: Disk, pieces: int, tail: float) -> list[Disk]:
    """Enclosures of E = exp(rate s) covering s in [0, inf)."""
    decay = rate.real_part().hi
    if not decay < 0.0:
        raise DomainError(f"Spiral exponent must have negative real part, got {rate}.")
    s_max = math.log(tail) / decay
    factors = [cd.exp(rate * s) for s in Interval(0.0, s_max).split(pieces)]
    factors.append(Disk(0j, ia.exp(Interval.point(s_max) * decay).hi))
    return factors


def koenigs_dilatation_sup(
    kc: KoenigsCompletion, pieces: int = SPIRAL_PIECES, w_pieces: int = WEIGHT_PIECES, tail: float = SPIRAL_TAIL
) -> Interval:
    a, m, xi = kc.point, kc.offset, kc.multiplier
    rate = kc.nu / ia.two_pi()
    bound = 0.0
    for E in _spiral_factors(rate, pieces, tail):
        deviation = (kc.c * m.mag * E.mag).hi
        g_tilde, b_tilde = Disk(0j, deviation), Disk(0j, deviation)
        g, b = Disk(0j, rd.div_up(deviation, xi.mig)), Disk(0j, rd.div_up(deviation, xi.mig))
        one_gt, one_g = ONE + g_tilde, ONE + g

        spiral = m * E
        image = spiral / xi
        r_gt = (b_tilde - g_tilde) * rate
        r_g = (b - g) * rate
        r_alpha_tilde = r_gt / one_gt - spiral * (r_gt + one_gt * rate) / (spiral * one_gt + a)
        r_alpha = r_g / one_g - image * (r_g + one_g * rate) / (image * one_g + a)
        sigma = cd.ln(one_g / one_gt * (spiral * one_gt + a) / (image * one_g + a))

        for w in UNIT.split(w_pieces):
            mu = large_r_dilatation(kc.nu, kc.log_term, r_alpha_tilde, r_alpha, w, sigma)
            bound = max(bound, mu.mag)
    return Interval(0.0, bound)


# ---- both ends ----


@dataclass(frozen=True)
class CompletionData:
    siegel: SiegelCompletion
    koenigs: KoenigsCompletion

    def to_dict(self) -> dict:
        return {"siegel": self.siegel.to_dict(), "koenigs": self.koenigs.to_dict()}


def completion_data(
    cfg: CrescentConfig,
    s_lower_bound: float,
    koenigs_radius: float,
    rho_small: float | None = None,
    rho_large: float | None = None,
) -> CompletionData:
    return CompletionData(
        siegel_completion(cfg, s_lower_bound, rho_small),
        koenigs_completion(cfg, koenigs_radius, rho_large),
    )


def completion_small_r_sup(data: CompletionData) -> Interval:
    bound = siegel_dilatation_sup(data.siegel)
    log.info(f"Dilatation bound for r < varrho: {bound.hi:.6f}.")
    return bound


def completion_large_r_sup(data: CompletionData) -> Interval:
    bound = koenigs_dilatation_sup(data.koenigs)
    log.info(f"Dilatation bound for r > R: {bound.hi:.6f}.")
    return bound
