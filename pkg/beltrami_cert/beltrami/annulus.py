"""
The Beltrami differential of the crescent interpolation on varrho <= r <= R.

With U = tau^{-1}(f^{-q}(l(r))) and V = tau^{-1}(l(r)), the interpolation is
g = V + w(phi) (U - V), and

    mu(r e^{i phi}) = e^{2 i phi} (phi kappa + zeta + xi) / (phi kappa + zeta - xi),

where zeta = zeta_- for phi <= 0 and zeta_+ for phi > 0. Its Fourier
coefficients are integrals of e^{i k t} / t along the horizontal segment
from alpha_+ to alpha_- = alpha_+ + 2 pi, which gives a logarithm for k = 0 and
ExpEi differences otherwise.
"""

from dataclasses import dataclass
import math

from beltrami_cert.analytic.dynamics import inverse_branch_derivative
from beltrami_cert.crescent.geometry import CrescentConfig
from beltrami_cert.rigor import disk as cd
from beltrami_cert.rigor import interval as ia
from beltrami_cert.rigor.disk import ONE, Disk
from beltrami_cert.rigor.interval import Interval
from beltrami_cert.special.expei import expei_enclosure, expei_with_regime
from beltrami_cert.utils import DomainError

NONE, CROSSES, UNDECIDED = "none", "crosses", "undecided"


@dataclass(frozen=True)
class AnnulusData:
    r: Interval
    kappa: Disk
    xi: Disk
    zeta_minus: Disk
    zeta_plus: Disk
    alpha_minus: Disk
    alpha_plus: Disk

    @classmethod
    def from_derivatives(cls, r: Interval, zeta_minus: Disk, zeta_plus: Disk, xi: Disk) -> "AnnulusData":
        """
        Raises:
            DomainError: if kappa = (zeta_- - zeta_+)/2pi is not certified nonzero.
        """
        kappa = (zeta_minus - zeta_plus) / ia.two_pi()
        if kappa.contains_zero():
            raise DomainError(f"Degenerate parametrization at r = {r}: kappa = {kappa} contains 0.")
        return cls(r, kappa, xi, zeta_minus, zeta_plus, (zeta_minus - xi) / kappa, (zeta_plus - xi) / kappa)

    @property
    def factor(self) -> Disk:
        """xi / (pi kappa)."""
        return self.xi / (self.kappa * ia.pi())

    @classmethod
    def hull(cls, items: list["AnnulusData"]) -> "AnnulusData":
        fields = ("kappa", "xi", "zeta_minus", "zeta_plus", "alpha_minus", "alpha_plus")
        r = Interval.hull(*[item.r for item in items])
        return cls(r, *[Disk.hull(*[getattr(item, name) for item in items]) for name in fields])

    def to_dict(self) -> dict:
        return {
            "r": self.r.to_list(),
            "kappa": self.kappa.to_dict(),
            "xi": self.xi.to_dict(),
            "zeta_minus": self.zeta_minus.to_dict(),
            "zeta_plus": self.zeta_plus.to_dict(),
            "alpha_minus": self.alpha_minus.to_dict(),
            "alpha_plus": self.alpha_plus.to_dict(),
        }


def _annulus_piece(cfg: CrescentConfig, piece: int, r: Interval) -> AnnulusData:
    curve, tau = cfg.curve, cfg.tau
    ell = curve.point_on(piece, r)
    r_deriv = curve.r_derivative_on(piece, r)
    chain = cfg.preimage_chain(ell, r)
    preimage = chain[0]
    zeta_minus = r_deriv * tau.inverse_deriv(preimage) * inverse_branch_derivative(cfg.f, chain)
    zeta_plus = r_deriv * tau.inverse_deriv(ell)
    xi = (tau.inverse(preimage) - tau.inverse(ell)).mul_i() / ia.two_pi()
    return AnnulusData.from_derivatives(r, zeta_minus, zeta_plus, xi)


def annulus_pieces(cfg: CrescentConfig, r: Interval | float) -> list[AnnulusData]:
    """Annulus data on each side of the parabola seam met by `r`."""
    r = Interval.of(r)
    if r.lo < cfg.inner_cutoff or r.hi > cfg.outer_cutoff:
        raise DomainError(f"Radius {r} leaves [{cfg.inner_cutoff}, {cfg.outer_cutoff}].")
    return [_annulus_piece(cfg, piece, sub) for piece, sub in cfg.curve.pieces(r)]


def annulus_data(cfg: CrescentConfig, r: Interval | float) -> AnnulusData:
    return AnnulusData.hull(annulus_pieces(cfg, r))


# ---- the integration segment ----


def segment_crossing(alpha_plus: Disk) -> str:
    """Whether the segment alpha_+ + [0, 2 pi] meets the imaginary axis."""
    re = alpha_plus.real_part()
    shifted = re + ia.two_pi()
    if re.lo > 0.0 or shifted.hi < 0.0:
        return NONE
    if re.hi < 0.0 and shifted.lo > 0.0:
        return CROSSES
    return UNDECIDED


def log_cut(alpha_plus: Disk) -> float:
    """
    A cut angle whose ray misses the integration segment.

    Raises:
        DomainError: if the segment may pass through 0.
    """
    im = alpha_plus.imag_part()
    if im.lo > 0.0:
        return -math.pi / 2.0
    if im.hi < 0.0:
        return math.pi / 2.0
    if segment_crossing(alpha_plus) == NONE:
        return math.pi if alpha_plus.real_part().lo > 0.0 else 0.0
    raise DomainError(f"Dilatation denominator may vanish: alpha_+ = {alpha_plus}.")


def jump_sign(alpha_plus: Disk, k: int) -> int:
    """
    Multiple of 2 pi i e^{-i k alpha_-} picked up by ExpEi(i k t) when the path
    crosses the positive real axis.

    Raises:
        DomainError: if the crossing cannot be decided.
    """
    crossing = segment_crossing(alpha_plus)
    if crossing == NONE:
        return 0
    im = alpha_plus.imag_part() * k
    if im.lo > 0.0:
        return 0
    if crossing == CROSSES and im.hi < 0.0:
        return 1 if k > 0 else -1
    raise DomainError(f"Cannot decide the ExpEi cut crossing for k = {k}, alpha_+ = {alpha_plus}.")


# ---- coefficients ----


def mode_coefficient(data: AnnulusData, k: int) -> Disk:
    """The Fourier coefficient mu_{2-k} over the radii of `data`."""
    if k == 0:
        cut = log_cut(data.alpha_plus)
        return ONE + data.factor * (cd.ln(data.alpha_minus, cut) - cd.ln(data.alpha_plus, cut))
    z_minus = data.alpha_minus * complex(0.0, k)
    z_plus = data.alpha_plus * complex(0.0, k)
    value = expei_enclosure(z_minus) - expei_enclosure(z_plus)
    sign = jump_sign(data.alpha_plus, k)
    if sign:
        value = value + cd.exp(-z_minus).mul_i() * (ia.two_pi() * sign)
    return data.factor * value


def expei_diagnostic(data: AnnulusData, ks: list[int]) -> dict:
    """
    Largest printed and applied asymptotic remainder factors over the ExpEi
    arguments i k alpha_+- of the given modes.
    """
    printed, used, asymptotic = 1.0, 1.0, 0
    for k in ks:
        for alpha in (data.alpha_minus, data.alpha_plus):
            _, info = expei_with_regime(alpha.center * complex(0.0, k))
            if info.regime == "asymptotic":
                asymptotic += 1
                printed = max(printed, info.printed_factor)
                used = max(used, info.used_factor)
    return {"arguments": 2 * len(ks), "asymptotic": asymptotic, "max_printed_factor": printed, "max_used_factor": used}


def mu_fourier(cfg: CrescentConfig, r: Interval | float, k: int) -> Disk:
    return Disk.hull(*[mode_coefficient(data, k) for data in annulus_pieces(cfg, r)])


def dilatation_ratio(data: AnnulusData, phi: Interval) -> Disk:
    """
    (phi kappa + zeta + xi) / (phi kappa + zeta - xi) for phi in (-pi, pi];
    an interval straddling 0 takes both sides.
    """
    values = []
    if phi.lo <= 0.0:
        values.append((Interval(phi.lo, min(phi.hi, 0.0)), data.zeta_minus))
    if phi.hi > 0.0:
        values.append((Interval(max(phi.lo, 0.0), phi.hi), data.zeta_plus))
    ratios = []
    for angle, zeta in values:
        base = data.kappa * angle + zeta
        denominator = base - data.xi
        if denominator.contains_zero():
            raise DomainError(f"Dilatation denominator contains 0 at phi = {angle}.")
        ratios.append((base + data.xi) / denominator)
    return Disk.hull(*ratios)


def dilatation(data: AnnulusData, phi: Interval | float) -> Disk:
    phi = Interval.of(phi)
    rotation = cd.exp(Disk.from_box(Interval(0.0, 0.0), phi * 2.0))
    return dilatation_ratio(data, phi) * rotation
