"""
Sup and tail bounds of the Beltrami differential on the annulus.

The asymptotic series of ExpEi with five terms gives, for every k >= 1,

    mu_{2-k} + mu_{2+k} = A/k^2 + B/k^4 + O(k^-6),
    mu_{2-k} - mu_{2+k} = i (C/k + D/k^3 + E/k^5) + O(k^-6),

with A = 2 P_1, B = 2 P_3, C = -2i P_0, D = -2i P_2, E = -2i P_4 and

    P_j = (xi/pi) j! (-i)^{j+1} [1/((zeta_- - xi) alpha_-^j) - 1/((zeta_+ - xi) alpha_+^j)].

The Fourier sums of cos(k phi)/k^{2,4} and sin(k phi)/k^{1,3,5} have closed
polynomial forms on [0, 2 pi], so the series bound is a polynomial in phi
evaluated on a subdivision. When the integration path crosses the ExpEi cut
one side of every pair carries an extra 2 pi i e^{-i k alpha_-} term, bounded
by J q^|k|.
"""

from dataclasses import dataclass, replace
import math

from beltrami_cert.beltrami.annulus import NONE, AnnulusData, dilatation_ratio, mode_coefficient, segment_crossing
from beltrami_cert.rigor import interval as ia
from beltrami_cert.rigor.disk import Disk
from beltrami_cert.rigor.interval import Interval
from beltrami_cert.special.zeta import zeta, zeta_remainder
from beltrami_cert.utils import DomainError, VerificationError, get_logger

PHI_PIECES = 64
REMAINDER_FACTORIAL = 120
FACTORIALS = (1, 1, 2, 6, 24)
# (-i)^{j+1}
PHASES = (-1j, -1 + 0j, 1j, 1 + 0j, -1j)
# sup over n and phi of |sum_{k > n} sin(k phi)/k|, from Si(pi) = 1.85193...
SINE_TAIL = 1.852

log = get_logger(__name__)


# ---- Fourier sums on [0, 2 pi] ----


def sin_sum_1(phi: Interval) -> Interval:
    return (ia.pi() - phi) / 2.0


def cos_sum_2(phi: Interval) -> Interval:
    pi = ia.pi()
    return pi.sqr() / 6.0 + phi * (phi / 4.0 - pi / 2.0)


def sin_sum_3(phi: Interval) -> Interval:
    pi = ia.pi()
    return phi * (pi.sqr() / 6.0 + phi * (phi / 12.0 - pi / 4.0))


def cos_sum_4(phi: Interval) -> Interval:
    pi = ia.pi()
    return pi**4 / 90.0 + phi.sqr() * (phi * (pi / 12.0 - phi / 48.0) - pi.sqr() / 12.0)


def sin_sum_5(phi: Interval) -> Interval:
    pi = ia.pi()
    return phi * (pi**4 / 90.0 + phi.sqr() * (phi * (pi / 48.0 - phi / 240.0) - pi.sqr() / 36.0))


# ---- asymptotic coefficients ----


@dataclass(frozen=True)
class PairCoefficients:
    A: Disk
    B: Disk
    C: Disk
    D: Disk
    E: Disk

    @classmethod
    def from_data(cls, data: AnnulusData) -> "PairCoefficients":
        w_minus = data.zeta_minus - data.xi
        w_plus = data.zeta_plus - data.xi
        scale = data.xi / ia.pi()
        P = []
        for j in range(5):
            diff = (w_minus * data.alpha_minus**j).reciprocal() - (w_plus * data.alpha_plus**j).reciprocal()
            P.append(scale * diff * (PHASES[j] * FACTORIALS[j]))
        return cls(P[1] * 2, P[3] * 2, P[0] * -2j, P[2] * -2j, P[4] * -2j)

    @classmethod
    def hull(cls, items: list["PairCoefficients"]) -> "PairCoefficients":
        return cls(*[Disk.hull(*[getattr(item, name) for item in items]) for name in "ABCDE"])

    def series(self, mu2: Disk, phi: Interval) -> Disk:
        """mu_2 plus the closed-form sums, phi in [0, 2 pi]."""
        return (
            mu2
            + self.A * cos_sum_2(phi)
            + self.B * cos_sum_4(phi)
            + self.C * sin_sum_1(phi)
            + self.D * sin_sum_3(phi)
            + self.E * sin_sum_5(phi)
        )

    def to_dict(self) -> dict:
        return {name: getattr(self, name).to_dict() for name in "ABCDE"}


def _sector_factor(alpha: Disk, sign: int) -> Interval:
    """|z| / dist(z, [0, inf)) for z = i sign k alpha and every k >= 1."""
    if (alpha.imag_part() * sign).lo >= 0.0:
        return Interval.point(1.0)
    re = alpha.real_part()
    if re.contains_zero():
        raise DomainError(f"ExpEi argument i k alpha may reach the cut: alpha = {alpha}.")
    return Interval.point(alpha.mag) / re.mig


def remainder_bound(data: AnnulusData, sign: int) -> float:
    """
    R with |mu_{2 - sign k} - (five-term expansion)| <= R / k^6 for k >= 1,
    from |R_4(z)| <= 5! |z|^{-5} |z| / dist(z, [0, inf)).
    """
    total = Interval.point(0.0)
    for alpha in (data.alpha_minus, data.alpha_plus):
        if alpha.mig == 0.0:
            raise DomainError(f"alpha contains 0: {alpha}.")
        total = total + _sector_factor(alpha, sign) * REMAINDER_FACTORIAL / Interval.point(alpha.mig) ** 6
    return (total * data.factor.mag).hi


def jump_bound(data: AnnulusData) -> tuple[float, float]:
    """(J, q) with |2 pi i (xi/pi kappa) e^{-i k alpha_-}| <= J q^|k|; (0, 0) without a crossing."""
    if segment_crossing(data.alpha_plus) == NONE:
        return 0.0, 0.0
    gap = max(data.alpha_minus.imag_part().mig, data.alpha_plus.imag_part().mig)
    if gap == 0.0:
        raise DomainError(f"Integration path may run along the ExpEi cut: alpha_+ = {data.alpha_plus}.")
    weight = (ia.two_pi() * data.factor.mag).hi
    return weight, ia.exp(Interval.point(-gap)).hi


def geometric_tail(weight: float, decay: float, start: int) -> Interval:
    """sum_{k >= start} weight decay^k."""
    if weight == 0.0:
        return Interval.point(0.0)
    q = Interval.point(decay)
    return q**start * weight / (1.0 - q)


# ---- per cell ----


@dataclass(frozen=True)
class CellBounds:
    """
    Bounds on one annulus cell: the coefficients of the symmetric pairs, the
    k^-6 remainders of the modes 2 - k and 2 + k, the cut jump J q^|k| and the
    sup of |mu|, the smaller of the series and direct bounds per angle.
    `window_radius` and `window_energy` hold the sum of radii and squared radii of
    the retained coefficients.
    """

    m: int
    r: Interval
    mu2: Disk
    pair: PairCoefficients
    rem_plus: float
    rem_minus: float
    jump: float
    decay: float
    series_sup: float
    direct_sup: float
    sup: float
    window_radius: float = 0.0
    window_energy: float = 0.0

    def with_window(self, radius: float, energy: float) -> "CellBounds":
        return replace(self, window_radius=radius, window_energy=energy)

    def to_dict(self) -> dict:
        return {
            "m": self.m,
            "r": self.r.to_list(),
            "mu2": self.mu2.to_dict(),
            **self.pair.to_dict(),
            "rem_plus": self.rem_plus,
            "rem_minus": self.rem_minus,
            "jump": self.jump,
            "decay": self.decay,
            "series_sup": self.series_sup,
            "direct_sup": self.direct_sup,
            "sup": self.sup,
            "window_radius": self.window_radius,
        }


def _direct(data: AnnulusData, phi: Interval) -> float:
    """|mu| from the closed expression, with phi in [0, 2 pi] moved to (-pi, pi]."""
    pi = ia.pi()
    parts = []
    if phi.lo <= pi.hi:
        parts.append(Interval(phi.lo, min(phi.hi, pi.hi)))
    if phi.hi >= pi.lo:
        parts.append(Interval(max(phi.lo, pi.lo), phi.hi) - ia.two_pi())
    try:
        return max(dilatation_ratio(data, part).mag for part in parts)
    except DomainError:
        return math.inf


def cell_bounds(pieces: list[AnnulusData], m: int, phi_pieces: int = PHI_PIECES) -> CellBounds:
    two_pi = ia.two_pi()
    zeta6 = zeta(6)
    mu2s, pairs, rems_plus, rems_minus, jumps = [], [], [], [], []
    series_sup = direct_sup = sup = 0.0
    for data in pieces:
        mu2 = mode_coefficient(data, 0)
        pair = PairCoefficients.from_data(data)
        rem_plus, rem_minus = remainder_bound(data, 1), remainder_bound(data, -1)
        jump = jump_bound(data)
        tail = (zeta6 * (Interval.point(rem_plus) + rem_minus) + geometric_tail(*jump, 1)).hi
        for phi in Interval(0.0, two_pi.hi).split(phi_pieces):
            series = pair.series(mu2, phi).mag + tail
            direct = _direct(data, phi)
            series_sup, direct_sup = max(series_sup, series), max(direct_sup, direct)
            sup = max(sup, min(series, direct))
        mu2s.append(mu2)
        pairs.append(pair)
        rems_plus.append(rem_plus)
        rems_minus.append(rem_minus)
        jumps.append(jump)
    return CellBounds(
        m,
        Interval.hull(*[data.r for data in pieces]),
        Disk.hull(*mu2s),
        PairCoefficients.hull(pairs),
        max(rems_plus),
        max(rems_minus),
        max(j for j, _ in jumps),
        max(q for _, q in jumps),
        series_sup,
        direct_sup,
        sup,
    )


def mu_sup_annulus(cells: list[CellBounds]) -> Interval:
    """
    Raises:
        VerificationError: if some cell bound reaches 1.
    """
    bad = [cell.m for cell in cells if not cell.sup < 1.0]
    if bad:
        raise VerificationError(f"Dilatation bound reaches 1 on cells {bad[:10]}.")
    bound = max(cell.sup for cell in cells)
    log.info(f"Dilatation bound on the annulus: {bound:.6f}.")
    return Interval(0.0, bound)


# ---- tail norms ----


@dataclass(frozen=True)
class EtaNorms:
    eta_norm_p: Interval
    annulus_norm_p: float
    inner_norm_p: float
    eta1_l2: float
    eta2_l2: float
    eta_sup: float

    def to_dict(self) -> dict:
        return {
            "eta_norm_p": self.eta_norm_p.to_list(),
            "annulus_norm_p": self.annulus_norm_p,
            "inner_norm_p": self.inner_norm_p,
            "eta1_l2": self.eta1_l2,
            "eta2_l2": self.eta2_l2,
            "eta_sup": self.eta_sup,
        }


def _upper(x: Interval) -> Interval:
    return Interval.point(max(x.hi, 0.0))


def _cross(X: Disk, Y: Disk) -> Interval:
    """2 Re(X conj(Y))."""
    return (X * Y.conj()).real_part() * 2.0


def _sqrt_up(x: Interval) -> float:
    x = _upper(x)
    return ia.sqrt(x).hi if x.hi > 0.0 else 0.0


def eta_norms(cells: list[CellBounds], M_t: int, p: float, inner_sup: Interval, inner_radius: float) -> EtaNorms:
    """
    ||eta||_p over D_R: on every annulus cell the L_2 norms of the expansion
    tail, of the k^-6 remainders, of the cut jumps and of the retained
    coefficients' radii are combined with the cell sup through
    ||eta||_p^p <= sum sup^{p-2} ||eta||_2^2; the inner disk adds
    sup|mu| (pi varrho^2)^{1/p}.
    """
    if p <= 2.0:
        raise DomainError(f"Exponent p must exceed 2, got {p}.")
    z = {n: zeta_remainder(M_t, n) for n in (2, 3, 4, 5, 6, 8, 10, 12)}
    pi = ia.pi()
    exponent = Interval.point(p) - 2.0
    total = Interval.point(0.0)
    eta1_sq = eta2_sq = Interval.point(0.0)
    eta_sup = 0.0
    for cell in cells:
        A, B, C, D, E = (getattr(cell.pair, name) for name in "ABCDE")
        a, b, c, d, e = (Interval.point(X.mag) for X in (A, B, C, D, E))
        rem = Interval.point(cell.rem_plus) + cell.rem_minus
        jump = geometric_tail(cell.jump, cell.decay, M_t + 1)
        sup = (
            a * z[2] + b * z[4] + c * SINE_TAIL + d * z[3] + e * z[5] + rem * z[6] + jump + cell.window_radius
        ).hi
        eta_sup = max(eta_sup, sup)

        area = Interval.point(cell.r.hi).sqr() - Interval.point(cell.r.lo).sqr()
        bracket = (
            c.sqr() * z[2]
            + (a.sqr() + _cross(C, D)) * z[4]
            + (d.sqr() + _cross(C, E) + _cross(A, B)) * z[6]
            + (b.sqr() + _cross(D, E)) * z[8]
            + e.sqr() * z[10]
        )
        first = pi / 2.0 * area * _upper(bracket)
        second = pi * z[12] * area * (Interval.point(cell.rem_plus).sqr() + Interval.point(cell.rem_minus).sqr())
        jumps = Interval.point(0.0)
        if cell.jump > 0.0:
            q2 = Interval.point(cell.decay).sqr()
            jumps = pi * area * Interval.point(cell.jump).sqr() * q2 ** (M_t + 1) / (1.0 - q2)
        window = pi * area * cell.window_energy
        eta1_sq, eta2_sq = eta1_sq + first, eta2_sq + second

        l2 = Interval.point(_sqrt_up(first)) + _sqrt_up(second) + _sqrt_up(jumps) + _sqrt_up(window)
        if sup > 0.0:
            total = total + ia.power(Interval.point(sup), exponent) * l2.sqr()

    annulus = ia.power(_upper(total), 1.0 / Interval.point(p)).hi if total.hi > 0.0 else 0.0
    disk_area = pi * Interval.point(inner_radius).sqr()
    inner = (inner_sup.hi * ia.power(disk_area, 1.0 / Interval.point(p))).hi
    norms = EtaNorms(
        Interval(0.0, (Interval.point(annulus) + inner).hi),
        annulus,
        inner,
        _sqrt_up(eta1_sq),
        _sqrt_up(eta2_sq),
        eta_sup,
    )
    log.info(
        f"Tail norms with {M_t} modes: ||eta||_p <= {norms.eta_norm_p.hi:.6e} "
        f"(annulus {annulus:.3e}, inner {inner:.3e}), ||eta_1||_2 <= {norms.eta1_l2:.3e}."
    )
    return norms
