"""
The fundamental crescent of f^{q_n}.

The boundary arc l runs from 0 through w1 = f^{q_{n+2}+q_n}(1) to the
periodic point a = a_{q_n}, along two parabolas with a common tangent at w1.
The crescent is bounded by l and its preimage under the branch of f^{-q_n}
fixing 0. The coordinate tau^{-1} sends w0 = f^{q_{n+2}}(1) to 0 and w1 to 1,
so the gluing f^{q_n} between the two boundary arcs becomes the translation by 1.
"""

from dataclasses import dataclass
from functools import cached_property
import math

from beltrami_cert.analytic.dynamics import (
    GoldenQuadratic,
    PeriodicPoint,
    inverse_branch,
    inverse_branch_chain,
    periodic_point,
)
from beltrami_cert.analytic.fnstd import FnStd, orbit
from beltrami_cert.crescent.seeds import BRANCH_SAMPLES, BranchTable, branch_table, choose_cut_angle, select_periodic_seed
from beltrami_cert.rigor import disk as cd
from beltrami_cert.rigor import interval as ia
from beltrami_cert.rigor.disk import ONE, Disk
from beltrami_cert.rigor.interval import Interval
from beltrami_cert.utils import DomainError, get_logger

DEFAULT_N = 3
DEFAULT_SLOPE = -1.7
DEFAULT_INNER_CUTOFF = 3.1e-3
DEFAULT_OUTER_CUTOFF = 9.8e3

FIRST, SECOND = 1, 2

log = get_logger(__name__)


@dataclass(frozen=True)
class Parabolas:
    """
    y = A x^2 + B x through 0 and w1, and x = C y^2 + D y + E through w1
    and a, both with slope `slope` at w1.
    """

    A: Interval
    B: Interval
    C: Interval
    D: Interval
    E: Interval

    def to_dict(self) -> dict:
        return {name: getattr(self, name).to_list() for name in "ABCDE"}


def parabola_constants(w1: Disk, a: Disk, slope: float) -> Parabolas:
    x1, y1 = w1.box()
    xa, ya = a.box()
    s = Interval.point(slope)
    A = (s * x1 - y1) / x1.sqr()
    B = s - A * x1 * 2.0
    rise = ya - y1
    C = (xa - x1 - rise / s) / rise.sqr()
    D = 1.0 / s - C * y1 * 2.0
    E = x1 - C * y1.sqr() - D * y1
    return Parabolas(A, B, C, D, E)


@dataclass(frozen=True)
class BoundaryCurve:
    """
    The arc lambda(r), r >= 0, with the monotone reparametrization
    T(r) = L (1 - 1/(sqrt(r) + 1)) of the arclength-like coordinate and
    L = |a - w1| + |w1|. The first parabola is used for T(r) <= |w1|.
    """

    w1: Disk
    a: Disk
    parabolas: Parabolas

    @cached_property
    def w1_modulus(self) -> Interval:
        return self.w1.abs()

    @cached_property
    def gap(self) -> Interval:
        return (self.a - self.w1).abs()

    @cached_property
    def length(self) -> Interval:
        return self.gap + self.w1_modulus

    @cached_property
    def direction(self) -> Interval:
        return self.w1.real_part() / self.w1_modulus

    @cached_property
    def rise(self) -> Interval:
        return (self.a.imag_part() - self.w1.imag_part()) / self.gap

    @cached_property
    def seam(self) -> Interval:
        """The parameter r~ with T(r~) = |w1|."""
        u = self.w1_modulus / self.length
        return (u / (1.0 - u)).sqr()

    def T(self, r: Interval) -> Interval:
        return self.length * (1.0 - 1.0 / (ia.sqrt(r) + 1.0))

    def r_T_deriv(self, r: Interval) -> Interval:
        s = ia.sqrt(r)
        return self.length * s / ((s + 1.0).sqr() * 2.0)

    def pieces(self, r: Interval) -> list[tuple[int, Interval]]:
        """Split `r` at the seam; pieces inside the seam enclosure get both formulas."""
        seam = self.seam
        pieces = []
        if r.lo <= seam.hi:
            pieces.append((FIRST, Interval(r.lo, min(r.hi, seam.hi))))
        if r.hi >= seam.lo:
            pieces.append((SECOND, Interval(max(r.lo, seam.lo), r.hi)))
        return pieces

    def _point_at(self, piece: int, t: Interval) -> Disk:
        p = self.parabolas
        if piece == FIRST:
            x = self.direction * t
            return Disk.from_box(x, x * (p.A * x + p.B))
        y = self.w1.imag_part() + self.rise * (t - self.w1_modulus)
        return Disk.from_box(y * (p.C * y + p.D) + p.E, y)

    def point_on(self, piece: int, r: Interval) -> Disk:
        return self._point_at(piece, self.T(r))

    def r_derivative_on(self, piece: int, r: Interval) -> Disk:
        """r lambda'(r) on one parabola."""
        p = self.parabolas
        t, dt = self.T(r), self.r_T_deriv(r)
        if piece == FIRST:
            x = self.direction * t
            dx = self.direction * dt
            return Disk.from_box(dx, (p.A * x * 2.0 + p.B) * dx)
        y = self.w1.imag_part() + self.rise * (t - self.w1_modulus)
        dy = self.rise * dt
        return Disk.from_box((p.C * y * 2.0 + p.D) * dy, dy)

    def lambda_n(self, r: Interval | float) -> Disk:
        r = Interval.of(r)
        if r.lo < 0.0:
            raise DomainError(f"Curve parameter must be nonnegative, got {r}.")
        return Disk.hull(*[self.point_on(piece, sub) for piece, sub in self.pieces(r)])

    def r_lambda_deriv(self, r: Interval | float) -> Disk:
        r = Interval.of(r)
        if r.lo < 0.0:
            raise DomainError(f"Curve parameter must be nonnegative, got {r}.")
        return Disk.hull(*[self.r_derivative_on(piece, sub) for piece, sub in self.pieces(r)])

    def limit(self) -> Disk:
        """lambda(r) as r -> infinity."""
        return self._point_at(SECOND, self.length)

    def lambda_point(self, r: float) -> complex:
        return self.lambda_n(Interval.point(r)).center


@dataclass(frozen=True)
class TauCoordinate:
    """
    z = tau(x) = a / (1 - exp(i s x + b)), inverted with the logarithm cut
    along the ray of direction `cut`.
    """

    point: Disk
    a: Disk
    b: Disk
    cut: float

    @classmethod
    def normalized(cls, point: Disk, w0: Disk, w1: Disk, cut: float) -> "TauCoordinate":
        """Solve for a and b from tau^{-1}(w0) = 0 and tau^{-1}(w1) = 1."""
        b = cd.ln(1.0 - point / w0, cut)
        scale = cd.ln(1.0 - point / w1, cut) - b
        if scale.contains_zero():
            raise DomainError(f"Degenerate crescent coordinate: i a = {scale}.")
        return cls(point, -scale.mul_i(), b, cut)

    @property
    def scale(self) -> Disk:
        """i a."""
        return self.a.mul_i()

    def inverse(self, z: Disk) -> Disk:
        z = Disk.of(z)
        if z.contains_zero():
            raise DomainError(f"tau^-1 is undefined at 0: {z}.")
        return (cd.ln(1.0 - self.point / z, self.cut) - self.b) / self.scale

    def inverse_deriv(self, z: Disk) -> Disk:
        z = Disk.of(z)
        return self.point / (z * (z - self.point) * self.scale)

    def forward(self, x: Disk) -> Disk:
        return self.point / (1.0 - cd.exp(self.scale * x + self.b))

    def to_dict(self) -> dict:
        return {"a": self.a.to_dict(), "b": self.b.to_dict(), "cut": self.cut}


def seam_weight(phi: Interval) -> Interval:
    """eta(-phi) + phi/(2 pi) with eta(0) = 1."""
    if phi.lo <= -math.pi or phi.hi > math.pi:
        raise DomainError(f"Angle must lie in (-pi, pi], got {phi}.")
    two_pi = ia.two_pi()
    weights = []
    if phi.lo <= 0.0:
        weights.append(1.0 + Interval(phi.lo, min(phi.hi, 0.0)) / two_pi)
    if phi.hi > 0.0:
        weights.append(Interval(max(phi.lo, 0.0), phi.hi) / two_pi)
    return Interval.hull(*weights)


@dataclass(frozen=True)
class CrescentConfig:
    golden: GoldenQuadratic
    n: int
    slope: float
    inner_cutoff: float
    outer_cutoff: float
    w0: Disk
    periodic: PeriodicPoint
    curve: BoundaryCurve
    tau: TauCoordinate
    branch: BranchTable

    @classmethod
    def build(
        cls,
        golden: GoldenQuadratic | None = None,
        n: int = DEFAULT_N,
        slope: float = DEFAULT_SLOPE,
        inner_cutoff: float = DEFAULT_INNER_CUTOFF,
        outer_cutoff: float = DEFAULT_OUTER_CUTOFF,
        branch_samples: int = BRANCH_SAMPLES,
    ) -> "CrescentConfig":
        if not 0.0 < inner_cutoff < outer_cutoff:
            raise DomainError(f"Cutoffs must satisfy 0 < inner < outer, got {inner_cutoff}, {outer_cutoff}.")
        golden = golden or GoldenQuadratic()
        f = golden.fn
        q, q_next = golden.q(n), golden.q(n + 2)
        w0 = orbit(f, ONE, q_next)
        w1 = orbit(f, ONE, q_next + q)
        seed = select_periodic_seed(f, q, w1.center)
        periodic = periodic_point(f, n, Disk(seed))
        curve = BoundaryCurve(w1, periodic.point, parabola_constants(w1, periodic.point, slope))
        branch = branch_table(
            f, q, golden.lam.center, curve.lambda_point, inner_cutoff / 10.0, outer_cutoff * 10.0, branch_samples
        )
        values = [1.0 - periodic.point.center / z for z in list(branch.curve) + list(branch.preimages)]
        cut = choose_cut_angle(values)
        tau = TauCoordinate.normalized(periodic.point, w0, w1, cut)
        log.info(
            f"Crescent of f^{q}: a = {periodic.point.center:.12f}, w1 = {w1.center:.12f}, "
            f"seam r~ = {curve.seam.mid:.6f}, cut angle {cut:.4f}."
        )
        return cls(golden, n, slope, inner_cutoff, outer_cutoff, w0, periodic, curve, tau, branch)

    @property
    def f(self) -> FnStd:
        return self.golden.fn

    @property
    def q(self) -> int:
        return self.golden.q(self.n)

    def lambda_n(self, r: Interval | float) -> Disk:
        return self.curve.lambda_n(r)

    def tau_inv(self, z: Disk) -> Disk:
        return self.tau.inverse(z)

    def preimage_chain(self, w: Disk, r: Interval) -> list[Disk]:
        """Verified chain of f^{-q} at `w`, a point of the curve near parameter `r`."""
        return inverse_branch_chain(self.f, self.n, w, self.branch.seed(r.mid))

    def preimage(self, w: Disk, r: Interval) -> Disk:
        return inverse_branch(self.f, self.n, w, self.branch.seed(r.mid))

    def g_n_eval(self, r: Interval | float, phi: Interval | float) -> Disk:
        """
        The interpolation of tau^{-1} between the two boundary arcs,
        weighted by the angle.
        """
        r, phi = Interval.of(r), Interval.of(phi)
        if r.lo <= 0.0:
            raise DomainError(f"Radius must be positive, got {r}.")
        weight = seam_weight(phi)
        values = []
        for piece, sub in self.curve.pieces(r):
            ell = self.curve.point_on(piece, sub)
            lower = self.tau.inverse(self.preimage(ell, sub))
            upper = self.tau.inverse(ell)
            values.append(upper + (lower - upper) * weight)
        return Disk.hull(*values)

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "slope": self.slope,
            "inner_cutoff": self.inner_cutoff,
            "outer_cutoff": self.outer_cutoff,
            "periodic_point": self.periodic.to_dict(),
            "w0": self.w0.to_dict(),
            "w1": self.curve.w1.to_dict(),
            "seam": self.curve.seam.to_list(),
            "parabolas": self.curve.parabolas.to_dict(),
            "tau": self.tau.to_dict(),
        }
