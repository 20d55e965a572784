"""
Closed complex disks B[c, r] with double center and radius.

Centers are computed in round-to-nearest and the exact rounding error of each
center operation (from error-free transformations) is added to the radius,
which is accumulated with upward rounding.
"""

from dataclasses import dataclass
from typing import Union
import math

from mpmath import libmp

from beltrami_cert.rigor import interval as ia
from beltrami_cert.rigor import rounding as rd
from beltrami_cert.rigor.interval import Interval
from beltrami_cert.utils import DomainError

Complexish = Union["Disk", Interval, complex, float, int]


def _abs_diff_up(a: float, b: float) -> float:
    return max(abs(rd.sub_up(a, b)), abs(rd.sub_down(a, b)))


def _abs_diff_down(a: float, b: float) -> float:
    lo, hi = rd.sub_down(a, b), rd.sub_up(a, b)
    if lo <= 0.0 <= hi:
        return 0.0
    return min(abs(lo), abs(hi))


def _sum_err(a: float, b: float) -> tuple[float, float]:
    s, e = rd.two_sum(a, b)
    return s, abs(e)


def _dot2(a: float, b: float, c: float, d: float) -> tuple[float, float]:
    """fl(a*b + c*d) and an upper bound on its error."""
    p, q = a * b, c * d
    s, e = _sum_err(p, q)
    err = rd.sum_up(rd.err_bound_prod(a, b, p), rd.err_bound_prod(c, d, q), e)
    return s, err


@dataclass(frozen=True, slots=True)
class Disk:
    """
    The closed disk of radius `radius` around `center`.
    """

    center: complex
    radius: float = 0.0

    def __post_init__(self):
        c = complex(self.center)
        r = float(self.radius)
        if not (math.isfinite(c.real) and math.isfinite(c.imag)):
            raise DomainError(f"Disk center is not finite: {c}.")
        if math.isnan(r) or math.isinf(r):
            raise DomainError(f"Disk radius is not finite: {r}.")
        if r < 0.0:
            raise DomainError(f"Disk radius is negative: {r}.")
        object.__setattr__(self, "center", c)
        object.__setattr__(self, "radius", r)

    @classmethod
    def of(cls, x: Complexish) -> "Disk":
        if isinstance(x, Disk):
            return x
        if isinstance(x, Interval):
            return cls.from_box(x, Interval(0.0, 0.0))
        if isinstance(x, int) and not isinstance(x, bool):
            return cls.from_box(Interval.point(x), Interval(0.0, 0.0))
        return cls(complex(x), 0.0)

    @classmethod
    def from_box(cls, re: Interval, im: Interval) -> "Disk":
        """Smallest representable disk around the box midpoint containing the box."""
        return cls(complex(re.mid, im.mid), rd.hypot_up(re.rad, im.rad))

    @classmethod
    def from_polar(cls, modulus: Interval, angle: Interval) -> "Disk":
        return cls.from_box(modulus * ia.cos(angle), modulus * ia.sin(angle))

    @classmethod
    def hull(cls, *disks: Complexish) -> "Disk":
        items = [cls.of(d) for d in disks]
        re = Interval.hull(*[d.real_part() for d in items])
        im = Interval.hull(*[d.imag_part() for d in items])
        return cls.from_box(re, im)

    def __repr__(self) -> str:
        return f"B[{self.center!r}, {self.radius!r}]"

    def to_dict(self) -> dict[str, float]:
        return {"re": self.center.real, "im": self.center.imag, "rad": self.radius}

    # ---- shape ----

    def real_part(self) -> Interval:
        c = self.center.real
        return Interval(rd.sub_down(c, self.radius), rd.add_up(c, self.radius))

    def imag_part(self) -> Interval:
        c = self.center.imag
        return Interval(rd.sub_down(c, self.radius), rd.add_up(c, self.radius))

    def box(self) -> tuple[Interval, Interval]:
        return self.real_part(), self.imag_part()

    @property
    def mag(self) -> float:
        """Upper bound on |z| over the disk."""
        return rd.add_up(rd.hypot_up(self.center.real, self.center.imag), self.radius)

    @property
    def mig(self) -> float:
        """Lower bound on |z| over the disk."""
        m = rd.sub_down(rd.hypot_down(self.center.real, self.center.imag), self.radius)
        return max(m, 0.0)

    def abs(self) -> Interval:
        return Interval(self.mig, self.mag)

    def __abs__(self) -> Interval:
        return self.abs()

    def arg(self) -> Interval:
        re, im = self.box()
        return ia.atan2(im, re)

    def is_point(self) -> bool:
        return self.radius == 0.0

    def contains_zero(self) -> bool:
        return self.mig == 0.0

    def distance_up(self, z: complex) -> float:
        z = complex(z)
        return rd.hypot_up(
            _abs_diff_up(z.real, self.center.real), _abs_diff_up(z.imag, self.center.imag)
        )

    def distance_down(self, z: complex) -> float:
        z = complex(z)
        return rd.hypot_down(
            _abs_diff_down(z.real, self.center.real),
            _abs_diff_down(z.imag, self.center.imag),
        )

    def contains(self, other: Complexish) -> bool:
        o = Disk.of(other)
        return rd.add_up(self.distance_up(o.center), o.radius) <= self.radius

    def __contains__(self, other: Complexish) -> bool:
        return self.contains(other)

    def interior_contains(self, other: Complexish) -> bool:
        o = Disk.of(other)
        return rd.add_up(self.distance_up(o.center), o.radius) < self.radius

    def overlaps(self, other: Complexish) -> bool:
        """False only when the disks are certainly disjoint."""
        return not self.is_disjoint(other)

    def is_disjoint(self, other: Complexish) -> bool:
        o = Disk.of(other)
        return self.distance_down(o.center) > rd.add_up(self.radius, o.radius)

    def separation(self, other: Complexish) -> float:
        """Lower bound on the gap between two disks (negative when they may meet)."""
        o = Disk.of(other)
        return rd.sub_down(self.distance_down(o.center), rd.add_up(self.radius, o.radius))

    def inflate(self, r: float) -> "Disk":
        return Disk(self.center, rd.add_up(self.radius, r))

    # ---- arithmetic ----

    def conj(self) -> "Disk":
        return Disk(self.center.conjugate(), self.radius)

    def mul_i(self) -> "Disk":
        return Disk(complex(-self.center.imag, self.center.real), self.radius)

    def __neg__(self) -> "Disk":
        return Disk(-self.center, self.radius)

    def __pos__(self) -> "Disk":
        return self

    def __add__(self, other: Complexish) -> "Disk":
        o = Disk.of(other)
        re, e1 = _sum_err(self.center.real, o.center.real)
        im, e2 = _sum_err(self.center.imag, o.center.imag)
        return Disk(complex(re, im), rd.sum_up(self.radius, o.radius, e1, e2))

    __radd__ = __add__

    def __sub__(self, other: Complexish) -> "Disk":
        return self + (-Disk.of(other))

    def __rsub__(self, other: Complexish) -> "Disk":
        return Disk.of(other) + (-self)

    def __mul__(self, other: Complexish) -> "Disk":
        o = Disk.of(other)
        a, b = self.center, o.center
        if self.radius == 0.0 and o.radius == 0.0 and (a == 0 or b == 0):
            return Disk(0j, 0.0)
        re, e1 = _dot2(a.real, b.real, -a.imag, b.imag)
        im, e2 = _dot2(a.real, b.imag, a.imag, b.real)
        abs_a = rd.hypot_up(a.real, a.imag)
        abs_b = rd.hypot_up(b.real, b.imag)
        radius = rd.sum_up(
            rd.mul_up(abs_a, o.radius),
            rd.mul_up(abs_b, self.radius),
            rd.mul_up(self.radius, o.radius),
            e1,
            e2,
        )
        return Disk(complex(re, im), radius)

    __rmul__ = __mul__

    def reciprocal(self) -> "Disk":
        """
        1/Z for a disk avoiding 0; the image is the disk with center
        conj(c)/(|c|^2 - r^2) and radius r/(|c|^2 - r^2).
        """
        c, r = self.center, self.radius
        re, im = Interval.point(c.real), Interval.point(c.imag)
        denom = re.sqr() + im.sqr() - Interval.point(r).sqr()
        if denom.lo <= 0.0:
            raise DomainError(f"Reciprocal of a disk containing 0: {self}.")
        center = Disk.from_box(re / denom, -im / denom)
        return center.inflate(rd.div_up(r, denom.lo))

    def __truediv__(self, other: Complexish) -> "Disk":
        return self * Disk.of(other).reciprocal()

    def __rtruediv__(self, other: Complexish) -> "Disk":
        return Disk.of(other) * self.reciprocal()

    def __pow__(self, n: int) -> "Disk":
        if n < 0:
            return (self**-n).reciprocal()
        result = Disk(1 + 0j, 0.0)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result


ZERO = Disk(0j, 0.0)
ONE = Disk(1 + 0j, 0.0)
I = Disk(1j, 0.0)


# ---- elementary functions ----


def _point_mpci(c: complex) -> tuple:
    re, im = libmp.from_float(c.real), libmp.from_float(c.imag)
    return (re, re), (im, im)


def _box_to_disk(v: tuple) -> Disk:
    re, im = v
    return Disk.from_box(ia.from_mpi(re), ia.from_mpi(im))


def exp(z: Complexish) -> Disk:
    z = Disk.of(z)
    value = _box_to_disk(libmp.mpci_exp(_point_mpci(z.center), ia._prec[0]))
    if z.radius == 0.0:
        return value
    # |exp'| <= exp(Re c + r) on the disk
    lipschitz = ia.exp(Interval(z.center.real, z.center.real) + z.radius).hi
    return value.inflate(rd.mul_up(lipschitz, z.radius))


def _distance_to_negative_axis(c: complex) -> float:
    if c.real >= 0.0:
        return rd.hypot_down(c.real, c.imag)
    return abs(c.imag)


def _principal_ln(z: Disk) -> Disk:
    if _distance_to_negative_axis(z.center) <= z.radius:
        raise DomainError(f"ln: disk meets the branch cut or 0: {z}.")
    value = _box_to_disk(libmp.mpci_log(_point_mpci(z.center), ia._prec[0]))
    if z.radius == 0.0:
        return value
    lipschitz = (1.0 / (Interval.point(rd.hypot_down(z.center.real, z.center.imag)) - z.radius)).hi
    return value.inflate(rd.mul_up(lipschitz, z.radius))


def ln(z: Complexish, cut_angle: float = math.pi) -> Disk:
    """
    Logarithm with the branch cut along the ray of direction `cut_angle`.

    The imaginary part lies in (cut_angle - 2*pi, cut_angle); the default is
    the principal branch.
    """
    z = Disk.of(z)
    if cut_angle == math.pi:
        return _principal_ln(z)
    shift = Interval.point(cut_angle) - ia.pi()
    rotation = Disk.from_polar(Interval(1.0, 1.0), -shift)
    return _principal_ln(z * rotation) + Disk.from_box(Interval(0.0, 0.0), shift)


def sqrt(z: Complexish) -> Disk:
    """Principal square root."""
    z = Disk.of(z)
    if _distance_to_negative_axis(z.center) <= z.radius:
        if z.radius == 0.0 and z.center == 0:
            return ZERO
        raise DomainError(f"sqrt: disk meets the branch cut: {z}.")
    prec = ia._prec[0]
    log_re, log_im = libmp.mpci_log(_point_mpci(z.center), prec + 20)
    half = (libmp.from_float(0.5), libmp.from_float(0.5))
    value = _box_to_disk(
        libmp.mpci_exp((libmp.mpi_mul(log_re, half), libmp.mpi_mul(log_im, half)), prec)
    )
    if z.radius == 0.0:
        return value
    gap = Interval.point(rd.hypot_down(z.center.real, z.center.imag)) - z.radius
    lipschitz = (1.0 / (2 * ia.sqrt(gap))).hi
    return value.inflate(rd.mul_up(lipschitz, z.radius))


def power(z: Complexish, n: int) -> Disk:
    return Disk.of(z) ** n


def reciprocal(z: Complexish) -> Disk:
    return Disk.of(z).reciprocal()


def hull(*disks: Complexish) -> Disk:
    return Disk.hull(*disks)
