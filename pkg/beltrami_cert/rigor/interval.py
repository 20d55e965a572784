"""
Closed real intervals with outward rounding.

Arithmetic (+, -, *, /, sqrt, integer powers) uses the directed rounding in
`beltrami_cert.rigor.rounding`. Transcendental functions go through the interval
kernels of mpmath (`mpmath.libmp.mpi_*`) at `PREC` bits and are rounded outward
when converted back to doubles.
"""

from contextlib import contextmanager
from dataclasses import dataclass
from functools import cache
from typing import Iterator, Union
import math

from mpmath import iv, libmp

from beltrami_cert.rigor import rounding as rd
from beltrami_cert.utils import DomainError

PREC = 80

_prec = [PREC]

Real = Union["Interval", float, int]


@contextmanager
def working_precision(bits: int) -> Iterator[None]:
    """Temporarily change the precision of the transcendental kernels."""
    previous, previous_iv = _prec[0], iv.prec
    _prec[0] = bits
    iv.prec = bits
    try:
        yield
    finally:
        _prec[0] = previous
        iv.prec = previous_iv


def _int_to_interval(n: int) -> "Interval":
    f = float(n)
    if int(f) == n:
        return Interval(f, f)
    return Interval(math.nextafter(f, -math.inf), math.nextafter(f, math.inf))


@dataclass(frozen=True, slots=True)
class Interval:
    """
    The closed interval [lo, hi] with double endpoints.

    Every operation returns an interval containing the exact result for all
    points of the operands. Non-finite endpoints are rejected.
    """

    lo: float
    hi: float

    def __post_init__(self):
        lo, hi = float(self.lo), float(self.hi)
        if math.isnan(lo) or math.isnan(hi):
            raise DomainError("Interval endpoint is NaN.")
        if math.isinf(lo) or math.isinf(hi):
            raise DomainError(f"Interval endpoint is not finite: [{lo}, {hi}].")
        if lo > hi:
            raise DomainError(f"Interval endpoints out of order: [{lo}, {hi}].")
        object.__setattr__(self, "lo", lo)
        object.__setattr__(self, "hi", hi)

    @classmethod
    def point(cls, x: float | int) -> "Interval":
        if isinstance(x, int) and not isinstance(x, bool):
            return _int_to_interval(x)
        return cls(x, x)

    @classmethod
    def of(cls, x: Real) -> "Interval":
        if isinstance(x, Interval):
            return x
        return cls.point(x)

    @classmethod
    def hull(cls, *xs: Real) -> "Interval":
        items = [cls.of(x) for x in xs]
        if not items:
            raise DomainError("Hull of an empty collection.")
        return cls(min(x.lo for x in items), max(x.hi for x in items))

    @classmethod
    def ratio(cls, num: int, den: int) -> "Interval":
        """Enclosure of the rational num/den."""
        return cls(
            libmp.to_float(libmp.from_rational(num, den, 60, libmp.round_floor), rnd=libmp.round_floor),
            libmp.to_float(libmp.from_rational(num, den, 60, libmp.round_ceiling), rnd=libmp.round_ceiling),
        )

    @classmethod
    def symmetric(cls, r: float) -> "Interval":
        return cls(-r, r)

    def __repr__(self) -> str:
        return f"[{self.lo!r}, {self.hi!r}]"

    # ---- shape ----

    @property
    def mid(self) -> float:
        if self.lo == -self.hi:
            return 0.0
        m = 0.5 * self.lo + 0.5 * self.hi
        return min(max(m, self.lo), self.hi)

    @property
    def rad(self) -> float:
        """Upper bound on the distance from `mid` to either endpoint."""
        m = self.mid
        return max(rd.sub_up(self.hi, m), rd.sub_up(m, self.lo))

    @property
    def width(self) -> float:
        return rd.sub_up(self.hi, self.lo)

    @property
    def mag(self) -> float:
        return max(abs(self.lo), abs(self.hi))

    @property
    def mig(self) -> float:
        if self.lo <= 0.0 <= self.hi:
            return 0.0
        return min(abs(self.lo), abs(self.hi))

    def is_point(self) -> bool:
        return self.lo == self.hi

    def contains(self, x: Real) -> bool:
        other = Interval.of(x)
        return self.lo <= other.lo and other.hi <= self.hi

    def __contains__(self, x: Real) -> bool:
        return self.contains(x)

    def contains_zero(self) -> bool:
        return self.lo <= 0.0 <= self.hi

    def interior_contains(self, x: Real) -> bool:
        other = Interval.of(x)
        return self.lo < other.lo and other.hi < self.hi

    def overlaps(self, other: Real) -> bool:
        o = Interval.of(other)
        return self.lo <= o.hi and o.lo <= self.hi

    def intersection(self, other: Real) -> "Interval | None":
        o = Interval.of(other)
        lo, hi = max(self.lo, o.lo), min(self.hi, o.hi)
        if lo > hi:
            return None
        return Interval(lo, hi)

    def union(self, other: Real) -> "Interval":
        return Interval.hull(self, other)

    def inflate(self, r: float) -> "Interval":
        return Interval(rd.sub_down(self.lo, r), rd.add_up(self.hi, r))

    def split(self, n: int) -> list["Interval"]:
        """Cover by `n` consecutive subintervals sharing endpoints."""
        if n <= 1 or self.is_point():
            return [self]
        step = (self.hi - self.lo) / n
        cuts = [self.lo] + [min(max(self.lo + i * step, self.lo), self.hi) for i in range(1, n)] + [self.hi]
        for i in range(1, len(cuts)):
            cuts[i] = max(cuts[i], cuts[i - 1])
        return [Interval(a, b) for a, b in zip(cuts, cuts[1:])]

    def to_list(self) -> list[float]:
        return [self.lo, self.hi]

    # ---- arithmetic ----

    def __neg__(self) -> "Interval":
        return Interval(-self.hi, -self.lo)

    def __pos__(self) -> "Interval":
        return self

    def __abs__(self) -> "Interval":
        return Interval(self.mig, self.mag)

    def __add__(self, other: Real) -> "Interval":
        o = Interval.of(other)
        return Interval(rd.add_down(self.lo, o.lo), rd.add_up(self.hi, o.hi))

    __radd__ = __add__

    def __sub__(self, other: Real) -> "Interval":
        o = Interval.of(other)
        return Interval(rd.sub_down(self.lo, o.hi), rd.sub_up(self.hi, o.lo))

    def __rsub__(self, other: Real) -> "Interval":
        return Interval.of(other) - self

    def __mul__(self, other: Real) -> "Interval":
        o = Interval.of(other)
        a, b, c, d = self.lo, self.hi, o.lo, o.hi
        if a >= 0.0 and c >= 0.0:
            return Interval(rd.mul_down(a, c), rd.mul_up(b, d))
        lo = min(rd.mul_down(a, c), rd.mul_down(a, d), rd.mul_down(b, c), rd.mul_down(b, d))
        hi = max(rd.mul_up(a, c), rd.mul_up(a, d), rd.mul_up(b, c), rd.mul_up(b, d))
        return Interval(lo, hi)

    __rmul__ = __mul__

    def __truediv__(self, other: Real) -> "Interval":
        o = Interval.of(other)
        if o.contains_zero():
            raise DomainError(f"Division by an interval containing 0: {o}.")
        a, b, c, d = self.lo, self.hi, o.lo, o.hi
        lo = min(rd.div_down(a, c), rd.div_down(a, d), rd.div_down(b, c), rd.div_down(b, d))
        hi = max(rd.div_up(a, c), rd.div_up(a, d), rd.div_up(b, c), rd.div_up(b, d))
        return Interval(lo, hi)

    def __rtruediv__(self, other: Real) -> "Interval":
        return Interval.of(other) / self

    def __pow__(self, n: int) -> "Interval":
        if not isinstance(n, int):
            return power(self, n)
        if n == 0:
            return Interval(1.0, 1.0)
        if n < 0:
            return 1.0 / (self**-n)
        if n % 2 == 0:
            return Interval(_pow_down(self.mig, n), _pow_up(self.mag, n))
        lo = _pow_down(self.lo, n) if self.lo >= 0.0 else -_pow_up(-self.lo, n)
        hi = _pow_up(self.hi, n) if self.hi >= 0.0 else -_pow_down(-self.hi, n)
        return Interval(lo, hi)

    def sqr(self) -> "Interval":
        return self**2


def _pow_down(a: float, n: int) -> float:
    result = 1.0
    for _ in range(n):
        result = rd.mul_down(result, a)
    return result


def _pow_up(a: float, n: int) -> float:
    result = 1.0
    for _ in range(n):
        result = rd.mul_up(result, a)
    return result


# ---- mpmath bridge ----


def to_mpi(x: Interval) -> tuple:
    return libmp.from_float(x.lo), libmp.from_float(x.hi)


def from_mpi(v: tuple) -> Interval:
    a, b = v
    lo = libmp.to_float(a, rnd=libmp.round_floor)
    hi = libmp.to_float(b, rnd=libmp.round_ceiling)
    # gradual underflow is not rounded in the requested direction
    if lo != 0.0 and abs(lo) < 2.0**-1020:
        lo = math.nextafter(lo, -math.inf)
    if hi != 0.0 and abs(hi) < 2.0**-1020:
        hi = math.nextafter(hi, math.inf)
    return Interval(lo, hi)


def to_iv(x: Interval):
    return iv.mpf((x.lo, x.hi))


def from_iv(v) -> Interval:
    return from_mpi(v._mpi_)


@cache
def pi() -> Interval:
    return Interval(
        libmp.to_float(libmp.mpf_pi(60, libmp.round_floor), rnd=libmp.round_floor),
        libmp.to_float(libmp.mpf_pi(60, libmp.round_ceiling), rnd=libmp.round_ceiling),
    )


@cache
def euler_gamma() -> Interval:
    return Interval(
        libmp.to_float(libmp.mpf_euler(60, libmp.round_floor), rnd=libmp.round_floor),
        libmp.to_float(libmp.mpf_euler(60, libmp.round_ceiling), rnd=libmp.round_ceiling),
    )


def two_pi() -> Interval:
    return pi() * 2


# ---- elementary functions ----


def exp(x: Real) -> Interval:
    return from_mpi(libmp.mpi_exp(to_mpi(Interval.of(x)), _prec[0]))


def ln(x: Real) -> Interval:
    x = Interval.of(x)
    if x.lo <= 0.0:
        raise DomainError(f"ln of an interval reaching 0 or below: {x}.")
    return from_mpi(libmp.mpi_log(to_mpi(x), _prec[0]))


def sqrt(x: Real) -> Interval:
    x = Interval.of(x)
    if x.lo < 0.0:
        raise DomainError(f"sqrt of an interval with negative part: {x}.")
    return Interval(rd.sqrt_down(x.lo), rd.sqrt_up(x.hi))


def sin(x: Real) -> Interval:
    return from_mpi(libmp.mpi_sin(to_mpi(Interval.of(x)), _prec[0]))


def cos(x: Real) -> Interval:
    return from_mpi(libmp.mpi_cos(to_mpi(Interval.of(x)), _prec[0]))


def tan(x: Real) -> Interval:
    x = Interval.of(x)
    c = cos(x)
    if c.contains_zero():
        raise DomainError(f"tan at a pole inside {x}.")
    return from_mpi(libmp.mpi_tan(to_mpi(x), _prec[0]))


def cot(x: Real) -> Interval:
    x = Interval.of(x)
    s = sin(x)
    if s.contains_zero():
        raise DomainError(f"cot at a pole inside {x}.")
    return from_mpi(libmp.mpi_cot(to_mpi(x), _prec[0]))


def atan(x: Real) -> Interval:
    return from_mpi(libmp.mpi_atan(to_mpi(Interval.of(x)), _prec[0]))


def atan2(y: Real, x: Real) -> Interval:
    """Argument of x + iy in [-pi, pi]."""
    y, x = Interval.of(y), Interval.of(x)
    if x.contains_zero() and y.contains_zero():
        raise DomainError(f"atan2 undefined at the origin: y={y}, x={x}.")
    return from_mpi(libmp.mpi_atan2(to_mpi(y), to_mpi(x), _prec[0]))


def power(x: Real, y: Real) -> Interval:
    """x**y for a positive base, or any base when y is an integer point."""
    x, y = Interval.of(x), Interval.of(y)
    if y.is_point() and y.lo == int(y.lo) and abs(y.lo) < 2**31:
        return x ** int(y.lo)
    if x.lo <= 0.0:
        if x.lo == 0.0 and y.lo > 0.0:
            hi = power(Interval(x.hi, x.hi), y).hi if x.hi > 0.0 else 0.0
            return Interval(0.0, hi)
        raise DomainError(f"Real power of an interval reaching 0 or below: {x}.")
    prec = _prec[0]
    log_x = libmp.mpi_log(to_mpi(x), prec + 20)
    return from_mpi(libmp.mpi_exp(libmp.mpi_mul(to_mpi(y), log_x, prec + 20), prec))


def gamma(x: Real) -> Interval:
    x = Interval.of(x)
    if x.lo <= 0.0:
        raise DomainError(f"gamma is only enclosed for positive arguments, got {x}.")
    return from_mpi(libmp.mpi_gamma(to_mpi(x), _prec[0]))
