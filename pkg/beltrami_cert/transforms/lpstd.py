"""
L_p standard sets.

A member is s(z) + e(z) where

    s(r e^{i phi}) = sum_{k=kmin}^{kmax} s_k(r) e^{i k phi},

each s_k is constant on every grid cell with value inside the disk
coeffs[k - kmin, m], s vanishes beyond the outer edge of the grid and the L_p
norm of e lies in `error`.
"""

from dataclasses import dataclass, field
import cmath
import math

import numpy as np

from beltrami_cert.rigor import interval as ia
from beltrami_cert.rigor.balls import BallArray, up, down
from beltrami_cert.rigor.disk import Disk
from beltrami_cert.rigor.interval import Interval
from beltrami_cert.rigor.rounding import TINY, U
from beltrami_cert.transforms.grid import RadialGrid
from beltrami_cert.utils import DomainError

ANGULAR_SUBDIVISIONS = 64


@dataclass(frozen=True)
class Region:
    """The annulus inner <= |z| <= outer; outer=None means the whole exterior."""

    inner: float = 0.0
    outer: float | None = None

    @classmethod
    def disk(cls, radius: float) -> "Region":
        return cls(0.0, radius)

    @classmethod
    def annulus(cls, inner: float, outer: float) -> "Region":
        if not 0.0 <= inner < outer:
            raise DomainError(f"Empty annulus [{inner}, {outer}].")
        return cls(inner, outer)

    def clip(self, grid: RadialGrid) -> Interval | None:
        outer = grid.outer if self.outer is None else min(self.outer, grid.outer)
        if self.inner >= outer:
            return None
        return Interval(self.inner, outer)


def error_bound(value: float) -> Interval:
    """[0, value] rounded up; an exact zero stays zero."""
    if value == 0.0:
        return Interval(0.0, 0.0)
    return Interval(0.0, float(up(value, ops=2)))


def _basis_error(k: np.ndarray, angle: float) -> np.ndarray:
    """Bound on |fl(exp(i k a)) - exp(i k a)| for |a| <= angle."""
    return (np.abs(k) * (abs(angle) + 1.0) * 2.0 + 8.0) * U + TINY


@dataclass(frozen=True)
class LpStd:
    grid: RadialGrid
    kmin: int
    coeffs: BallArray
    error: Interval = field(default=Interval(0.0, 0.0))
    p: float = 2.1

    def __post_init__(self):
        if len(self.coeffs.shape) != 2:
            raise DomainError(f"Coefficients must be a (modes, cells) array, got shape {self.coeffs.shape}.")
        if self.coeffs.shape[1] != self.grid.n_cells:
            raise DomainError(
                f"Coefficient array has {self.coeffs.shape[1]} cells, grid has {self.grid.n_cells}."
            )
        if self.p <= 1.0:
            raise DomainError(f"Exponent p must exceed 1, got {self.p}.")
        if self.error.lo < 0.0:
            object.__setattr__(self, "error", Interval(0.0, max(self.error.hi, 0.0)))

    # ---- construction ----

    @classmethod
    def zero(cls, grid: RadialGrid, kmin: int, kmax: int, p: float) -> "LpStd":
        return cls(grid, kmin, BallArray.zeros((kmax - kmin + 1, grid.n_cells)), Interval(0.0, 0.0), p)

    @classmethod
    def from_centers(cls, grid: RadialGrid, kmin: int, centers: np.ndarray, p: float) -> "LpStd":
        return cls(grid, kmin, BallArray.exact(np.atleast_2d(centers)), Interval(0.0, 0.0), p)

    @classmethod
    def single(cls, grid: RadialGrid, k: int, values: np.ndarray, p: float) -> "LpStd":
        """One mode k with exact cell values."""
        return cls.from_centers(grid, k, np.asarray(values, dtype=np.complex128)[np.newaxis, :], p)

    # ---- shape ----

    @property
    def n_modes(self) -> int:
        return self.coeffs.shape[0]

    @property
    def kmax(self) -> int:
        return self.kmin + self.n_modes - 1

    def modes(self) -> np.ndarray:
        return np.arange(self.kmin, self.kmax + 1)

    def row(self, k: int) -> BallArray:
        if not self.kmin <= k <= self.kmax:
            return BallArray.zeros(self.grid.n_cells)
        return self.coeffs[k - self.kmin]

    def coefficient(self, k: int, m: int) -> Disk:
        return self.row(k).disk(m)

    def has_error(self) -> bool:
        return self.error.hi > 0.0

    def with_error(self, extra: float) -> "LpStd":
        return LpStd(self.grid, self.kmin, self.coeffs, error_bound(self.error.hi + extra), self.p)

    def midpoint(self) -> "LpStd":
        return LpStd(self.grid, self.kmin, self.coeffs.midpoint(), Interval(0.0, 0.0), self.p)

    def _padded(self, kmin: int, kmax: int) -> BallArray:
        """Coefficients on the window [kmin, kmax] (a superset of ours)."""
        shape = (kmax - kmin + 1, self.grid.n_cells)
        centers = np.zeros(shape, dtype=np.complex128)
        radii = np.zeros(shape)
        start = self.kmin - kmin
        centers[start : start + self.n_modes] = self.coeffs.centers
        radii[start : start + self.n_modes] = self.coeffs.radii
        return BallArray(centers, radii)

    def window(self, kmin: int, kmax: int, account: bool = True) -> "LpStd":
        """
        Restrict to the modes kmin..kmax. Dropped modes go into the error
        bound unless `account` is false.
        """
        lo, hi = min(kmin, self.kmin), max(kmax, self.kmax)
        padded = self._padded(lo, hi)
        kept = padded[kmin - lo : kmax - lo + 1]
        error = self.error
        if account:
            keep = np.zeros(hi - lo + 1, dtype=bool)
            keep[kmin - lo : kmax - lo + 1] = True
            dropped = BallArray(np.where(keep[:, None], 0.0, padded.centers), np.where(keep[:, None], 0.0, padded.radii))
            if not dropped.is_zero():
                extra = LpStd(self.grid, lo, dropped, Interval(0.0, 0.0), self.p).lp_norm().hi
                error = error_bound(error.hi + extra)
        return LpStd(self.grid, kmin, kept, error, self.p)

    def _check_compatible(self, other: "LpStd"):
        if self.grid != other.grid:
            raise DomainError("L_p standard sets live on different grids.")
        if self.p != other.p:
            raise DomainError(f"L_p standard sets have different exponents: {self.p} and {other.p}.")

    # ---- arithmetic ----

    def __neg__(self) -> "LpStd":
        return LpStd(self.grid, self.kmin, -self.coeffs, self.error, self.p)

    def __add__(self, other: "LpStd") -> "LpStd":
        self._check_compatible(other)
        lo, hi = min(self.kmin, other.kmin), max(self.kmax, other.kmax)
        coeffs = self._padded(lo, hi) + other._padded(lo, hi)
        error = error_bound(self.error.hi + other.error.hi)
        return LpStd(self.grid, lo, coeffs, error, self.p)

    def __sub__(self, other: "LpStd") -> "LpStd":
        return self + (-other)

    def scale(self, factor: Disk | complex) -> "LpStd":
        factor = Disk.of(factor)
        return LpStd(
            self.grid,
            self.kmin,
            self.coeffs.scale_disk(factor),
            error_bound(self.error.hi * factor.mag),
            self.p,
        )

    def multiply(self, other: "LpStd") -> "LpStd":
        """
        Pointwise product. The mode window of the result is the sum of the
        windows; at most one factor may carry an L_p error.
        """
        self._check_compatible(other)
        if self.has_error() and other.has_error():
            raise DomainError("Cannot multiply two L_p standard sets that both carry an error.")
        columns = [self.coeffs[:, m].convolve(other.coeffs[:, m]) for m in range(self.grid.n_cells)]
        coeffs = BallArray(
            np.stack([c.centers for c in columns], axis=1),
            np.stack([c.radii for c in columns], axis=1),
        )
        error = 0.0
        if other.has_error():
            error = float(np.max(self.sup_modulus())) * other.error.hi
        elif self.has_error():
            error = float(np.max(other.sup_modulus())) * self.error.hi
        return LpStd(self.grid, self.kmin + other.kmin, coeffs, error_bound(error), self.p)

    # ---- bounds ----

    def sup_modulus(self, offset: complex = 0.0, angular: int = ANGULAR_SUBDIVISIONS) -> np.ndarray:
        """
        Upper bound on sup |offset + s| over each cell.

        The circle is cut into `angular` arcs; on each arc the series is
        evaluated at the midpoint and the drift |e^{ik phi} - e^{ik phi_j}| <=
        min(2, |k| delta) is added.
        """
        source = self
        if offset != 0.0 and not self.kmin <= 0 <= self.kmax:
            source = self.window(min(self.kmin, 0), max(self.kmax, 0), account=False)
        k = source.modes().astype(np.float64)
        centers = source.coeffs.centers.copy()
        if offset != 0.0:
            centers[-source.kmin] += offset
        radii = source.coeffs.radii
        if offset != 0.0:
            radii = radii.copy()
            radii[-source.kmin] += 2.0 * U * np.abs(centers[-source.kmin]) + TINY

        phi = (np.arange(angular) + 0.5) * (2.0 * math.pi / angular)
        delta = (math.pi / angular) * (1.0 + 1e-12)
        basis = np.exp(1j * np.outer(k, phi))
        values = np.abs(centers.T @ basis)

        abs_c = np.abs(centers)
        n = len(k)
        per_mode = _basis_error(k, 2.0 * math.pi) + np.minimum(2.0, np.abs(k) * delta)
        rounding = (4.0 * n + 16.0) * U * abs_c.sum(axis=0)
        bound = values.max(axis=1) + abs_c.T @ per_mode + rounding + radii.sum(axis=0)
        return up(bound, ops=n + 8)

    def lp_norm(self, region: Region | None = None) -> Interval:
        """Enclosure of the L_p norm over the region, including the error part."""
        region = region or Region()
        radii = region.clip(self.grid)
        lower = upper = 0.0
        if radii is not None:
            area_lo, area_hi = self.grid.areas()
            sup = self.sup_modulus()
            edges = self.grid.edges
            cells = [m for m in self.grid.locate(radii) if edges[m] < radii.hi and edges[m + 1] > radii.lo]
            upper = float(up(np.sum(area_hi[cells] * sup[cells] ** self.p), ops=len(cells) + 16))

            inside = self.grid.inside(radii)
            if inside and self.p >= 2.0:
                mig = np.maximum(np.abs(self.coeffs.centers[:, inside]) - self.coeffs.radii[:, inside], 0.0)
                energy = down(np.sum(mig * mig, axis=0), ops=self.n_modes + 4)
                lower = float(down(np.sum(area_lo[inside] * energy ** (self.p / 2.0)), ops=len(inside) + 16))

        exponent = Interval.point(1) / Interval.of(self.p)
        series_hi = ia.power(Interval.point(upper), exponent).hi if upper > 0.0 else 0.0
        series_lo = ia.power(Interval.point(lower), exponent).lo if lower > 0.0 else 0.0
        hi = (Interval.point(series_hi) + self.error.hi).hi
        lo = max((Interval.point(series_lo) - self.error.hi).lo, 0.0)
        return Interval(min(lo, hi), hi)

    def eval_series(self, z: Disk | complex, offset: complex = 0.0) -> Disk:
        """Disk containing offset + s(w) for every w in z."""
        z = Disk.of(z)
        modulus = z.abs()
        k = self.modes().astype(np.float64)
        if z.contains_zero():
            angle, delta = 0.0, math.pi
        else:
            angle = cmath.phase(z.center)
            rotated = z * Disk.from_polar(Interval.point(1.0), Interval.point(-angle))
            arg = rotated.arg()
            delta = max(-arg.lo, arg.hi)
        basis = BallArray(
            np.exp(1j * k * angle),
            _basis_error(k, angle) + np.minimum(2.0, np.abs(k) * delta),
        )
        values = [(self.coeffs[:, m] * basis).sum() + offset for m in self.grid.locate(modulus)]
        if self.grid.reaches_outside(modulus):
            values.append(Disk.of(offset))
        return Disk.hull(*values)

    # ---- serialization ----

    def header(self) -> dict:
        return {
            "p": self.p,
            "kmin": self.kmin,
            "kmax": self.kmax,
            "error": self.error.to_list(),
            "grid": self.grid.to_dict(),
        }

    def rows(self):
        """(k, m, re, im, radius) per coefficient."""
        for i, k in enumerate(self.modes()):
            for m in range(self.grid.n_cells):
                c = self.coeffs.centers[i, m]
                yield int(k), m, float(c.real), float(c.imag), float(self.coeffs.radii[i, m])

    @classmethod
    def from_rows(cls, header: dict, rows) -> "LpStd":
        grid = RadialGrid(tuple(header["grid"]["edges"]))
        kmin, kmax = int(header["kmin"]), int(header["kmax"])
        shape = (kmax - kmin + 1, grid.n_cells)
        centers = np.zeros(shape, dtype=np.complex128)
        radii = np.zeros(shape)
        for k, m, re, im, rad in rows:
            centers[int(k) - kmin, int(m)] = complex(float(re), float(im))
            radii[int(k) - kmin, int(m)] = float(rad)
        error = Interval(*header["error"])
        return cls(grid, kmin, BallArray(centers, radii), error, float(header["p"]))
