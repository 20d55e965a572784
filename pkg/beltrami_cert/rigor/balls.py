"""
Arrays of complex balls for vectorized work on Fourier coefficients.

numpy evaluates in round-to-nearest, so every radius carries an a-priori
bound on the rounding error of the centers and is itself inflated with
`up`, which dominates the relative error of a short chain of nonnegative
float operations plus an underflow floor.
"""

from dataclasses import dataclass

import numpy as np

from beltrami_cert.rigor.disk import Disk
from beltrami_cert.rigor.interval import Interval
from beltrami_cert.rigor.rounding import TINY, U


def up(x: np.ndarray | float, ops: int = 1) -> np.ndarray:
    """Upper bound for a nonnegative quantity computed with `ops` roundings."""
    return np.asarray(x, dtype=np.float64) * (1.0 + 2.0 * (ops + 2) * U) + TINY


def down(x: np.ndarray | float, ops: int = 1) -> np.ndarray:
    """Lower bound for a nonnegative quantity computed with `ops` roundings."""
    x = np.asarray(x, dtype=np.float64) * (1.0 - 2.0 * (ops + 2) * U) - TINY
    return np.maximum(x, 0.0)


def interval_mid_rad(lo: np.ndarray, hi: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Midpoints and radii covering elementwise real intervals [lo, hi]."""
    lo = np.asarray(lo, dtype=np.float64)
    hi = np.asarray(hi, dtype=np.float64)
    mid = 0.5 * lo + 0.5 * hi
    rad = up(np.maximum(hi - mid, mid - lo), ops=2)
    return mid, rad


def reciprocal_bounds(k: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Enclosure of 1/k for nonzero real k."""
    q = 1.0 / np.asarray(k, dtype=np.float64)
    delta = np.abs(q) * (4.0 * U) + TINY
    return q - delta, q + delta


@dataclass(frozen=True)
class BallArray:
    """
    centers[i] ± radii[i], elementwise over an array of any shape.
    """

    centers: np.ndarray
    radii: np.ndarray

    def __post_init__(self):
        centers = np.asarray(self.centers, dtype=np.complex128)
        radii = np.broadcast_to(np.asarray(self.radii, dtype=np.float64), centers.shape).copy()
        object.__setattr__(self, "centers", centers)
        object.__setattr__(self, "radii", radii)

    @classmethod
    def zeros(cls, shape: int | tuple[int, ...]) -> "BallArray":
        return cls(np.zeros(shape, dtype=np.complex128), np.zeros(shape))

    @classmethod
    def exact(cls, centers: np.ndarray) -> "BallArray":
        centers = np.asarray(centers, dtype=np.complex128)
        return cls(centers, np.zeros(centers.shape))

    @classmethod
    def from_disks(cls, disks: list[Disk]) -> "BallArray":
        return cls(
            np.array([d.center for d in disks], dtype=np.complex128),
            np.array([d.radius for d in disks], dtype=np.float64),
        )

    @property
    def shape(self) -> tuple[int, ...]:
        return self.centers.shape

    def __len__(self) -> int:
        return len(self.centers)

    def __getitem__(self, index) -> "BallArray":
        return BallArray(self.centers[index], self.radii[index])

    def disk(self, index) -> Disk:
        return Disk(complex(self.centers[index]), float(self.radii[index]))

    def to_disks(self) -> list[Disk]:
        return [Disk(complex(c), float(r)) for c, r in zip(self.centers.ravel(), self.radii.ravel())]

    def mag(self) -> np.ndarray:
        """Elementwise upper bound on the modulus."""
        return up(np.abs(self.centers) + self.radii, ops=3)

    def is_zero(self) -> bool:
        return not np.any(self.centers) and not np.any(self.radii)

    def copy(self) -> "BallArray":
        return BallArray(self.centers.copy(), self.radii.copy())

    def inflate(self, extra: np.ndarray | float) -> "BallArray":
        return BallArray(self.centers, up(self.radii + extra, ops=1))

    def midpoint(self) -> "BallArray":
        return BallArray.exact(self.centers)

    # ---- arithmetic ----

    def __neg__(self) -> "BallArray":
        return BallArray(-self.centers, self.radii)

    def __add__(self, other: "BallArray") -> "BallArray":
        c = self.centers + other.centers
        err = 2.0 * U * np.abs(c)
        return BallArray(c, up(self.radii + other.radii + err, ops=3))

    def __sub__(self, other: "BallArray") -> "BallArray":
        return self + (-other)

    def __mul__(self, other: "BallArray") -> "BallArray":
        a, b = self.centers, other.centers
        abs_a, abs_b = np.abs(a), np.abs(b)
        c = a * b
        radius = (
            abs_a * other.radii
            + abs_b * self.radii
            + self.radii * other.radii
            + 4.0 * U * abs_a * abs_b
        )
        return BallArray(c, up(radius, ops=8))

    def scale(self, lo: np.ndarray | float, hi: np.ndarray | float) -> "BallArray":
        """Multiply elementwise by real intervals [lo, hi]."""
        mid, half = interval_mid_rad(lo, hi)
        c = self.centers * mid
        abs_c = np.abs(self.centers)
        mag = np.maximum(np.abs(mid) + half, 0.0)
        radius = self.radii * mag + abs_c * half + 2.0 * U * np.abs(c)
        return BallArray(c, up(radius, ops=6))

    def scale_interval(self, x: Interval) -> "BallArray":
        return self.scale(x.lo, x.hi)

    def scale_disk(self, d: Disk) -> "BallArray":
        other = BallArray(np.full(self.shape, d.center), np.full(self.shape, d.radius))
        return self * other

    def convolve(self, other: "BallArray") -> "BallArray":
        """Full discrete convolution of two 1-D ball arrays."""
        n = min(len(self), len(other))
        abs_a, abs_b = np.abs(self.centers), np.abs(other.centers)
        c = np.convolve(self.centers, other.centers)
        radius = (
            np.convolve(abs_a, other.radii)
            + np.convolve(self.radii, abs_b)
            + np.convolve(self.radii, other.radii)
            + (4.0 * n + 8.0) * U * np.convolve(abs_a, abs_b)
        )
        return BallArray(c, up(radius, ops=n + 4))

    def sum(self) -> Disk:
        n = self.centers.size
        c = complex(np.sum(self.centers))
        err = (2.0 * n + 2.0) * U * float(np.sum(np.abs(self.centers)))
        radius = float(up(np.sum(self.radii) + err, ops=n + 2))
        return Disk(c, radius)
