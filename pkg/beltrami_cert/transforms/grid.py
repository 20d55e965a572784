"""
Radial grids for piecewise-constant Fourier coefficients.
"""

from dataclasses import dataclass
import bisect
import math

import numpy as np

from beltrami_cert.rigor import interval as ia
from beltrami_cert.rigor.balls import down, up
from beltrami_cert.rigor.interval import Interval
from beltrami_cert.utils import DomainError


@dataclass(frozen=True)
class RadialGrid:
    """
    Cells [e_m, e_{m+1}) between the edges 0 = e_0 < e_1 < ... < e_M.

    Data on the grid vanishes for r >= e_M.
    """

    edges: tuple[float, ...]

    def __post_init__(self):
        edges = tuple(float(e) for e in self.edges)
        if len(edges) < 2:
            raise DomainError("A radial grid needs at least one cell.")
        if edges[0] != 0.0:
            raise DomainError(f"The first edge must be 0, got {edges[0]}.")
        if any(not math.isfinite(e) for e in edges):
            raise DomainError("Grid edges must be finite.")
        if any(b <= a for a, b in zip(edges, edges[1:])):
            raise DomainError("Grid edges must be strictly increasing.")
        object.__setattr__(self, "edges", edges)

    @classmethod
    def annulus(cls, inner: float, outer: float, cells: int) -> "RadialGrid":
        """
        One inner cell [0, inner) followed by `cells` geometric cells up to
        `outer`.
        """
        if not 0.0 < inner < outer:
            raise DomainError(f"Annulus needs 0 < inner < outer, got {inner}, {outer}.")
        if cells < 1:
            raise DomainError(f"Annulus needs at least one cell, got {cells}.")
        ratio = (outer / inner) ** (1.0 / cells)
        edges = [0.0, inner] + [inner * ratio**m for m in range(1, cells)] + [outer]
        return cls(tuple(edges))

    @property
    def n_cells(self) -> int:
        return len(self.edges) - 1

    @property
    def outer(self) -> float:
        return self.edges[-1]

    @property
    def support_index(self) -> int:
        return self.n_cells - 1

    def cell(self, m: int) -> Interval:
        return Interval(self.edges[m], self.edges[m + 1])

    def cells(self) -> list[Interval]:
        return [self.cell(m) for m in range(self.n_cells)]

    def ratios(self) -> np.ndarray:
        """e_m / e_{m+1} per cell, rounded to nearest; 0 for the first cell."""
        e = np.asarray(self.edges)
        return e[:-1] / e[1:]

    def areas(self) -> tuple[np.ndarray, np.ndarray]:
        """Lower and upper bounds on pi (e_{m+1}^2 - e_m^2)."""
        e = np.asarray(self.edges)
        lo, hi = e[:-1], e[1:]
        diff = hi * hi - lo * lo
        return down(ia.pi().lo * diff, ops=6), up(ia.pi().hi * diff, ops=6)

    def locate(self, r: Interval) -> range:
        """Indices of the cells meeting the interval r (clipped to the grid)."""
        if r.hi < 0.0:
            raise DomainError(f"Negative radius {r}.")
        if r.lo >= self.outer:
            return range(0)
        first = bisect.bisect_right(self.edges, max(r.lo, 0.0)) - 1
        last = min(bisect.bisect_right(self.edges, r.hi) - 1, self.n_cells - 1)
        return range(first, last + 1)

    def inside(self, r: Interval) -> list[int]:
        """Indices of the cells contained in the interval r."""
        return [m for m in self.locate(r) if r.lo <= self.edges[m] and self.edges[m + 1] <= r.hi]

    def reaches_outside(self, r: Interval) -> bool:
        return r.hi >= self.outer

    def to_dict(self) -> dict:
        return {"edges": list(self.edges), "cells": self.n_cells}
