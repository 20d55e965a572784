"""
Verification that the boundary arc and its preimage do not meet on [varrho, R].

The arc lambda([varrho, R]) is covered by a chain of disks B_i, one per
parameter interval; f^{-q}(B_k) is enclosed by the verified inverse branch
and checked against every B_i.
"""

from dataclasses import dataclass, field
from functools import partial
from typing import Iterator

import numpy as np

from beltrami_cert.crescent.geometry import CrescentConfig
from beltrami_cert.rigor.balls import BallArray, down, up
from beltrami_cert.rigor.disk import Disk
from beltrami_cert.rigor.interval import Interval
from beltrami_cert.utils import CoverError, DomainError, VerificationError, get_logger, parallel_map

SCREEN_ROWS = 512

log = get_logger(__name__)


def cover_parameters(inner: float, outer: float, n_balls: int) -> list[Interval]:
    """Logarithmically spaced parameter intervals sharing their endpoints."""
    if n_balls < 1:
        raise DomainError(f"Cover needs at least one ball, got {n_balls}.")
    edges = np.geomspace(inner, outer, n_balls + 1)
    edges[0], edges[-1] = inner, outer
    return [Interval(float(a), float(b)) for a, b in zip(edges, edges[1:])]


def _cover_chunk(cfg: CrescentConfig, parameters: list[Interval]) -> list[tuple[Disk, Disk]]:
    balls = []
    for r in parameters:
        boundary = cfg.lambda_n(r)
        balls.append((boundary, cfg.preimage(boundary, r)))
    return balls


@dataclass(frozen=True)
class Cover:
    parameters: list[Interval]
    boundary: list[Disk]
    preimages: list[Disk]

    def rows(self) -> Iterator[tuple]:
        for kind, disks in (("boundary", self.boundary), ("preimage", self.preimages)):
            for i, d in enumerate(disks):
                yield i, d.center.real, d.center.imag, d.radius, kind


def build_cover(cfg: CrescentConfig, n_balls: int, workers: int = 1) -> Cover:
    parameters = cover_parameters(cfg.inner_cutoff, cfg.outer_cutoff, n_balls)
    size = max(1, -(-len(parameters) // (4 * workers)))
    chunks = [parameters[i : i + size] for i in range(0, len(parameters), size)]
    results = parallel_map(partial(_cover_chunk, cfg), chunks, workers)
    balls = [ball for chunk in results for ball in chunk]
    return Cover(parameters, [b for b, _ in balls], [p for _, p in balls])


@dataclass
class CoverReport:
    ok: bool
    n_balls: int
    min_separation: float
    overlaps: list[tuple[int, int]] = field(default_factory=list)
    gaps: list[int] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "ok": self.ok,
            "n_balls": self.n_balls,
            "min_separation": self.min_separation,
            "overlaps": [list(pair) for pair in self.overlaps],
            "gaps": self.gaps,
        }


def check_cover(boundary: list[Disk], preimages: list[Disk]) -> CoverReport:
    """
    Consecutive boundary disks must overlap and no preimage disk may meet
    a boundary disk. Far pairs are cleared by a vectorized screen, the
    rest by exact disk separation.
    """
    gaps = [i for i in range(len(boundary) - 1) if boundary[i].is_disjoint(boundary[i + 1])]
    b = BallArray.from_disks(boundary)
    p = BallArray.from_disks(preimages)
    overlaps = []
    min_separation = np.inf
    for start in range(0, len(preimages), SCREEN_ROWS):
        rows = slice(start, start + SCREEN_ROWS)
        distance = np.abs(p.centers[rows, None] - b.centers[None, :])
        reach = p.radii[rows, None] + b.radii[None, :]
        min_separation = min(min_separation, float(np.min(distance - reach)))
        unresolved = down(distance, ops=4) <= up(reach, ops=1)
        for k, i in zip(*np.nonzero(unresolved)):
            k = int(k) + start
            if not preimages[k].is_disjoint(boundary[int(i)]):
                overlaps.append((k, int(i)))
    ok = not gaps and not overlaps
    return CoverReport(ok, len(boundary), min_separation, overlaps, gaps)


def verify_empty_intersection(cfg: CrescentConfig, n_balls: int, workers: int = 1) -> tuple[Cover, CoverReport]:
    """
    Raises:
        CoverError: if consecutive boundary disks fail to overlap.
        VerificationError: if a preimage disk meets a boundary disk.
    """
    cover = build_cover(cfg, n_balls, workers)
    report = check_cover(cover.boundary, cover.preimages)
    if report.gaps:
        raise CoverError(f"Boundary disks {report.gaps[:10]} do not overlap their successors.")
    if report.overlaps:
        raise VerificationError(f"Preimage disks meet the cover at (preimage, boundary) {report.overlaps[:10]}.")
    log.info(f"Empty intersection verified with {n_balls} balls, separation {report.min_separation:.3e}.")
    return cover, report
