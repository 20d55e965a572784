"""
mu = nu + eta + gamma: a finite Fourier series on the annulus grid, a tail with
certified L_p norm inside D_R and the exterior part beyond R.
"""

from dataclasses import dataclass
from functools import partial
from typing import Iterator

import numpy as np

from beltrami_cert.beltrami.annulus import annulus_pieces, mode_coefficient
from beltrami_cert.beltrami.bounds import PHI_PIECES, CellBounds, EtaNorms, cell_bounds, eta_norms, mu_sup_annulus
from beltrami_cert.crescent.completion import CompletionData, completion_large_r_sup, completion_small_r_sup
from beltrami_cert.crescent.geometry import CrescentConfig
from beltrami_cert.rigor.balls import up
from beltrami_cert.rigor.disk import Disk
from beltrami_cert.rigor.interval import Interval
from beltrami_cert.transforms.grid import RadialGrid
from beltrami_cert.transforms.lpstd import LpStd
from beltrami_cert.utils import DomainError, VerificationError, get_logger, parallel_map

DEFAULT_MODES = 256
DEFAULT_CELLS = 512

log = get_logger(__name__)


def annulus_grid(cfg: CrescentConfig, cells: int = DEFAULT_CELLS) -> RadialGrid:
    """The inner disk [0, varrho) as cell 0, then `cells` geometric cells up to R."""
    return RadialGrid.annulus(cfg.inner_cutoff, cfg.outer_cutoff, cells)


@dataclass(frozen=True)
class DiffSplit:
    nu: LpStd
    eta_norm_p: Interval
    gamma_sup: Interval
    K: Interval
    M_t: int
    eta: EtaNorms
    annulus_sup: Interval
    small_r_sup: Interval
    nu_sup: float
    cells: tuple[CellBounds, ...]

    def rows(self) -> Iterator[tuple]:
        """(cell, mode, re, im, radius) per coefficient of nu."""
        for k, m, re, im, rad in self.nu.rows():
            yield m, k, re, im, rad

    def to_dict(self) -> dict:
        return {
            "M_t": self.M_t,
            "p": self.nu.p,
            "K": self.K.to_list(),
            "eta_norm_p": self.eta_norm_p.to_list(),
            "gamma_sup": self.gamma_sup.to_list(),
            "annulus_sup": self.annulus_sup.to_list(),
            "small_r_sup": self.small_r_sup.to_list(),
            "nu_sup": self.nu_sup,
            "eta": self.eta.to_dict(),
            "nu": self.nu.header(),
        }


def _cell_work(
    cfg: CrescentConfig, M_t: int, phi_pieces: int, item: tuple[int, Interval]
) -> tuple[CellBounds, np.ndarray]:
    m, r = item
    pieces = annulus_pieces(cfg, r)
    bounds = cell_bounds(pieces, m, phi_pieces)
    # modes 2 - M_t, ..., 2 + M_t
    coeffs = [Disk.hull(*[mode_coefficient(data, k) for data in pieces]) for k in range(M_t, -M_t - 1, -1)]
    radii = np.array([c.radius for c in coeffs])
    n = len(coeffs)
    bounds = bounds.with_window(float(up(np.sum(radii), ops=n)), float(up(np.sum(radii * radii), ops=2 * n)))
    log.debug(f"Cell {m} {r}: sup |mu| <= {bounds.sup:.6f}, window radius {bounds.window_radius:.3e}.")
    return bounds, np.array([c.center for c in coeffs])


def build_split(
    cfg: CrescentConfig,
    grid: RadialGrid,
    M_t: int,
    p: float,
    completion: CompletionData,
    workers: int = 1,
    phi_pieces: int = PHI_PIECES,
) -> DiffSplit:
    """
    nu takes the centers of the coefficient enclosures on every annulus cell and
    vanishes on the inner disk; the radii go into eta.

    Raises:
        DomainError: if the grid does not start at varrho and end at R, or M_t is not a positive even number.
        VerificationError: if the global bound K reaches 1.
    """
    if M_t < 2 or M_t % 2:
        raise DomainError(f"Mode count must be a positive even number, got {M_t}.")
    if grid.edges[1] != cfg.inner_cutoff or grid.outer != cfg.outer_cutoff:
        raise DomainError(f"Grid {grid.edges[1]}..{grid.outer} does not span [{cfg.inner_cutoff}, {cfg.outer_cutoff}].")
    items = [(m, grid.cell(m)) for m in range(1, grid.n_cells)]
    log.info(f"Fourier split with {2 * M_t + 1} modes on {len(items)} annulus cells.")
    results = parallel_map(partial(_cell_work, cfg, M_t, phi_pieces), items, workers)

    centers = np.zeros((2 * M_t + 1, grid.n_cells), dtype=np.complex128)
    for (m, _), (_, column) in zip(items, results):
        centers[:, m] = column
    cells = tuple(bounds for bounds, _ in results)
    nu = LpStd.from_centers(grid, 2 - M_t, centers, p)

    annulus_sup = mu_sup_annulus(list(cells))
    small = completion_small_r_sup(completion)
    large = completion_large_r_sup(completion)
    nu_sup = float(np.max(nu.sup_modulus()))
    bound = max(annulus_sup.hi, small.hi, large.hi, nu_sup)
    if not bound < 1.0:
        raise VerificationError(
            f"Split rejected: K = {bound:.6f} (annulus {annulus_sup.hi:.6f}, near 0 {small.hi:.6f}, "
            f"near the periodic point {large.hi:.6f}, nu {nu_sup:.6f})."
        )
    eta = eta_norms(list(cells), M_t, p, small, cfg.inner_cutoff)
    K = Interval(0.0, bound)
    log.info(f"Split accepted: K <= {bound:.6f}, ||eta||_p <= {eta.eta_norm_p.hi:.6e}.")
    return DiffSplit(nu, eta.eta_norm_p, large, K, M_t, eta, annulus_sup, small, nu_sup, cells)
