from types import SimpleNamespace

import numpy as np
import pytest

from beltrami_cert.beltrami.annulus import annulus_pieces, mode_coefficient
from beltrami_cert.beltrami.split import annulus_grid, build_split
from beltrami_cert.crescent.completion import completion_data
from beltrami_cert.crescent.geometry import CrescentConfig
from beltrami_cert.rigor.disk import Disk
from beltrami_cert.transforms.grid import RadialGrid
from beltrami_cert.utils import DomainError

CUTOFFS = SimpleNamespace(inner_cutoff=1e-2, outer_cutoff=1e2)


def test_annulus_grid_spans_the_cutoffs():
    grid = annulus_grid(CUTOFFS, 32)
    assert grid.n_cells == 33
    assert grid.edges[0] == 0.0
    assert grid.edges[1] == 1e-2
    assert grid.outer == 1e2


@pytest.mark.parametrize("modes", [0, 3, 17])
def test_mode_count_must_be_even(modes):
    with pytest.raises(DomainError):
        build_split(CUTOFFS, annulus_grid(CUTOFFS, 8), modes, 2.1, None)


def test_grid_must_match_the_cutoffs():
    grid = RadialGrid.annulus(1e-3, 1e2, 8)
    with pytest.raises(DomainError):
        build_split(CUTOFFS, grid, 4, 2.1, None)


# ---- golden mean crescent ----


@pytest.fixture(scope="module")
def crescent() -> CrescentConfig:
    return CrescentConfig.build()


@pytest.fixture(scope="module")
def split(crescent):
    completion = completion_data(crescent, 0.5, 0.1)
    return build_split(crescent, annulus_grid(crescent, 64), 16, 2.1, completion, workers=2, phi_pieces=32)


@pytest.mark.slow
def test_golden_split_is_contracting(split):
    assert split.K.hi < 1.0
    assert split.annulus_sup.hi <= split.K.hi
    assert split.nu_sup <= split.K.hi
    assert split.eta_norm_p.hi > 0.0
    assert len(split.cells) == 64


@pytest.mark.slow
def test_golden_nu_holds_the_mode_centers(crescent, split):
    nu = split.nu
    assert nu.kmin == -14
    assert nu.kmax == 18
    assert np.all(nu.coeffs.centers[:, 0] == 0)
    m = 40
    pieces = annulus_pieces(crescent, nu.grid.cell(m))
    for mode in (-14, 2, 7):
        expected = Disk.hull(*[mode_coefficient(data, 2 - mode) for data in pieces])
        assert nu.coefficient(mode, m).center == pytest.approx(expected.center, abs=1e-14)


@pytest.mark.slow
def test_golden_split_rows(split):
    rows = list(split.rows())
    assert len(rows) == 33 * 65
    m, k, *_ = rows[0]
    assert (m, k) == (0, -14)
    assert split.to_dict()["M_t"] == 16


@pytest.mark.slow
def test_golden_eta_shrinks_with_more_modes(crescent):
    completion = completion_data(crescent, 0.5, 0.1)
    grid = annulus_grid(crescent, 64)
    coarse = build_split(crescent, grid, 64, 2.1, completion, workers=4, phi_pieces=32)
    fine = build_split(crescent, grid, 256, 2.1, completion, workers=4, phi_pieces=32)
    assert fine.nu.grid == coarse.nu.grid
    assert fine.eta.inner_norm_p == coarse.eta.inner_norm_p
    assert fine.eta_norm_p.hi < coarse.eta_norm_p.hi
