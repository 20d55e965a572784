import csv
import json

import numpy as np
import pytest

from beltrami_cert.rigor.balls import BallArray
from beltrami_cert.rigor.interval import Interval
from beltrami_cert.services.output import COVER_COLUMNS, OutputWriter, read_lpstd
from beltrami_cert.transforms.grid import RadialGrid
from beltrami_cert.transforms.lpstd import LpStd
from beltrami_cert.utils import ConfigError


@pytest.fixture
def series() -> LpStd:
    grid = RadialGrid.annulus(0.5, 4.0, 3)
    rng = np.random.default_rng(5)
    shape = (3, grid.n_cells)
    centers = rng.normal(size=shape) + 1j * rng.normal(size=shape)
    return LpStd(grid, -1, BallArray(centers, 1e-9 * rng.random(shape)), Interval(0.0, 0.125), 2.1)


def test_formats_are_respected(tmp_path):
    writer = OutputWriter(tmp_path / "out", ["json"])
    assert writer.write_csv("cover", COVER_COLUMNS, [(0, 1.0, 0.0, 0.1, "boundary")]) is None
    path = writer.write_json("crescent", {"n": 3})
    assert json.loads(path.read_text()) == {"n": 3}


def test_csv_has_a_header(tmp_path):
    writer = OutputWriter(tmp_path, ["csv"])
    path = writer.write_csv("cover", COVER_COLUMNS, [(0, 1.0, 0.0, 0.1, "boundary"), (1, 0.5, 0.5, 0.1, "preimage")])
    with path.open(newline="") as f:
        rows = list(csv.reader(f))
    assert tuple(rows[0]) == COVER_COLUMNS
    assert rows[2] == ["1", "0.5", "0.5", "0.1", "preimage"]
    assert writer.write_json("crescent", {}) is None


def test_lpstd_files_ignore_the_formats(tmp_path, series):
    writer = OutputWriter(tmp_path, ["json"])
    path = writer.write_lpstd("g_star", series)
    restored = read_lpstd(path)
    assert restored.grid == series.grid
    assert restored.kmin == series.kmin and restored.kmax == series.kmax
    assert np.array_equal(restored.coeffs.centers, series.coeffs.centers)
    assert np.array_equal(restored.coeffs.radii, series.coeffs.radii)
    assert restored.error.hi == 0.125 and restored.p == 2.1


def test_unwritable_directory(tmp_path):
    blocker = tmp_path / "file"
    blocker.write_text("")
    with pytest.raises(ConfigError):
        OutputWriter(blocker / "out")
