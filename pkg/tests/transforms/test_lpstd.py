import cmath
import math

import mpmath
import numpy as np
import pytest

from beltrami_cert.rigor.balls import BallArray
from beltrami_cert.rigor.disk import Disk
from beltrami_cert.rigor.interval import Interval
from beltrami_cert.transforms.grid import RadialGrid
from beltrami_cert.transforms.lpstd import LpStd, Region
from beltrami_cert.utils import DomainError

P = 2.1


@pytest.fixture
def grid() -> RadialGrid:
    return RadialGrid((0.0, 1.0, 2.0, 3.0))


def random_series(grid: RadialGrid, kmin: int, kmax: int, seed: int = 0) -> LpStd:
    rng = np.random.default_rng(seed)
    shape = (kmax - kmin + 1, grid.n_cells)
    centers = rng.normal(size=shape) + 1j * rng.normal(size=shape)
    return LpStd(grid, kmin, BallArray(centers, 1e-6 * rng.random(shape)), Interval(0.0, 0.0), P)


def direct_sum(s: LpStd, z: complex) -> complex:
    r, phi = abs(z), cmath.phase(z)
    m = next(i for i in range(s.grid.n_cells) if s.grid.edges[i] <= r < s.grid.edges[i + 1])
    return sum(complex(s.coeffs.centers[i, m]) * cmath.exp(1j * k * phi) for i, k in enumerate(s.modes()))


def test_shape_checks(grid):
    with pytest.raises(DomainError):
        LpStd(grid, 0, BallArray.zeros((2, 2)))
    with pytest.raises(DomainError):
        LpStd(grid, 0, BallArray.zeros(3))


def test_indicator_norm(grid):
    s = LpStd.single(grid, 0, [0.0, 1.0, 0.0], P)
    norm = s.lp_norm()
    exact = (3.0 * math.pi) ** (1 / P)
    assert norm.lo <= exact <= norm.hi
    assert norm.width <= 1e-10


def test_region_norm(grid):
    s = LpStd.single(grid, 0, [1.0, 1.0, 1.0], P)
    inner = s.lp_norm(Region.disk(2.0))
    assert inner.contains((4.0 * math.pi) ** (1 / P))
    outer = s.lp_norm(Region.annulus(2.5, 10.0))
    assert outer.lo == 0.0
    assert outer.hi >= (math.pi * (9.0 - 6.25)) ** (1 / P)
    assert s.lp_norm(Region(5.0)).hi == 0.0


def test_two_mode_norm_against_quadrature(grid):
    a, b = 1.0 + 0.5j, -0.7j
    centers = np.zeros((2, 3), dtype=complex)
    centers[0, 1], centers[1, 1] = a, b
    s = LpStd.from_centers(grid, 0, centers, P)
    mpmath.mp.dps = 20
    angular = mpmath.quad(lambda t: abs(a + b * mpmath.exp(1j * t)) ** P, [0, mpmath.pi, 2 * mpmath.pi])
    exact = float((angular * (4 - 1) / 2) ** (1 / P))
    norm = s.lp_norm()
    assert norm.lo <= exact <= norm.hi


def test_triangle_inequality(grid):
    s1, s2 = random_series(grid, -3, 2, seed=1), random_series(grid, -1, 4, seed=2)
    assert (s1 + s2).lp_norm().lo <= s1.lp_norm().hi + s2.lp_norm().hi


def test_error_enters_the_norm(grid):
    s = LpStd.zero(grid, 0, 0, P).with_error(0.5)
    norm = s.lp_norm()
    assert norm.lo == 0.0 and norm.hi >= 0.5


def test_eval_zero_series(grid):
    assert LpStd.zero(grid, -2, 2, P).eval_series(Disk(1.5 + 0.2j, 0.1)).contains(0)


def test_eval_single_mode(grid):
    s = LpStd.single(grid, 1, [0.0, 1.0, 0.0], P)
    for phi in [0.1, 1.7, -2.9, math.pi]:
        z = 1.5 * cmath.exp(1j * phi)
        value = s.eval_series(Disk(z, 1e-3))
        assert value.contains(cmath.exp(1j * phi))
        assert value.radius <= 1e-2


def test_eval_against_direct_summation(grid):
    s = random_series(grid, -4, 5)
    rng = np.random.default_rng(9)
    for _ in range(50):
        z = rng.uniform(0.05, 2.95) * cmath.exp(1j * rng.uniform(-math.pi, math.pi))
        value = s.eval_series(Disk(z))
        assert abs(value.center - direct_sum(s, z)) <= value.radius
        assert value.radius <= 1e-4


def test_eval_outside_and_across_cells(grid):
    s = LpStd.single(grid, 0, [1.0, 2.0, 3.0], P)
    assert s.eval_series(Disk(5 + 0j)).contains(0)
    wide = s.eval_series(Disk(2.0 + 0j, 0.5))
    assert wide.contains(2) and wide.contains(3)
    assert s.eval_series(Disk(0j, 0.1), offset=1.0).contains(2)


def test_sup_modulus_dominates_samples(grid):
    s = random_series(grid, -5, 5, seed=4)
    sup = s.sup_modulus(offset=1.0)
    rng = np.random.default_rng(5)
    for m in range(grid.n_cells):
        for phi in rng.uniform(0, 2 * math.pi, 200):
            value = 1.0 + sum(complex(s.coeffs.centers[i, m]) * cmath.exp(1j * k * phi) for i, k in enumerate(s.modes()))
            assert abs(value) <= sup[m]
    assert np.all(sup <= 1.0 + 1.3 * np.abs(s.coeffs.centers).sum(axis=0))


def test_offset_outside_the_window(grid):
    s = LpStd.single(grid, 3, [0.0, 0.0, 0.0], P)
    assert np.all(s.sup_modulus(offset=2.0) >= 2.0)


def test_window_accounts_for_dropped_modes(grid):
    s = random_series(grid, -3, 3)
    narrow = s.window(-1, 1)
    assert narrow.kmin == -1 and narrow.kmax == 1
    dropped = s - narrow.window(-3, 3, account=False).midpoint()
    assert narrow.error.hi >= dropped.window(-3, 3).lp_norm().lo
    silent = s.window(-1, 1, account=False)
    assert silent.error.hi == 0.0
    wide = s.window(-5, 5)
    assert wide.row(4).is_zero() and wide.error.hi == 0.0


def test_product_of_modes(grid):
    a = LpStd.single(grid, 1, [0.0, 2.0, 1j], P)
    b = LpStd.single(grid, -1, [5.0, 3.0, 1j], P)
    product = a.multiply(b)
    assert product.kmin == 0 and product.kmax == 0
    assert product.coefficient(0, 1).contains(6)
    assert product.coefficient(0, 2).contains(-1)
    assert product.coefficient(0, 0).contains(0)


def test_product_error_bookkeeping(grid):
    a = LpStd.single(grid, 0, [1.0, 2.0, 0.0], P)
    b = LpStd.single(grid, 0, [0.0, 0.0, 0.0], P).with_error(0.1)
    assert a.multiply(b).error.hi >= 0.2
    with pytest.raises(DomainError):
        b.multiply(b)


def test_rows_round_trip(grid):
    s = random_series(grid, -1, 1).with_error(0.25)
    restored = LpStd.from_rows(s.header(), list(s.rows()))
    assert restored.kmin == s.kmin and restored.kmax == s.kmax
    assert np.array_equal(restored.coeffs.centers, s.coeffs.centers)
    assert restored.error.hi == s.error.hi
