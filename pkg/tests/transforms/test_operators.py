import cmath
import math
import random

import mpmath
import numpy as np
import pytest

from beltrami_cert.rigor.disk import Disk
from beltrami_cert.transforms.grid import RadialGrid
from beltrami_cert.transforms.lpstd import LpStd
from beltrami_cert.transforms.operators import cauchy_transform, cp_constant, hilbert_transform
from beltrami_cert.utils import DomainError

P = 2.1
A, B = 1.0, 2.0


@pytest.fixture
def annulus() -> RadialGrid:
    return RadialGrid((0.0, A, B))


def indicator(grid: RadialGrid, k: int) -> LpStd:
    values = np.zeros(grid.n_cells)
    values[-1] = 1.0
    return LpStd.single(grid, k, values, P)


def assert_mode_value(s: LpStd, k: int, r: float, expected: complex, phi: float = 0.7) -> None:
    z = r * cmath.exp(1j * phi)
    value = s.eval_series(Disk(z))
    assert value.contains(expected * cmath.exp(1j * k * phi)), (r, value, expected)


def test_cp_constant():
    assert cp_constant(2.1).lo > 1.15 and cp_constant(2.1).hi < 1.17
    assert cp_constant(2.0001).hi < 1.001
    values = [cp_constant(p) for p in [2.1, 3.0, 5.0, 10.0]]
    assert all(a.hi < b.lo for a, b in zip(values, values[1:]))
    with pytest.raises(DomainError):
        cp_constant(2.0)


def test_zero_input(annulus):
    zero = LpStd.zero(annulus, -3, 3, P)
    t = hilbert_transform(zero)
    assert t.kmin == -5 and t.kmax == 1
    assert not np.any(t.coeffs.centers) and np.all(t.coeffs.radii < 1e-250)
    assert t.error.hi < 1e-250
    c = cauchy_transform(zero)
    assert c.kmin == -4
    assert not np.any(c.coeffs.centers) and np.all(c.coeffs.radii < 1e-250)


def test_error_is_scaled_by_the_lp_bound(annulus):
    s = LpStd.zero(annulus, 0, 1, P).with_error(1.0)
    assert hilbert_transform(s).error.hi >= cp_constant(P).hi
    with pytest.raises(DomainError):
        cauchy_transform(s)


def test_hilbert_of_the_unit_disk():
    grid = RadialGrid((0.0, 1.0))
    t = hilbert_transform(LpStd.single(grid, 0, [1.0], P))
    assert t.coefficient(-2, 0).contains(0)
    # outside the disk T = -1/z^2, carried by the error norm
    tail = (2 * math.pi / (2 * P - 2)) ** (1 / P)
    assert t.error.hi >= tail
    assert t.error.hi <= 2 * tail


def test_cauchy_of_the_unit_disk():
    grid = RadialGrid((0.0, 1.0))
    c = cauchy_transform(LpStd.single(grid, 0, [1.0], P), extend_to=4.0)
    for r in [0.3, 0.8]:
        assert_mode_value(c, -1, r, r)
    for r in [1.5, 3.5]:
        assert_mode_value(c, -1, r, 1 / r)


@pytest.mark.parametrize("r", [0.4, 1.3, 1.8])
def test_hilbert_mode_three(annulus, r):
    t = hilbert_transform(indicator(annulus, 3))
    expected = -4 * r * (1 / A - 1 / B) if r < A else -3 + 4 * r / B
    assert_mode_value(t, 1, r, expected)


@pytest.mark.parametrize("r", [0.4, 1.3, 1.8])
def test_hilbert_mode_zero(annulus, r):
    t = hilbert_transform(indicator(annulus, 0))
    expected = 0.0 if r < A else A**2 / r**2
    assert_mode_value(t, -2, r, expected)


@pytest.mark.parametrize("r", [0.4, 1.3, 1.8])
def test_hilbert_mode_minus_two(annulus, r):
    t = hilbert_transform(indicator(annulus, -2))
    expected = 0.0 if r < A else 1 - 1.5 * (r**4 - A**4) / r**4
    assert_mode_value(t, -4, r, expected)


@pytest.mark.parametrize("r", [0.4, 1.3, 1.8])
def test_hilbert_mode_two(annulus, r):
    t = hilbert_transform(indicator(annulus, 2))
    expected = -2 * math.log(B / A) if r < A else 1 - 2 * math.log(B / r)
    assert_mode_value(t, 0, r, expected)


def test_hilbert_mode_one_is_the_identity(annulus):
    s = indicator(annulus, 1)
    t = hilbert_transform(s)
    assert t.coefficient(-1, 1).contains(1) and t.coefficient(-1, 0).contains(0)


def test_logarithmic_part_goes_into_the_error(annulus):
    t = hilbert_transform(LpStd.single(annulus, 2, [1.0, 0.0], P))
    # 2 ln(1/r) on the unit disk
    expected = 2 * (2 * math.pi * math.gamma(P + 1) / 2 ** (P + 1)) ** (1 / P)
    assert expected * (1 - 1e-12) <= t.error.hi <= expected * (1 + 1e-9)
    assert t.coefficient(0, 0).contains(1)


@pytest.mark.parametrize("r", [0.4, 1.3, 1.8, 2.5])
def test_cauchy_modes(annulus, r):
    s = LpStd.from_centers(annulus, -1, np.array([[0, 1], [0, 1], [0, 1], [0, 1]], dtype=complex), P)
    c = cauchy_transform(s, normalized=False, extend_to=3.0)
    # input mode 2 -> output 1: -2 r int_r^B rho^{-1}
    expected_1 = -2 * r * math.log(B / max(r, A)) if r < B else 0.0
    # input mode 0 -> output -1: 2/r int_0^r rho
    expected_m1 = (min(max(r, A), B) ** 2 - A**2) / r
    # input mode -1 -> output -2: 2 r^{-2} int_0^r rho^2
    expected_m2 = 2 * (min(max(r, A), B) ** 3 - A**3) / (3 * r**2)
    # input mode 1 -> output 0: -2 int_r^B 1
    expected_0 = -2 * (B - max(r, A)) if r < B else 0.0
    for k, expected in [(1, expected_1), (-1, expected_m1), (-2, expected_m2), (0, expected_0)]:
        assert_mode_value(c, k, r, expected)


def test_cauchy_normalization(annulus):
    s = indicator(annulus, 1)
    raw = cauchy_transform(s, normalized=False)
    normalized = cauchy_transform(s)
    # C[s](0) = -2 int_A^B d rho for the indicator of the outer cell
    at_zero = Disk(-2.0 * (B - A))
    assert raw.coefficient(0, 0).overlaps(at_zero)
    assert normalized.coefficient(0, 0).contains(0)
    for m in range(annulus.n_cells):
        assert (raw.coefficient(0, m) - at_zero).overlaps(normalized.coefficient(0, m))


def test_linearity(annulus):
    rng = np.random.default_rng(3)
    s1 = LpStd.from_centers(annulus, -3, rng.normal(size=(7, 2)) + 0j, P)
    s2 = LpStd.from_centers(annulus, -3, rng.normal(size=(7, 2)) + 1j * rng.normal(size=(7, 2)), P)
    combined = s1.scale(2.0) + s2.scale(-3.0)
    for transform in [hilbert_transform, cauchy_transform]:
        left = transform(combined)
        right = transform(s1).scale(2.0) + transform(s2).scale(-3.0)
        for k in left.modes():
            for m in range(annulus.n_cells):
                assert left.coefficient(int(k), m).overlaps(right.coefficient(int(k), m))


def test_norm_contract():
    grid = RadialGrid.annulus(0.5, 4.0, 6)
    rng = np.random.default_rng(11)
    centers = rng.normal(size=(5, grid.n_cells)) + 1j * rng.normal(size=(5, grid.n_cells))
    centers[:, 0] = 0.0
    s = LpStd.from_centers(grid, -2, centers, P)
    assert hilbert_transform(s).lp_norm().lo <= cp_constant(P).hi * s.lp_norm().hi


def test_large_radius_is_finite():
    grid = RadialGrid.annulus(1e-3, 1e4, 64)
    centers = np.ones((41, grid.n_cells), dtype=complex)
    centers[:, 0] = 0.0
    s = LpStd.from_centers(grid, -20, centers, P)
    t = hilbert_transform(s)
    assert np.all(np.isfinite(t.coeffs.radii))
    assert math.isfinite(t.error.hi)
    c = cauchy_transform(s, extend_to=2e4)
    assert np.all(np.isfinite(c.coeffs.radii))


# ---- quadrature oracles ----


def cauchy_oracle(k: int, a: float, b: float, z: complex):
    r, phi = abs(z), cmath.phase(z) % (2 * math.pi)

    def integrand(rho, theta):
        w = rho * mpmath.exp(1j * theta)
        return mpmath.exp(1j * k * theta) / (w - z) * rho

    radial = [a, r, b] if a < r < b else [a, b]
    return -mpmath.quad(integrand, radial, [0, phi, 2 * mpmath.pi]) / mpmath.pi


def radial_cauchy_oracle(k: int, edges: list[float], values: list[complex], z: complex):
    """
    Cauchy transform of sum_m values[m] 1_{cell m}(r) e^{ik phi}: the angle
    integral by residues, the radius integral by quadrature.
    """
    r = abs(z)
    lo, hi, sign = (r, edges[-1], -2) if k >= 1 else (edges[0], r, 2)
    total = mpmath.mpf(0)
    for m, value in enumerate(values):
        a, b = max(lo, edges[m]), min(hi, edges[m + 1])
        if value and a < b:
            total += mpmath.mpc(value) * mpmath.quad(lambda rho: rho ** (1 - k), [a, b])
    return sign * mpmath.mpc(z) ** (k - 1) * total


def hilbert_oracle(oracle, z: complex, h: float = 1e-3):
    """d/dz of `oracle` by fourth-order central differences."""

    def diff(direction):
        f = [oracle(z + j * h * direction) for j in (-2, -1, 1, 2)]
        return (f[0] - 8 * f[1] + 8 * f[2] - f[3]) / (12 * h)

    return (diff(1) - 1j * diff(1j)) / 2


def random_input(rng: random.Random) -> tuple[int, list[float], list[complex]]:
    """One mode |k| <= 4 on up to three cells; the cell around 0 stays empty."""
    k = rng.randint(-4, 4)
    edges = [0.0, rng.uniform(0.3, 0.6)]
    for _ in range(rng.randint(1, 3)):
        edges.append(edges[-1] + rng.uniform(0.3, 0.8))
    values = [0j] + [complex(rng.gauss(0.0, 1.0), rng.gauss(0.0, 1.0)) for _ in edges[2:]]
    return k, edges, values


def random_point(rng: random.Random, edges: list[float], margin: float = 0.01) -> complex:
    while True:
        r = rng.uniform(0.25, edges[-1] - margin)
        if all(abs(r - e) > margin for e in edges):
            return r * cmath.exp(1j * rng.uniform(-math.pi, math.pi))


@pytest.mark.slow
@pytest.mark.parametrize("k", [-2, 0, 3])
def test_radial_oracle_matches_area_quadrature(k):
    with mpmath.workdps(15):
        for z in [0.3 * cmath.exp(0.4j), 1.1 * cmath.exp(2.2j), 2.2 * cmath.exp(-1.0j)]:
            direct = cauchy_oracle(k, 0.5, 1.5, z)
            radial = radial_cauchy_oracle(k, [0.0, 0.5, 1.5], [0j, 1.0], z)
            assert abs(direct - radial) < 1e-8


@pytest.mark.slow
def test_transforms_against_oracles():
    rng = random.Random(31)
    with mpmath.workdps(25):
        for _ in range(30):
            k, edges, values = random_input(rng)
            s = LpStd.single(RadialGrid(tuple(edges)), k, values, P)
            c = cauchy_transform(s, normalized=False)
            t = hilbert_transform(s)

            def oracle(w, k=k, edges=edges, values=values):
                return radial_cauchy_oracle(k, edges, values, w)

            for _ in range(20):
                z = random_point(rng, edges)
                expected = complex(oracle(z))
                assert c.eval_series(Disk(z)).inflate(1e-6).contains(expected), (k, edges, z)
                expected_t = complex(hilbert_oracle(oracle, z))
                assert t.eval_series(Disk(z)).inflate(1e-6).contains(expected_t), (k, edges, z)
