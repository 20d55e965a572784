import cmath
import math

import mpmath
import numpy as np
import pytest

from beltrami_cert.beltrami.annulus import mode_coefficient
from beltrami_cert.beltrami.bounds import (
    CellBounds,
    PairCoefficients,
    cell_bounds,
    cos_sum_2,
    cos_sum_4,
    eta_norms,
    geometric_tail,
    jump_bound,
    mu_sup_annulus,
    remainder_bound,
    sin_sum_1,
    sin_sum_3,
    sin_sum_5,
)
from beltrami_cert.rigor.disk import ZERO, Disk
from beltrami_cert.rigor.interval import Interval
from beltrami_cert.utils import VerificationError
from tests.beltrami.synthetic import ALPHAS, KAPPA, XI, ratio, synthetic

K = np.arange(1, 200001, dtype=np.float64)


@pytest.mark.parametrize("phi", [0.3, 2.0, 4.5, 6.1])
def test_closed_form_sums(phi):
    x = Interval.point(phi)
    assert sin_sum_3(x).inflate(1e-9).contains(float(np.sum(np.sin(K * phi) / K**3)))
    assert sin_sum_5(x).inflate(1e-9).contains(float(np.sum(np.sin(K * phi) / K**5)))
    assert cos_sum_4(x).inflate(1e-9).contains(float(np.sum(np.cos(K * phi) / K**4)))
    assert cos_sum_2(x).inflate(1e-5).contains(float(np.sum(np.cos(K * phi) / K**2)))
    assert sin_sum_1(x).inflate(1e-12).contains(float(-cmath.log(1 - cmath.exp(1j * phi)).imag))


@pytest.mark.parametrize("k", [40, 60])
def test_symmetric_pairs(k):
    data = synthetic(ALPHAS["right"])
    pair = PairCoefficients.from_data(data)
    rem = (remainder_bound(data, 1) + remainder_bound(data, -1)) / k**6
    total = mode_coefficient(data, k) + mode_coefficient(data, -k)
    difference = mode_coefficient(data, k) - mode_coefficient(data, -k)
    even = pair.A / k**2 + pair.B / k**4
    odd = (pair.C / k + pair.D / k**3 + pair.E / k**5).mul_i()
    assert (total - even).mag <= rem + 1e-12
    assert (difference - odd).mag <= rem + 1e-12
    # no 1/k term in the sum
    assert total.mag * k**2 < 2 * pair.A.mag + 1e-6


def test_remainder_and_jump():
    right = synthetic(ALPHAS["right"])
    assert jump_bound(right) == (0.0, 0.0)
    assert 0.0 < remainder_bound(right, 1) < math.inf
    above = synthetic(ALPHAS["above"])
    weight, decay = jump_bound(above)
    assert weight == pytest.approx(2 * abs(XI / KAPPA), rel=1e-9)
    assert decay == pytest.approx(math.exp(-0.5), rel=1e-9)


def test_geometric_tail():
    assert geometric_tail(0.0, 0.5, 3).hi == 0.0
    assert geometric_tail(2.0, 0.5, 3).contains(0.5)


@pytest.mark.parametrize("name", list(ALPHAS))
def test_cell_sup_dominates_samples(name):
    data = synthetic(ALPHAS[name])
    cell = cell_bounds([data], 1, phi_pieces=64)
    samples = [
        abs(ratio(KAPPA, data.zeta_minus.center if phi <= 0 else data.zeta_plus.center, XI, phi))
        for phi in np.linspace(-math.pi + 1e-9, math.pi, 2001)
    ]
    assert cell.sup >= max(samples)
    assert cell.sup <= cell.direct_sup


def test_cell_sup_without_xi():
    data = synthetic(ALPHAS["right"], xi=1e-9 + 0j)
    cell = cell_bounds([data], 1, phi_pieces=16)
    assert cell.series_sup == pytest.approx(cell.mu2.mag, abs=1e-6)


def test_mu_sup_rejects_k_violation():
    # xi / kappa = -3i keeps |mu| below 1/2 along the whole segment
    contracting = synthetic(-math.pi + 6j, xi=KAPPA * -3j)
    good = cell_bounds([contracting], 1, phi_pieces=64)
    assert good.sup < 0.8
    assert mu_sup_annulus([good]).hi == good.sup
    bad = CellBounds(2, Interval(1.0, 1.1), ZERO, good.pair, 0.0, 0.0, 0.0, 0.0, 1.2, 1.0, 1.0)
    with pytest.raises(VerificationError):
        mu_sup_annulus([good, bad])


def make_cell(values: dict[str, complex], r: Interval, rem: float = 0.0) -> CellBounds:
    pair = PairCoefficients(*[Disk(values[name]) for name in "ABCDE"])
    return CellBounds(1, r, ZERO, pair, rem, rem, 0.0, 0.0, 0.5, 0.5, 0.5)


COEFFS = {"A": 0.2 + 0.1j, "B": -0.05j, "C": 0.3 - 0.2j, "D": 0.04, "E": 0.01 + 0.01j}


def test_eta1_against_direct_summation():
    M, r = 16, Interval(1.0, 1.5)
    cell = make_cell(COEFFS, r)
    norms = eta_norms([cell], M, 2.1, Interval(0.0, 0.0), 1e-3)
    A, B, C, D, E = (COEFFS[name] for name in "ABCDE")
    with mpmath.workdps(30):
        total = 0
        for k in range(M + 1, 200001):
            total += abs(A / k**2 + B / k**4) ** 2 + abs(C / k + D / k**3 + E / k**5) ** 2
        # tail of |C|^2 / k^2 beyond the explicit terms
        total += abs(C) ** 2 * mpmath.zeta(2, 200001)
        expected = mpmath.sqrt(mpmath.pi * total * (1.5**2 - 1.0) / 2)
    assert norms.eta1_l2 == pytest.approx(float(expected), rel=1e-6)
    assert norms.eta2_l2 == 0.0


def test_eta_norm_decreases_with_modes():
    cell = make_cell(COEFFS, Interval(1.0, 1.5), rem=1e-3)
    coarse = eta_norms([cell], 64, 2.1, Interval(0.0, 0.2), 1e-3)
    fine = eta_norms([cell], 256, 2.1, Interval(0.0, 0.2), 1e-3)
    assert fine.eta_norm_p.hi <= coarse.eta_norm_p.hi
    assert fine.inner_norm_p == coarse.inner_norm_p
    assert coarse.eta2_l2 <= 1e-6 * coarse.eta1_l2


def test_inner_disk_term():
    cell = make_cell({name: 0j for name in "ABCDE"}, Interval(1.0, 1.5))
    norms = eta_norms([cell], 8, 3.0, Interval(0.0, 0.5), 0.1)
    assert norms.annulus_norm_p == 0.0
    assert norms.inner_norm_p == pytest.approx(0.5 * (math.pi * 0.01) ** (1 / 3), rel=1e-12)
