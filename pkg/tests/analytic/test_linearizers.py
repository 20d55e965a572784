import mpmath
import pytest

from beltrami_cert.analytic.dynamics import GoldenQuadratic, periodic_point
from beltrami_cert.analytic.linearizers import (
    koebe_constant,
    koenigs_coordinate,
    koenigs_data,
    koenigs_radius_for_univalence,
    principal_multiplier_log,
    siegel_coefficients,
    siegel_data,
    siegel_radius_estimate,
)
from beltrami_cert.rigor.disk import Disk
from beltrami_cert.rigor.interval import Interval
from beltrami_cert.utils import DomainError

mpmath.mp.dps = 40

THETA = (mpmath.sqrt(5) - 1) / 2
LAM = mpmath.exp(2j * mpmath.pi * THETA)


@pytest.fixture(scope="module")
def golden() -> GoldenQuadratic:
    return GoldenQuadratic()


@pytest.fixture(scope="module")
def fixed_point(golden):
    expected = complex(2 * (1 - 1 / LAM))
    return periodic_point(golden.fn, 1, Disk(expected, 1e-6))


@pytest.fixture(scope="module")
def koenigs(golden, fixed_point):
    return koenigs_data(golden.fn, 1, fixed_point.point, fixed_point.multiplier, 0.1)


def test_second_siegel_coefficient(golden):
    coeffs = siegel_coefficients(golden.lam, 4)
    expected = -1 / (2 * (LAM - 1))
    assert coeffs[0].contains(1)
    assert abs(mpmath.mpc(coeffs[1].center) - expected) <= coeffs[1].radius + 1e-15


def test_siegel_conjugacy(golden):
    coeffs = [c.center for c in siegel_coefficients(golden.lam, 64)]
    lam = complex(LAM)

    def phi(z):
        return sum(c * z ** (k + 1) for k, c in enumerate(coeffs))

    for z in [0.05, 0.05j, -0.03 + 0.02j]:
        w = phi(z)
        assert abs(lam * w * (1 - w / 2) - phi(lam * z)) < 1e-12


def test_siegel_radius_estimate(golden):
    coeffs = siegel_coefficients(golden.lam, 64)
    estimate = siegel_radius_estimate(coeffs)
    assert 0.1 < estimate < 10.0
    data = siegel_data(golden.lam, 100.0, order=16)
    assert data.s.contains(100.0)
    assert len(data.coeffs) == 16


def test_koebe_constant():
    assert koebe_constant(Interval.point(1.0), 0.5).contains(8.0)
    with pytest.raises(DomainError):
        koebe_constant(Interval.point(0.5), 0.5)


def test_koenigs_contraction(koenigs, fixed_point):
    xi = fixed_point.multiplier.abs()
    assert (koenigs.c_bar * xi).lo > 1.0
    assert (koenigs.c_bar.sqr() * xi).hi < 1.0
    assert koenigs.ratio.hi < 1.0
    assert koenigs_radius_for_univalence(koenigs) <= 0.025


def test_koenigs_coordinate_at_the_fixed_point(golden, koenigs):
    assert koenigs_coordinate(golden.fn, koenigs, Disk(0j)).contains(0)


def test_koenigs_coordinate_is_tangent_to_identity(golden, koenigs):
    u = 0.01 + 0.005j
    value = koenigs_coordinate(golden.fn, koenigs, Disk(u))
    assert abs(value.center - u) <= (koenigs.K * (abs(u) ** 2) / (1.0 - koenigs.ratio)).hi + value.radius
    assert value.radius <= 1e-5


def test_koenigs_conjugacy(golden, koenigs, fixed_point):
    # psi(f(a + u) - a) = xi psi(u)
    u = -0.004 + 0.003j
    a, lam = complex(fixed_point.point.center), complex(LAM)
    image = lam * (a + u) * (1 - (a + u) / 2) - a
    left = koenigs_coordinate(golden.fn, koenigs, Disk(image))
    right = koenigs_coordinate(golden.fn, koenigs, Disk(u)) * fixed_point.multiplier
    assert left.inflate(1e-12).overlaps(right)


def test_koenigs_rejects_points_outside_the_disk(golden, koenigs):
    with pytest.raises(DomainError):
        koenigs_coordinate(golden.fn, koenigs, Disk(0.2 + 0j))


def test_multiplier_log_has_negative_real_part(fixed_point):
    nu = principal_multiplier_log(fixed_point.multiplier)
    assert nu.real_part().hi < 0.0
    expected = 1j * mpmath.log(2 - LAM)
    if mpmath.im(mpmath.log(2 - LAM)) < 0:
        expected += 1j * 2j * mpmath.pi
    assert abs(mpmath.mpc(nu.center) - expected) <= nu.radius
