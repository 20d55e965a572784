import cmath
import random

import pytest

from beltrami_cert.analytic.fnstd import (
    FnStd,
    fn_add,
    fn_deriv_eval_disk,
    fn_eval_disk,
    fn_mul,
    orbit,
)
from beltrami_cert.rigor.disk import Disk
from beltrami_cert.rigor.interval import Interval
from beltrami_cert.utils import DomainError


def identity(degree: int = 4, rho: float = 2.0) -> FnStd:
    return FnStd.polynomial([1], degree, rho)


def test_square_of_identity():
    result = fn_mul(identity(), identity())
    assert result.coeffs[0] == Disk(0j)
    assert result.coeffs[1].contains(1)
    assert result.coeffs[1].radius == 0.0
    assert not result.has_errors()


def test_product_with_zero():
    result = fn_mul(identity(), FnStd.zero(4, 2.0))
    assert all(c == Disk(0j) for c in result.coeffs)
    assert not result.has_errors()


def test_exact_low_degree_product():
    f1 = FnStd.polynomial([1, 1], 4, 2.0)
    f2 = FnStd.polynomial([1, -1], 4, 2.0)
    result = fn_mul(f1, f2)
    expected = [0, 1, 0, -1]
    for c, e in zip(result.coeffs, expected):
        assert c.contains(e)
        assert c.radius == 0.0
    assert not result.has_errors()


def test_truncation_moves_into_higher_order():
    f = FnStd.polynomial([1, 1], 2, 2.0)
    result = fn_mul(f, f)
    # (z + z^2)^2 = z^2 + 2 z^3 + z^4, degree 2 keeps z^2
    assert result.coeffs[1].contains(1)
    assert result.higher_order.hi >= 2.0 + 2.0
    assert result.general_error.hi == 0.0


def test_mismatched_domains():
    with pytest.raises(DomainError):
        fn_mul(identity(rho=2.0), identity(rho=3.0))


def sample_member(f: FnStd, rng: random.Random):
    """A member p + z g + z^{N+1} h with constant g and h."""
    coeffs = [c.center + c.radius * rng.random() * cmath.exp(2j * cmath.pi * rng.random()) for c in f.coeffs]
    g = f.general_error.hi * rng.random() * cmath.exp(2j * cmath.pi * rng.random())
    h = f.higher_order.hi * rng.random() * cmath.exp(2j * cmath.pi * rng.random())
    n = f.degree

    def member(z: complex) -> complex:
        p = sum(c * z ** (k + 1) for k, c in enumerate(coeffs))
        return p + z * g + z ** (n + 1) * h

    return member


def test_member_containment():
    f1 = FnStd(3, (Disk(1 + 0j, 0.1), Disk(0.5j, 0.05), Disk(0.2 + 0j)), 1.5, Interval(0.0, 1e-3), Interval(0.0, 1e-4))
    f2 = FnStd(3, (Disk(-1 + 0.5j, 0.02), Disk(0.3 + 0j, 0.1)), 1.5, Interval(0.0, 2e-3))
    product = fn_mul(f1, f2)
    rng = random.Random(7)
    for _ in range(100):
        m1, m2 = sample_member(f1, rng), sample_member(f2, rng)
        for _ in range(50):
            z = 1.5 * rng.random() ** 0.5 * cmath.exp(2j * cmath.pi * rng.random())
            assert fn_eval_disk(product, Disk(z)).contains(m1(z) * m2(z))


def test_sum_containment():
    f1 = FnStd(2, (Disk(1 + 0j, 0.1),), 1.0, Interval(0.0, 1e-3))
    f2 = FnStd(2, (Disk(0j), Disk(2j, 0.5)), 1.0, Interval(0.0, 0.0), Interval(0.0, 1e-2))
    total = fn_add(f1, f2)
    rng = random.Random(3)
    for _ in range(200):
        m1, m2 = sample_member(f1, rng), sample_member(f2, rng)
        z = rng.random() * cmath.exp(2j * cmath.pi * rng.random())
        assert fn_eval_disk(total, Disk(z)).contains(m1(z) + m2(z))


def test_evaluation_outside_domain():
    with pytest.raises(DomainError):
        fn_eval_disk(identity(rho=2.0), Disk(1.9 + 0j, 0.2))


def test_derivative_padding_covers_general_error():
    # members z + eps z with |eps| <= 0.01 have derivative 1 + eps
    f = FnStd(2, (Disk(1 + 0j),), 2.0, Interval(0.0, 0.01))
    value = fn_deriv_eval_disk(f, Disk(0.5 + 0j))
    assert value.contains(Disk(1 + 0j, 0.01))


def test_derivative_needs_interior_point():
    f = FnStd(2, (Disk(1 + 0j),), 2.0, Interval(0.0, 0.01))
    with pytest.raises(DomainError):
        fn_deriv_eval_disk(f, Disk(1.5 + 0j, 0.5))


def test_orbit_of_a_contraction():
    f = FnStd.polynomial([0.5], 2, 2.0)
    assert orbit(f, Disk(1 + 0j), 3).contains(0.125)
    assert orbit(f, Disk(1 + 0j), 2).center == 0.25


def test_orbit_escape_names_the_step():
    f = FnStd.polynomial([2], 2, 3.0)
    with pytest.raises(DomainError, match="step 3"):
        orbit(f, Disk(1 + 0j), 3)
