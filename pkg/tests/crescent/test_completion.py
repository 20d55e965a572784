import pytest

from beltrami_cert.analytic.dynamics import GoldenQuadratic
from beltrami_cert.analytic.linearizers import KoenigsData, SiegelData, principal_multiplier_log
from beltrami_cert.crescent.completion import (
    KoenigsCompletion,
    SiegelCompletion,
    koenigs_dilatation_sup,
    large_r_dilatation,
    siegel_dilatation_sup,
    small_r_dilatation,
    smallest_feasible_rho,
)
from beltrami_cert.rigor.disk import ONE, ZERO, Disk
from beltrami_cert.rigor.interval import Interval
from beltrami_cert.utils import DomainError

GOLDEN = GoldenQuadratic()
OMEGA = GOLDEN.rotation_exponent(3)


def siegel(d: complex) -> SiegelCompletion:
    data = SiegelData((ONE,), Interval.point(0.5), 1.0)
    return SiegelCompletion(data, 0.1, Interval.point(2.0), Disk(d), ONE, GOLDEN.lam ** (-3), OMEGA, OMEGA)


def test_small_r_dilatation_vanishes_on_the_model():
    assert small_r_dilatation(OMEGA, OMEGA, ZERO, ZERO).contains(0)
    mu = small_r_dilatation(OMEGA * 1.1, OMEGA, ZERO, ZERO)
    assert mu.overlaps(Disk(0.1 / 2.1))


def test_large_r_dilatation_vanishes_on_the_model():
    nu = principal_multiplier_log(Disk(-2.5 + 1j))
    assert large_r_dilatation(nu, nu, ZERO, ZERO, Interval(0.0, 1.0), ZERO).contains(0)


@pytest.mark.parametrize("d, bound", [(1e-8, 1e-6), (1e-3, 0.1)], ids=["tiny", "small"])
def test_siegel_dilatation_is_small(d, bound):
    sup = siegel_dilatation_sup(siegel(d), t_pieces=8, w_pieces=4)
    assert sup.lo == 0.0
    assert sup.hi < bound


def test_siegel_dilatation_grows_with_d():
    assert siegel_dilatation_sup(siegel(1e-8), 8, 4).hi < siegel_dilatation_sup(siegel(1e-3), 8, 4).hi


def test_koenigs_dilatation_is_small():
    multiplier = Disk(-2.5 + 1j)
    data = KoenigsData(3, ONE, multiplier, 0.1, 0.05, Interval.point(0.5), Interval.point(1.0), ())
    nu = principal_multiplier_log(multiplier)
    kc = KoenigsCompletion(data, 0.025, 1e-8, Interval.point(10.0), Disk(1e-8), ONE, nu, nu)
    assert kc.multiplier is multiplier
    sup = koenigs_dilatation_sup(kc, pieces=32, w_pieces=4)
    assert sup.hi < 1e-5


def test_smallest_feasible_rho():
    rho = smallest_feasible_rho(1.0, 0.01)
    assert 0.01 < rho < 1.0
    assert rho - rho**2 / (1.0 - rho) ** 3 > 0.01
    with pytest.raises(DomainError):
        smallest_feasible_rho(1.0, 0.9)
