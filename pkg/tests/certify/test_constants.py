import pytest

from beltrami_cert.certify.constants import (
    conjugate_exponent,
    const_A,
    const_A_general,
    const_C,
    contraction,
)
from beltrami_cert.rigor.interval import Interval
from beltrami_cert.utils import DomainError

P = 2.1


def test_const_A_at_2_1():
    A = const_A(P)
    # the closed form evaluates to 7.116..., so the quoted bound A < 7.11 undershoots it
    assert 7.11 <= A.lo and A.hi <= 7.12
    assert A.hi - A.lo <= 0.02


@pytest.mark.parametrize("p", [2.1, 2.5, 3.0, 6.0])
def test_general_formula_matches_the_specialization(p):
    assert const_A(p).overlaps(const_A_general(p))


def test_general_formula_other_splits():
    for a, b in [(2, 1.0), (4, 0.9), (3, 1.2)]:
        assert const_A_general(P, a, b).lo > 0.0


@pytest.mark.parametrize("p", [2.0, 1.5, -3.0], ids=["pole", "below", "negative"])
def test_exponent_must_exceed_two(p):
    with pytest.raises(DomainError):
        const_A(p)
    with pytest.raises(DomainError):
        conjugate_exponent(p)


def test_conjugate_exponent():
    q = conjugate_exponent(P)
    assert abs(q.mid - P / (P - 1)) < 1e-12
    assert q.hi < 2.0


@pytest.mark.parametrize("a,b", [(1.5, 1.0), (3, 0.6)], ids=["a below 2", "b below 1/2 + 1/a"])
def test_general_formula_rejects_bad_splits(a, b):
    with pytest.raises(DomainError):
        const_A_general(P, a, b)


def test_contraction():
    assert contraction(P, Interval(0.0, 0.5)).hi < 0.6
    with pytest.raises(DomainError):
        contraction(P, Interval(0.0, 0.9))


def test_const_C_vanishes_with_K():
    C = const_C(P, Interval.point(0.0), 10.0, Interval.point(5.0), const_A(P))
    assert C.lo == 0.0 and C.hi == 0.0


def test_const_C_is_increasing_in_K():
    A = const_A(P)
    values = [const_C(P, Interval.point(K), 10.0, Interval(4.9, 5.1), A) for K in [0.1, 0.3, 0.5, 0.8]]
    assert all(a.hi < b.lo for a, b in zip(values, values[1:]))


def test_const_C_needs_a_positive_radius():
    with pytest.raises(DomainError):
        const_C(P, Interval.point(0.3), 10.0, Interval(-0.1, 1.0), const_A(P))
    with pytest.raises(DomainError):
        const_C(P, Interval.point(0.95), 10.0, Interval.point(5.0), const_A(P))
