"""
Remainders of the Riemann zeta function, zeta_M(s) = sum_{i > M} i^{-s}.
"""

from mpmath import iv

from beltrami_cert.rigor import interval as ia
from beltrami_cert.rigor.interval import Interval
from beltrami_cert.utils import DomainError

EXPLICIT_TERMS = 64


def zeta_remainder_sum(m: int, s: float | Interval, terms: int = EXPLICIT_TERMS) -> Interval:
    """
    Enclosure of sum_{i=m+1}^inf i^{-s} for real s > 1.

    The first `terms` summands are added explicitly; the rest, with
    N = m + terms and the convexity of x^{-s}, lies between
    int_{N+1}^inf x^{-s} dx + (N+1)^{-s}/2 and int_{N+1/2}^inf x^{-s} dx.
    """
    s = Interval.of(s)
    if m < 0:
        raise DomainError(f"Zeta remainder index must be nonnegative, got {m}.")
    if s.lo <= 1.0:
        raise DomainError(f"Zeta remainder needs s > 1, got {s}.")
    n_end = m + terms
    with ia.working_precision(ia.PREC):
        exponent = ia.to_iv(s)
        total = iv.mpf(0)
        for i in range(m + 1, n_end + 1):
            total = total + iv.mpf(i) ** (-exponent)
        s_minus_one = exponent - 1
        first = iv.mpf(n_end + 1)
        lower = first ** (-s_minus_one) / s_minus_one + first ** (-exponent) / 2
        upper = (iv.mpf(n_end) + iv.mpf(0.5)) ** (-s_minus_one) / s_minus_one
        tail = iv.mpf((lower.a, upper.b))
        return ia.from_iv(total + tail)


def zeta_remainder(m: int, n: int, terms: int = EXPLICIT_TERMS) -> Interval:
    """zeta_M(n) for an integer n >= 2."""
    if n < 2:
        raise DomainError(f"Zeta remainder order must be at least 2, got {n}.")
    return zeta_remainder_sum(m, Interval.point(n), terms)


def zeta(n: int) -> Interval:
    return zeta_remainder(0, n)
