"""
Constants of the global bound: A for the Holder estimate on a compact and C
for the part of the differential near infinity.
"""

from beltrami_cert.rigor import interval as ia
from beltrami_cert.rigor.interval import Interval
from beltrami_cert.transforms.operators import cp_constant
from beltrami_cert.utils import DomainError

A_SPLIT = 3
B_SPLIT = Interval.ratio(5, 6)


def conjugate_exponent(p: float) -> Interval:
    if p <= 2.0:
        raise DomainError(f"Exponent p must exceed 2, got {p}.")
    p_iv = Interval.of(p)
    return p_iv / (p_iv - 1)


def const_A_general(p: float, a: float = A_SPLIT, b: float | Interval = B_SPLIT) -> Interval:
    """
    The Holder constant for splitting the integration domain at |w - z| = |z|/a,
    |w| = |z|/a and |w - z/2| = b|z|; needs a >= 2 and b >= 1/2 + 1/a.
    """
    q = conjugate_exponent(p)
    a_iv, b_iv = Interval.of(a), Interval.of(b)
    if a_iv.lo < 2.0:
        raise DomainError(f"Split parameter a must be at least 2, got {a}.")
    if (b_iv - (Interval.ratio(1, 2) + 1 / a_iv)).hi < 0.0:
        raise DomainError(f"Split parameter b must be at least 1/2 + 1/a, got {b}.")
    near = ia.power(a_iv, q * 2 - 2) / ia.power(a_iv - 1, q) * 4 / (2 - q)
    middle = ia.power(a_iv, q * 2) * b_iv.sqr() - ia.power(a_iv, q * 2 - 2) * 2
    far = ia.power(b_iv.sqr() - Interval.ratio(1, 4), 1 - q) / (q - 1)
    bracket = near + middle + far
    return ia.power(bracket, 1 / q) / ia.power(ia.pi(), Interval.point(1) / Interval.of(p))


def const_A(p: float) -> Interval:
    """A for a = 3, b = 5/6."""
    q = conjugate_exponent(p)
    three = Interval.point(3)
    bracket = (
        ia.power(three, q * 2 - 2) * 4 / (ia.power(Interval.point(2), q) * (2 - q))
        + Interval.ratio(25, 36) * ia.power(three, q * 2)
        - ia.power(three, q * 2 - 2) * 2
        + ia.power(Interval.ratio(4, 9), 1 - q) / (q - 1)
    )
    return ia.power(bracket, 1 / q) / ia.power(ia.pi(), Interval.point(1) / Interval.of(p))


def contraction(p: float, K: Interval) -> Interval:
    """K C_p, checked below 1."""
    product = Interval.of(K) * cp_constant(p)
    if not product.hi < 1.0:
        raise DomainError(f"K C_p = {product} is not below 1 for p = {p}.")
    return product


def const_C(p: float, K: Interval, R: float, r: Interval, A: Interval) -> Interval:
    kc = contraction(p, K)
    r = Interval.of(r)
    if r.lo <= 0.0:
        raise DomainError(f"Inner radius must be positive, got {r}.")
    inv_p = Interval.point(1) / Interval.of(p)
    numerator = ia.power(ia.pi(), inv_p) * A * Interval.of(K) * ia.power(Interval.of(R), inv_p * 4) * (2 - kc)
    return numerator / (ia.power(r, inv_p * 2) * (1 - kc))
