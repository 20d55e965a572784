"""
Directed rounding on IEEE doubles.

Results of +, -, *, / and sqrt are rounded to nearest by the hardware; the
exact error of each operation is recovered with error-free transformations
(TwoSum, TwoProduct) and the result is moved one ulp outward only when it was
inexact. Exact results therefore stay exact.
"""

import math

INF = math.inf

# unit roundoff and a floor absorbing underflow in a-priori bounds
U = 2.0**-53
TINY = 2.0**-1000

_SPLITTER = 134217729.0  # 2**27 + 1
_SAFE = 2.0**995
_SMALL = 2.0**-969

_fma = getattr(math, "fma", None)


def _down(x: float) -> float:
    return math.nextafter(x, -INF)


def _up(x: float) -> float:
    return math.nextafter(x, INF)


def _two_sum_err(a: float, b: float, s: float) -> float:
    bb = s - a
    return (a - (s - bb)) + (b - bb)


def _split(a: float) -> tuple[float, float]:
    t = _SPLITTER * a
    hi = t - (t - a)
    return hi, a - hi


def _two_prod_err(a: float, b: float, p: float) -> float | None:
    """Exact error a*b - p, or None when it cannot be recovered safely."""
    if _fma is not None:
        if not math.isfinite(p):
            return None
        if p != 0.0 and abs(p) < _SMALL:
            return None
        return _fma(a, b, -p)
    if abs(a) > _SAFE or abs(b) > _SAFE or (p != 0.0 and abs(p) < _SMALL):
        return None
    ah, al = _split(a)
    bh, bl = _split(b)
    return ((ah * bh - p) + ah * bl + al * bh) + al * bl


def add_down(a: float, b: float) -> float:
    s = a + b
    if not math.isfinite(s):
        return s
    return _down(s) if _two_sum_err(a, b, s) < 0 else s


def add_up(a: float, b: float) -> float:
    s = a + b
    if not math.isfinite(s):
        return s
    return _up(s) if _two_sum_err(a, b, s) > 0 else s


def sub_down(a: float, b: float) -> float:
    return add_down(a, -b)


def sub_up(a: float, b: float) -> float:
    return add_up(a, -b)


def mul_down(a: float, b: float) -> float:
    if a == 0.0 or b == 0.0:
        return 0.0
    p = a * b
    e = _two_prod_err(a, b, p)
    if e is None:
        return _down(p)
    return _down(p) if e < 0 else p


def mul_up(a: float, b: float) -> float:
    if a == 0.0 or b == 0.0:
        return 0.0
    p = a * b
    e = _two_prod_err(a, b, p)
    if e is None:
        return _up(p)
    return _up(p) if e > 0 else p


def div_down(a: float, b: float) -> float:
    if a == 0.0:
        return 0.0
    q = a / b
    e = _two_prod_err(q, b, q * b)
    if e is None or not math.isfinite(q):
        return _down(q)
    # a - q*b has the sign of the error in q times the sign of b
    r = (a - q * b) - e
    if r == 0.0:
        return q
    return _down(q) if (r < 0) == (b > 0) else q


def div_up(a: float, b: float) -> float:
    if a == 0.0:
        return 0.0
    q = a / b
    e = _two_prod_err(q, b, q * b)
    if e is None or not math.isfinite(q):
        return _up(q)
    r = (a - q * b) - e
    if r == 0.0:
        return q
    return _up(q) if (r > 0) == (b > 0) else q


def sqrt_down(a: float) -> float:
    if a <= 0.0:
        return 0.0
    s = math.sqrt(a)
    e = _two_prod_err(s, s, s * s)
    if e is None:
        return _down(s)
    return _down(s) if (s * s - a) + e > 0 else s


def sqrt_up(a: float) -> float:
    if a <= 0.0:
        return 0.0
    s = math.sqrt(a)
    e = _two_prod_err(s, s, s * s)
    if e is None:
        return _up(s)
    return _up(s) if (s * s - a) + e < 0 else s


def sum_up(*terms: float) -> float:
    """Upper bound of a sum of floats."""
    total = 0.0
    for term in terms:
        total = add_up(total, term)
    return total


def hypot_up(a: float, b: float) -> float:
    return sqrt_up(add_up(mul_up(a, a), mul_up(b, b)))


def hypot_down(a: float, b: float) -> float:
    return sqrt_down(add_down(mul_down(a, a), mul_down(b, b)))


def two_sum(a: float, b: float) -> tuple[float, float]:
    """s = fl(a + b) and the exact error a + b - s."""
    s = a + b
    return s, _two_sum_err(a, b, s)


def err_bound_prod(a: float, b: float, p: float) -> float:
    """Upper bound on |a*b - p| for p = fl(a*b)."""
    e = _two_prod_err(a, b, p)
    if e is None:
        return add_up(mul_up(abs(p), 2 * U), TINY)
    return abs(e)
