"""
Standard sets of analytic functions on the disk D_rho.

A standard set stands for every f(z) = p(z) + z g(z) + z^{N+1} h(z) with
p(z) = sum_{k=1}^N c_k z^k, c_k in the coefficient disks, and sup norms of g
and h on D_rho inside `general_error` and `higher_order`.
"""

from dataclasses import dataclass, field

from beltrami_cert.rigor.disk import ZERO, Disk
from beltrami_cert.rigor.interval import Interval
from beltrami_cert.utils import DomainError

NO_ERROR = Interval(0.0, 0.0)


@dataclass(frozen=True)
class FnStd:
    degree: int
    coeffs: tuple[Disk, ...]
    rho: float
    general_error: Interval = NO_ERROR
    higher_order: Interval = NO_ERROR
    _effective: int = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        if self.rho <= 0.0:
            raise DomainError(f"Domain radius must be positive, got {self.rho}.")
        coeffs = tuple(Disk.of(c) for c in self.coeffs)
        if len(coeffs) > self.degree:
            raise DomainError(f"{len(coeffs)} coefficients exceed degree {self.degree}.")
        coeffs = coeffs + (ZERO,) * (self.degree - len(coeffs))
        object.__setattr__(self, "coeffs", coeffs)
        effective = self.degree
        while effective > 0 and coeffs[effective - 1] == ZERO:
            effective -= 1
        object.__setattr__(self, "_effective", effective)

    @classmethod
    def polynomial(cls, coeffs: list, degree: int, rho: float) -> "FnStd":
        """Members p(z) = sum c_k z^k, coefficients listed from c_1."""
        return cls(degree, tuple(Disk.of(c) for c in coeffs), rho)

    @classmethod
    def zero(cls, degree: int, rho: float) -> "FnStd":
        return cls(degree, (), rho)

    def has_errors(self) -> bool:
        return self.general_error.hi > 0.0 or self.higher_order.hi > 0.0

    def poly_norm(self) -> Interval:
        """Upper bound [0, sup_{D_rho} |p|] from sum |c_k| rho^k."""
        total = Interval(0.0, 0.0)
        power = Interval(1.0, 1.0)
        for c in self.coeffs[: self._effective]:
            power = power * self.rho
            total = total + power * c.mag
        return Interval(0.0, total.hi)

    def _padding(self, modulus: float) -> float:
        if not self.has_errors():
            return 0.0
        m = Interval(modulus, modulus)
        return (m * self.general_error.hi + m ** (self.degree + 1) * self.higher_order.hi).hi

    def _check_domain(self, z: Disk) -> float:
        modulus = z.mag
        if modulus > self.rho:
            raise DomainError(f"Disk {z} leaves the domain D_{self.rho}.")
        return modulus

    def eval_poly(self, z: Disk) -> Disk:
        acc = ZERO
        for c in reversed(self.coeffs[: self._effective]):
            acc = (acc + c) * z
        return acc

    def eval_deriv_poly(self, z: Disk) -> Disk:
        acc = ZERO
        for k in range(self._effective, 0, -1):
            acc = acc * z + self.coeffs[k - 1] * k
        return acc


def fn_mul(f1: FnStd, f2: FnStd) -> FnStd:
    """
    Product of two standard sets.

    The polynomial part keeps degrees up to N. The rest of p1 p2 is
    z^{N+1} r(z) and joins the higher-order error together with every product
    involving h; products involving g but not h form the new general error.
    """
    if f1.rho != f2.rho or f1.degree != f2.degree:
        raise DomainError("Standard sets must share the domain radius and degree.")
    n, rho = f1.degree, Interval.point(f1.rho)
    product = [ZERO] * (2 * n + 1)
    for i, a in enumerate(f1.coeffs[: f1._effective], start=1):
        for j, b in enumerate(f2.coeffs[: f2._effective], start=1):
            product[i + j] = product[i + j] + a * b
    coeffs = tuple(product[1 : n + 1])

    # sup |r| on D_rho with r(z) = sum_{k>N} c_k z^{k-N-1}
    high = Interval(0.0, 0.0)
    for k in range(n + 1, 2 * n + 1):
        if product[k] != ZERO:
            high = high + product[k].mag * rho ** (k - n - 1)

    p1, p2 = f1.poly_norm().hi, f2.poly_norm().hi
    g1, g2 = f1.general_error.hi, f2.general_error.hi
    h1, h2 = f1.higher_order.hi, f2.higher_order.hi
    general = p1 * Interval.point(g2) + Interval.point(g1) * p2 + rho * g1 * g2
    higher = (
        high
        + rho ** (n + 1) * h1 * h2
        + (rho * g1 + p1) * h2
        + Interval.point(h1) * (rho * g2 + p2)
    )
    return FnStd(
        n,
        coeffs,
        f1.rho,
        Interval(0.0, general.hi),
        Interval(0.0, higher.hi),
    )


def fn_add(f1: FnStd, f2: FnStd) -> FnStd:
    if f1.rho != f2.rho or f1.degree != f2.degree:
        raise DomainError("Standard sets must share the domain radius and degree.")
    coeffs = tuple(a + b for a, b in zip(f1.coeffs, f2.coeffs))
    general = Interval.point(f1.general_error.hi) + f2.general_error.hi
    higher = Interval.point(f1.higher_order.hi) + f2.higher_order.hi
    return FnStd(f1.degree, coeffs, f1.rho, Interval(0.0, general.hi), Interval(0.0, higher.hi))


def fn_eval_disk(f: FnStd, z: Disk) -> Disk:
    """Disk containing g(w) for every member g and every w in `z`."""
    z = Disk.of(z)
    modulus = f._check_domain(z)
    return f.eval_poly(z).inflate(f._padding(modulus))


def fn_deriv_eval_disk(f: FnStd, z: Disk) -> Disk:
    """
    Derivative enclosure. The error terms are bounded by the Cauchy estimate
    on the circle |w| = rho, which needs `z` strictly inside D_rho.
    """
    z = Disk.of(z)
    modulus = f._check_domain(z)
    value = f.eval_deriv_poly(z)
    if not f.has_errors():
        return value
    gap = Interval.point(f.rho) - modulus
    if gap.lo <= 0.0:
        raise DomainError(f"Derivative needs {z} strictly inside D_{f.rho}.")
    rho = Interval.point(f.rho)
    numerator = rho * f.general_error.hi + rho ** (f.degree + 1) * f.higher_order.hi
    return value.inflate((numerator / gap).hi)


def orbit(f: FnStd, z0: Disk, k: int) -> Disk:
    """Disk containing f^k(z) for every z in `z0`."""
    z = Disk.of(z0)
    for i in range(k):
        try:
            z = fn_eval_disk(f, z)
        except DomainError as e:
            raise DomainError(f"Orbit escapes at step {i + 1}: {e}") from e
    return z


def sup_modulus(f: FnStd, radius: float) -> float:
    """Upper bound on sup |f| over the closed disk of the given radius."""
    return fn_eval_disk(f, Disk(0j, radius)).mag
